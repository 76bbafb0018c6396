#include <papermute/error.hpp>

namespace papermute {

std::string Violation::to_string() const {
    std::string out = condition;
    if (index) out += " [i=" + std::to_string(*index) + "]";
    if (!detail.empty()) out += ": " + detail;
    return out;
}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
    std::string out = "validation failed";
    for (const auto& v : violations) out += "\n  - " + v.to_string();
    return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : InvalidArgument(summarize(violations)), violations_(std::move(violations)) {}

}  // namespace papermute
