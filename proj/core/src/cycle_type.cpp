#include <papermute/cycle_type.hpp>
#include <papermute/error.hpp>

namespace papermute {

void CycleType::add(std::int64_t length, std::int64_t count) {
    if (length < 1 || count < 0)
        throw InvalidArgument("CycleType::add: bad entry (" + std::to_string(length) + ", " + std::to_string(count) + ")");
    if (count == 0) return;
    entries_[length] += count;
}

std::int64_t CycleType::points() const noexcept {
    std::int64_t total = 0;
    for (const auto& [length, count] : entries_) total += length * count;
    return total;
}

std::int64_t CycleType::cycles() const noexcept {
    std::int64_t total = 0;
    for (const auto& [length, count] : entries_) total += count;
    return total;
}

std::string CycleType::to_string() const {
    if (entries_.empty()) return "(empty)";
    std::string out;
    for (const auto& [length, count] : entries_) {
        if (!out.empty()) out += " + ";
        if (count != 1) out += std::to_string(count) + " x ";
        out += "Cyc(" + std::to_string(length) + ")";
    }
    return out;
}

}  // namespace papermute
