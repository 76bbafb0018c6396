#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace papermute {

/// Multiset of cycle lengths, kept as length -> number of cycles of that
/// length, ascending by length.
class CycleType {
public:
    CycleType() = default;

    /// Adds `count` cycles of length `length`; a zero count is a no-op.
    void add(std::int64_t length, std::int64_t count = 1);

    const std::map<std::int64_t, std::int64_t>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

    /// Sum of length * count, i.e. the size of the permuted set.
    std::int64_t points() const noexcept;
    std::int64_t cycles() const noexcept;

    /// "Cyc(1) + 2 x Cyc(6)" style rendering.
    std::string to_string() const;

    friend bool operator==(const CycleType&, const CycleType&) = default;

private:
    std::map<std::int64_t, std::int64_t> entries_;
};

}  // namespace papermute
