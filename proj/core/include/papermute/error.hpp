#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace papermute {

/// Base class for everything the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates a documented precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// One failed condition of a validation report. `index` is 1-based when the
/// condition refers to a vector entry.
struct Violation {
    std::string condition;
    std::optional<std::size_t> index;
    std::string detail;

    std::string to_string() const;
};

/// Thrown when a parameter set fails one or more named conditions.
class ValidationError : public InvalidArgument {
public:
    explicit ValidationError(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// An enumeration would exceed its configured search-space budget.
class BudgetExceeded : public InvalidArgument {
public:
    BudgetExceeded(std::string what, std::string search_space)
        : InvalidArgument(std::move(what)), search_space_(std::move(search_space)) {}

    const std::string& search_space() const noexcept { return search_space_; }

private:
    std::string search_space_;
};

/// A closed-form result broke one of its own invariants. Always a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace papermute
