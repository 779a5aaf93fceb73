#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dmax {

/// Malformed input shape: non-monotone runs, bad grid sizes, unsorted sets.
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A value outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Unreadable or inconsistent serialized data (DMG1, JSON).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An interval chain that violates the nesting/distance condition at `level` (1-based).
class ChainError : public std::runtime_error {
public:
    ChainError(std::size_t level, const std::string& what)
        : std::runtime_error(what), level_(level) {}
    std::size_t level() const noexcept { return level_; }

private:
    std::size_t level_;
};

/// An exact identity that must hold by construction did not; indicates a bug.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dmax
