#pragma once

#include <stdexcept>
#include <string>

namespace heisenberg {

/// Input is outside the mathematical domain of an operation
/// (dimension mismatch, non-homogeneous operator, index out of range, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not deliver a trustworthy result
/// (ill-conditioned solve, truncation remainder too large, coarse grid).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace heisenberg
