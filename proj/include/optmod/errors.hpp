#pragma once

#include <stdexcept>
#include <string>

namespace optmod {

/// Input outside the mathematical domain of an operation (composite level,
/// non-discriminant, failed hypothesis).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A configured desk-scale bound was exceeded.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller-supplied data violates a precondition that can only be checked
/// after the fact (e.g. an inexact division in a series combination).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An internal invariant failed. Always a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace optmod
