#pragma once

#include <stdexcept>
#include <string>

namespace jnsharp {

/// An argument lies outside the mathematical domain of an operation
/// (log of a non-positive number, an interval not contained in a domain).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed textual or JSON input.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the range a formula is stated for.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// A sign or comparison stayed undetermined up to the precision cap.
class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace jnsharp
