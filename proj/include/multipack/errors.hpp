#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace multipack {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A parameter (radius, index, k, epsilon, ...) outside its admissible range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Thrown when some point has two other points at exactly the same distance.
class GeneralPositionError : public Error {
public:
    GeneralPositionError(std::size_t v, std::size_t a, std::size_t b)
        : Error("general position violated: point " + std::to_string(v) +
                " is equidistant from points " + std::to_string(a) + " and " +
                std::to_string(b)),
          v_(v), a_(a), b_(b) {}

    std::size_t source() const noexcept { return v_; }
    std::size_t first() const noexcept { return a_; }
    std::size_t second() const noexcept { return b_; }

private:
    std::size_t v_, a_, b_;
};

/// An exponential search ran past its node or size budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// An internal structural invariant failed (e.g. the NNG is not a forest).
class InvariantViolation : public Error {
public:
    using Error::Error;
};

} // namespace multipack
