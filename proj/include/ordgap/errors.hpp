#pragma once

#include <stdexcept>
#include <string>

namespace ordgap {

// Base class for every failure raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed distribution mini-language text or tabular input.
class ParseError : public Error {
public:
    using Error::Error;
};

// Syntactically valid input with out-of-range parameters or arguments.
class DomainError : public Error {
public:
    using Error::Error;
};

// Adaptive quadrature could not reach the requested tolerance.
class QuadratureError : public Error {
public:
    using Error::Error;
};

// The measure d(-mu) is not positive for this input, so the Stieltjes
// representation does not apply.
class NotIhrError : public Error {
public:
    using Error::Error;
};

// A distribution callback returned a non-finite or otherwise unusable value.
class EvalError : public Error {
public:
    using Error::Error;
};

}  // namespace ordgap
