#pragma once

#include <stdexcept>

namespace degpar {

/// An argument violated a documented precondition (bad order, point outside
/// the unit cube, zero nonlocal coefficient, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a special function or evaluator.
class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// An iterative procedure (bracketing, bisection, shooting) did not deliver
/// the requested result.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace degpar
