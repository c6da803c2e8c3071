#ifndef BESSELID_ERRORS_HPP
#define BESSELID_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace besselid {

// Argument outside the admissible range of an operation. The message names
// the violated precondition.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Gamma at a non-positive integer.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// A series or iteration ran out of its term/iteration budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An integrand returned NaN or infinity.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Root finder called with an interval that does not bracket the target.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A special-case table was asked for a case it does not cover.
class UncoveredCaseError : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace besselid

#endif // BESSELID_ERRORS_HPP
