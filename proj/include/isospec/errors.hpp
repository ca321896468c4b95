#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace isospec {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scalar function was evaluated outside its domain (e.g. log of a
/// non-positive eigenvalue), or an input violated a mathematical
/// precondition (e.g. Flaschka off-diagonal b <= 0).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Matrix singular to working precision where an invertible one is required.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// An iteration failed to converge within its cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Bad configuration / CLI input. Message names the offending field.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An iterative algorithm hit its iteration/time budget without deflating.
/// Carries the final off-diagonal block-norm profile for diagnosis.
class NonHaltingError : public Error {
public:
    NonHaltingError(const std::string& what, std::vector<double> offdiag_profile)
        : Error(what), profile(std::move(offdiag_profile)) {}

    std::vector<double> profile;
};

} // namespace isospec
