#pragma once

#include <stdexcept>
#include <string>

namespace stablederiv {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument is outside its admissible range (nonpositive δ, a ∉ (0,1], ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A point (or a stencil point) lies outside an oracle's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The oracle lacks a capability the operation needs, e.g. an exact derivative.
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// The a priori information admits no stable estimator (bounds on m0 or m1 only).
class UnstableFamilyError : public Error {
public:
    using Error::Error;
};

/// δ = 0: the optimal step degenerates to zero.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class GridTooShortError : public Error {
public:
    using Error::Error;
};

/// A study or CLI configuration is inconsistent (unknown name, spec fails validation, ...).
class ConfigurationError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Wraps a failure thrown by a user supplied estimator during a challenge.
class EstimatorError : public Error {
public:
    using Error::Error;
};

} // namespace stablederiv
