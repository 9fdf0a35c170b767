#pragma once

#include <stdexcept>
#include <string>

namespace gncert {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands have incompatible shapes.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A matrix required to have full column rank does not (smallest singular
/// value at or below the rank tolerance).
class RankDeficient : public Error {
public:
    using Error::Error;
};

/// A scalar argument lies outside the domain an operation is defined on.
class OutOfDomain : public Error {
public:
    using Error::Error;
};

/// A constructor or factory was given parameters outside its admissible range.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// A majorant function failed its construction-time normalization or
/// monotone-derivative checks.
class HypothesisViolated : public Error {
public:
    using Error::Error;
};

/// The derivative of a candidate majorant is nonnegative from the start,
/// so no Newton step is defined anywhere.
class NoNegativeDerivative : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature hit its subdivision cap before reaching tolerance.
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// The weight function of a generalized-Lipschitz majorant is not positive.
class NonPositiveL : public Error {
public:
    using Error::Error;
};

/// A scalar majorant sequence failed to decrease strictly; signals an
/// implementation or hypothesis bug, never expected in a valid run.
class MonotonicityViolated : public Error {
public:
    using Error::Error;
};

/// The sharpness identity required by the optimal-radius cycle does not hold.
class SharpnessNotMet : public Error {
public:
    using Error::Error;
};

/// A starting point lies outside the ball the convergence certificate covers.
class OutsideCertifiedBall : public Error {
public:
    using Error::Error;
};

/// The operation needs a problem with an attached majorant and none is present.
class MissingMajorant : public Error {
public:
    using Error::Error;
};

} // namespace gncert
