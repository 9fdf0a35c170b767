#pragma once

#include <cstddef>
#include <functional>

#include "gncert/errors.hpp"

namespace gncert {

/// Adaptive Simpson integration of f over [a, b] to an absolute tolerance.
/// Subdivision stops when the Richardson estimate of the local error is
/// below the local budget; throws QuadratureFailure once the global
/// subdivision cap (2^20 intervals) is exhausted.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol);

} // namespace gncert
