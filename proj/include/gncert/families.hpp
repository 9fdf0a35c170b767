#pragma once

#include <functional>
#include <optional>

#include "gncert/majorant.hpp"

namespace gncert {

/// Hölder family f(t) = K t^{p+1}/(p+1) - t on [0, inf):
///   nu  = (1/K)^{1/p}
///   rho = [(p+1)/((2p+1)K)]^{1/p}       (sharp)
///   uniqueness radius [(p+1)/K]^{1/p}
///   recurrence t+ = K p t^{p+1} / ((p+1)(1 - K t^p))
/// p = 1 is the plain Lipschitz case.
MajorantFunction holder_majorant(double K, double p);

/// Analytic family f(t) = t/(1 - gamma t) - 2t on [0, 1/gamma):
///   rho = (5 - sqrt(17))/(4 gamma)      (sharp)
///   uniqueness radius 1/(2 gamma)
///   recurrence t+ = gamma t^2 / (2(1 - gamma t)^2 - 1)
/// The derivative is convex, so the rate condition holds with p = 1.
MajorantFunction smale_majorant(double gamma);

struct IntegrableLOptions {
    double quadrature_tol = 1e-10;
    /// Algebraic singularity exponent of L at 0 (L ~ c u^alpha, -1 < alpha <= 0).
    /// The startup integral over [0, 1e-14] is then added in closed form.
    std::optional<double> singularity_exponent;
    /// Rate exponent to attach; verified against the weight-monotonicity
    /// check below, InvalidParameter if it does not hold.
    std::optional<double> rate_p;
};

/// Generalized-Lipschitz family from a positive integrable weight L on [0, R):
///   f'(t) = I0(t) - 1,   f(t) = t I0(t) - I1(t) - t,
/// with I0(t) = ∫_0^t L(u) du and I1(t) = ∫_0^t u L(u) du evaluated from a
/// shared cumulative quadrature grid built at construction, so f and f' stay
/// consistent to quadrature tolerance. L need not be monotone.
/// Recurrence t+ = I1(t)/(1 - I0(t)). Radii are numeric.
MajorantFunction integrable_L_majorant(std::function<double(double)> L, double R,
                                       IntegrableLOptions opts = {});

/// Sampled check that t -> t^{1-p} L(t) is nondecreasing on (0, nu); when it
/// holds, the order-(p+1) rate conclusions transfer to the weight family.
SampledCheck check_weight_monotonicity(const std::function<double(double)>& L, double p,
                                       double nu);

} // namespace gncert
