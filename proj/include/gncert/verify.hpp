#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gncert/gauss_newton.hpp"
#include "gncert/majorant.hpp"
#include "gncert/problems.hpp"

namespace gncert {

/// Additive slack used by every inequality assertion in this module: the
/// underlying inequalities are exact in the reals, so violations are only
/// tolerated up to floating-point noise at the working scale.
inline double assertion_slack(double scale) { return 1e-10 * (1.0 + scale); }

/// One lockstep comparison of the error sequence against the scalar
/// majorant sequence at iteration k.
struct BoundRecord {
    int k = 0;
    double error = 0.0;  ///< ‖x_k - x*‖
    double t = 0.0;      ///< t_k
    double slack = 0.0;  ///< t_k - error
    bool pass = false;   ///< slack >= -1e-10 (1 + t_k)
};

/// Measured convergence ratios at iteration k, with the order-(p+1) bound
/// when a rate exponent is attached.
struct RateRecord {
    int k = 0;
    double ratio = 0.0;                  ///< e_{k+1} / e_k
    std::optional<double> p_ratio;       ///< e_{k+1} / e_k^{p+1}
    std::optional<double> rate_rhs;      ///< (t_{k+1}/t_k^{p+1}) e_k^{p+1}
    bool rate_pass = true;
};

/// Sampled evidence for the radial derivative-variation condition.
struct ConditionProbe {
    double pass_fraction = 0.0;
    double worst_margin = 0.0;
    int samples = 0;
};

/// Iterates of the Gauss-Newton run on the odd scalar extension, started at
/// the negative contraction radius.
struct CycleResult {
    double rho = 0.0;
    std::vector<double> iterates; ///< x_0 .. x_4
    bool cycle_confirmed = false; ///< |x_1 - rho| and |x_2 + rho| below 1e-9
};

/// Scalar certificate plus empirical scan for uniqueness of the root.
struct UniquenessProbe {
    double sigma = 0.0;
    double sample_radius = 0.0;       ///< finite radius the empirical scan used
    bool grid_pass = false;           ///< f < 0 on a 1024-point grid in (0, sigma)
    double grid_max = 0.0;            ///< largest f value seen on the grid
    int empirical_samples = 0;
    double min_residual_norm = 0.0;
    bool empirical_pass = false;      ///< ‖F‖ > 1e-10 at every sampled point
    std::optional<double> printed_radius;
    bool printed_radius_consistent = true;
};

/// Both sides of the linearization-error comparison at a point x:
/// the nonlinear remainder against the scalar remainder of the majorant.
struct LinearizationErrors {
    double map_error_norm = 0.0;   ///< ‖F(x*) - F(x) - J(x)(x* - x)‖
    double scalar_error = 0.0;     ///< -f(t) + t f'(t) at t = ‖x - x*‖
    bool bound_holds = false;      ///< beta · map error <= scalar error (+slack)
};

/// Both sides of the pseudoinverse bound inside the ball.
struct PinvBallCheck {
    double lhs = 0.0; ///< ‖J(x)†‖
    double rhs = 0.0; ///< beta / |f'(‖x - x*‖)|
    bool pass = false;
};

struct VerificationReport {
    std::string problem_name;
    RadiusReport radius_report;
    double t0 = 0.0;
    SolveStatus solve_status = SolveStatus::MaxIters;
    std::vector<BoundRecord> bound_checks;
    std::vector<RateRecord> rate_records;
    std::optional<ConditionProbe> condition_probe;
    std::optional<CycleResult> cycle_result;
    std::optional<UniquenessProbe> uniqueness;
    int lemma_checks = 0;     ///< linearization + pseudoinverse-ball sweeps
    int lemma_failures = 0;
    bool overall = false;
};

/// Run Gauss-Newton and the scalar majorant sequence in lockstep from
/// t0 = ‖x0 - x*‖ and check ‖x_k - x*‖ <= t_k at every iteration, together
/// with the order-(p+1) rate bound when the majorant carries a rate
/// exponent. Throws OutsideCertifiedBall when t0 >= r and MissingMajorant
/// when the problem carries none.
VerificationReport verify_majorant_bound(const ProblemInstance& problem, const Vector& x0,
                                         const SolveConfig& cfg = {});

/// Margin of the radial condition at one (x, tau):
/// f'(‖x-x*‖) - f'(tau ‖x-x*‖) - beta ‖J(x) - J(x* + tau(x-x*))‖.
double condition_margin(const ProblemInstance& problem, const MajorantFunction& m,
                        const Vector& x, double tau);

/// Seeded sampling of the radial condition over B(x*, kappa) x [0, 1];
/// kappa is truncated to min(domain, majorant bound, 10 rho) so unbounded
/// domains stay samplable.
ConditionProbe probe_majorant_condition(const ProblemInstance& problem,
                                        const MajorantFunction& m, int samples,
                                        std::uint64_t seed = 42);

/// Demonstrate sharpness of the contraction radius: Gauss-Newton on the odd
/// scalar extension from -rho alternates between -rho and rho instead of
/// converging. Throws SharpnessNotMet unless f(rho)/(rho f'(rho)) - 1 = 1.
CycleResult cycle_demo(const MajorantFunction& m);

/// Scalar uniqueness certificate (f < 0 on (0, sigma)) plus an empirical
/// scan for second zeros inside the uniqueness ball.
UniquenessProbe uniqueness_probe(const ProblemInstance& problem, const MajorantFunction& m,
                                 int samples, std::uint64_t seed = 42);

LinearizationErrors linearization_errors(const ProblemInstance& problem,
                                         const MajorantFunction& m, const Vector& x);

PinvBallCheck pseudoinverse_ball_bound(const ProblemInstance& problem,
                                       const MajorantFunction& m, const Vector& x);

/// Everything at once, as the CLI reports it: lockstep bounds, condition
/// probe, uniqueness, cycle (when sharp), and per-point lemma sweeps.
VerificationReport run_full_verification(const ProblemInstance& problem, const Vector& x0,
                                         int probe_samples = 1000, std::uint64_t seed = 42,
                                         const SolveConfig& cfg = {});

/// Deterministic point on the sphere of the given radius around the root,
/// used to resolve fraction-of-radius starting points.
Vector sphere_point(const ProblemInstance& problem, double radius, std::uint64_t seed);

} // namespace gncert
