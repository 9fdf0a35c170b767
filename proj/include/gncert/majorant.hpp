#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gncert/errors.hpp"

namespace gncert {

enum class MajorantKind { ClosedForm, Numeric };
enum class RadiusMethod { ClosedForm, Bisection };

/// Analytic data a closed-form family carries so radii never have to be
/// re-derived numerically: the zero of f', the contraction radius, the
/// uniqueness radius before intersection with the domain ball, and whether
/// the sharpness identity f(rho)/(rho f'(rho)) - 1 = 1 holds exactly.
struct ClosedFormRadii {
    double nu = 0.0;
    double rho = 0.0;
    double sigma_unbounded = 0.0;
    bool sharp = false;
};

/// Scalar majorant function f on [0, R) with f(0) = 0, f'(0) = -1 and a
/// strictly increasing derivative. The scalar Newton iteration on f
/// dominates the Gauss-Newton error sequence of any nonlinear map whose
/// derivative variation it majorizes.
///
/// Values are immutable after construction; every cached quantity (nu, rho)
/// is computed eagerly, so instances are safe to share across threads.
class MajorantFunction {
public:
    using Scalar = std::function<double(double)>;

    /// Numeric construction. Validates the normalization f(0) = 0,
    /// f'(0) = -1 and a sampled monotone-derivative check, then locates
    /// nu and rho by scan + bisection.
    MajorantFunction(double domain_bound, Scalar f, Scalar derivative);

    /// Closed-form family construction: analytic radii replace the sampled
    /// derivative check and the bisections. `family_step` is the family's
    /// own one-step recurrence, kept as an independent route for
    /// cross-checking the generic Newton-step path.
    static MajorantFunction closed_form(double domain_bound, Scalar f, Scalar derivative,
                                        ClosedFormRadii radii, Scalar family_step,
                                        std::optional<double> rate_exponent);

    /// Numeric construction that still carries a family recurrence
    /// (quadrature-backed families use this).
    static MajorantFunction numeric_with_step(double domain_bound, Scalar f,
                                              Scalar derivative, Scalar family_step,
                                              std::optional<double> rate_exponent);

    double value(double t) const { return f_(t); }
    double slope(double t) const { return df_(t); }
    double domain_bound() const { return domain_bound_; }
    MajorantKind kind() const { return kind_; }

    /// Largest t with f'(t) < 0; +inf when the derivative stays negative.
    double nu() const { return nu_; }
    /// Largest radius on which the scalar Newton step contracts.
    double rho() const { return rho_; }

    bool has_closed_form() const { return closed_.has_value(); }
    const ClosedFormRadii& closed_form_radii() const;

    bool has_family_step() const { return static_cast<bool>(family_step_); }
    double family_step(double t) const;

    /// Exponent p for which the order-(p+1) rate condition is known to hold.
    std::optional<double> rate_exponent() const { return rate_exponent_; }

private:
    MajorantFunction() = default;
    void check_normalization() const;
    void check_monotone_slope() const;
    void locate_radii();

    double domain_bound_ = 0.0;
    Scalar f_;
    Scalar df_;
    MajorantKind kind_ = MajorantKind::Numeric;
    std::optional<ClosedFormRadii> closed_;
    Scalar family_step_;
    std::optional<double> rate_exponent_;
    double nu_ = 0.0;
    double rho_ = 0.0;
};

/// Radii derived from a majorant and a domain ball radius kappa.
struct RadiusReport {
    double kappa = 0.0;  ///< effective domain radius, capped at the majorant bound
    double nu = 0.0;
    double rho = 0.0;
    double sigma = 0.0;  ///< uniqueness radius, min(kappa, first zero of f)
    double r = 0.0;      ///< certified convergence radius min(kappa, rho)
    RadiusMethod nu_method = RadiusMethod::Bisection;
    RadiusMethod rho_method = RadiusMethod::Bisection;
    RadiusMethod sigma_method = RadiusMethod::Bisection;
    bool is_optimal = false; ///< sharpness holds and rho < kappa
};

/// Scalar majorant sequence t_{k+1} = |n_f(t_k)| with its convergence ratios.
struct MajorantSequence {
    std::vector<double> t;
    std::vector<double> ratios;                 ///< t_{k+1} / t_k
    std::optional<double> p;                    ///< exponent used for p_ratios
    std::vector<double> p_ratios;               ///< t_{k+1} / t_k^{p+1}
};

/// Result of a sampled (grid) check; evidence, not a proof.
struct SampledCheck {
    bool passed = false;
    double min_margin = 0.0;
    int samples = 0;
    std::string label = "sampled";
};

/// Scalar Newton step n_f(t) = t - f(t)/f'(t); nonpositive on [0, nu).
double newton_map(const MajorantFunction& m, double t);

/// One majorant-sequence step |n_f(t)|; strictly below t on (0, rho).
double majorant_step(const MajorantFunction& m, double t);

/// Radii from the majorant and a domain radius; closed forms when the
/// family carries them, scan + bisection otherwise.
RadiusReport compute_radii(const MajorantFunction& m, double kappa);

/// Same derivation with the numeric route forced, used to cross-check the
/// closed forms.
RadiusReport compute_radii_numeric(const MajorantFunction& m, double kappa);

/// Iterate the majorant sequence from t0 until it falls below 1e-15 or
/// max_steps is reached; strict decrease is enforced at every step.
MajorantSequence run_majorant_sequence(const MajorantFunction& m, double t0,
                                       int max_steps,
                                       std::optional<double> p = std::nullopt);

/// Sampled check that t -> |n_f(t)| / t^{p+1} increases on (0, nu); passing
/// enables the order-(p+1) rate bounds on the sequences this f dominates.
SampledCheck check_rate_condition(const MajorantFunction& m, double p);

} // namespace gncert
