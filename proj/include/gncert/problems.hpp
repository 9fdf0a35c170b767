#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gncert/linalg.hpp"
#include "gncert/majorant.hpp"

namespace gncert {

/// A zero-residual injective-overdetermined test problem: the map, its
/// Jacobian, a known root, the domain ball and (optionally) a reference
/// majorant whose constants certify local convergence around the root.
///
/// Construction validates the root (residual below 1e-12) and full column
/// rank of the Jacobian there; beta = ‖J(x*)†‖ is cached. F and the
/// Jacobian must be pure, so instances are safe to evaluate concurrently.
class ProblemInstance {
public:
    using Map = std::function<Vector(const Vector&)>;
    using JacobianMap = std::function<Matrix(const Vector&)>;

    ProblemInstance(std::string name, std::size_t domain_dim, std::size_t range_dim,
                    Map F, JacobianMap J, Vector x_star, double domain_radius,
                    std::optional<MajorantFunction> majorant = std::nullopt,
                    std::string majorant_provenance = {});

    const std::string& name() const { return name_; }
    std::size_t domain_dim() const { return n_; }
    std::size_t range_dim() const { return m_; }
    Vector residual(const Vector& x) const { return F_(x); }
    Matrix jacobian(const Vector& x) const { return J_(x); }
    const Vector& root() const { return x_star_; }
    double domain_radius() const { return domain_radius_; }
    double beta() const { return beta_; }

    bool has_majorant() const { return majorant_.has_value(); }
    const MajorantFunction& majorant() const;
    const std::string& majorant_provenance() const { return majorant_provenance_; }

    /// Effective domain radius for the majorant machinery: the domain ball
    /// capped at the majorant's own bound.
    double kappa() const;

    /// Printed uniqueness radius to cross-check against the derived sigma,
    /// when a source supplies one.
    std::optional<double> uniqueness_radius_hint() const { return uniqueness_hint_; }
    void set_uniqueness_radius_hint(double r) { uniqueness_hint_ = r; }

    /// Copy of this problem with a different majorant attached (used to
    /// exercise the harness against deliberately wrong constants).
    ProblemInstance with_majorant(MajorantFunction m, std::string provenance) const;

private:
    std::string name_;
    std::size_t n_;
    std::size_t m_;
    Map F_;
    JacobianMap J_;
    Vector x_star_;
    double domain_radius_;
    std::optional<MajorantFunction> majorant_;
    std::string majorant_provenance_;
    std::optional<double> uniqueness_hint_;
    double beta_ = 0.0;
};

/// The 1 -> 2 model problem H(x) = (a x^{4/3} - 2x, b x^{4/3} + x) with root
/// 0, using the odd real cube root for negative x. Carries the Hölder
/// majorant with p = 1/3, K = 4 sqrt(5(a^2+b^2))/15 and beta = sqrt(5)/5.
ProblemInstance paper_example(double a, double b);

/// F(x) = A (x - x_star) for a full-column-rank A; one Gauss-Newton step
/// reaches the root from anywhere. Carries the one-step majorant f(t) = -t.
ProblemInstance linear_problem(Matrix A, Vector x_star, double domain_radius = 10.0);

/// Scalar F(x) = x + c x^2 / 2 on (-1/|c|, 1/|c|): the radial condition
/// constant K = |c| is exact, which makes the quadratic-rate constants
/// checkable without estimation slack.
ProblemInstance lipschitz_toy(double c);

/// Smooth 2 -> 3 zero-residual problem around (1, 0) with an empirically
/// estimated (and inflated) Lipschitz condition constant.
ProblemInstance surface_problem();

/// 1 -> 2 analytic problem F(x) = (sin x, x) with a user-supplied analytic
/// bound gamma for the Smale majorant.
ProblemInstance sine_analytic();

/// Scalar problem built from the odd extension of a sharp family's f:
/// h(x) = f(x) for x >= 0, -f(-x) for x < 0. Started at -rho it cycles
/// between -rho and rho forever; strictly inside it converges.
ProblemInstance scalar_odd_extension(const MajorantFunction& family, std::string name);

/// The built-in corpus.
std::vector<ProblemInstance> corpus();

/// Lookup by name within a corpus; nullopt when absent.
std::optional<ProblemInstance> problem_by_name(const std::string& name);

} // namespace gncert
