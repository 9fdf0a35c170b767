#include "gncert/problems.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "gncert/families.hpp"

namespace gncert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cube_root(double x) { return std::cbrt(x); }
double four_thirds_power(double x) { return x * std::cbrt(x); }

/// Max of beta ‖J(x) - J(x* + tau (x - x*))‖ / ((1 - tau) ‖x - x*‖) over
/// seeded radial samples: an empirical radial Lipschitz constant. Not a
/// certificate; callers inflate it before attaching.
double sample_radial_lipschitz(const ProblemInstance::JacobianMap& J, const Vector& x_star,
                               double radius, double beta, int samples, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t n = x_star.dim();
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        Vector dir(n);
        double nn = 0.0;
        do {
            for (std::size_t i = 0; i < n; ++i) dir[i] = gauss(rng);
            nn = dir.norm();
        } while (nn == 0.0);
        const double d = radius * std::pow(unif(rng), 1.0 / double(n));
        if (d < radius * 1e-6) continue;
        const double tau = unif(rng);
        if (1.0 - tau < 1e-8) continue;
        Vector x(n), xt(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double step = d * dir[i] / nn;
            x[i] = x_star[i] + step;
            xt[i] = x_star[i] + tau * step;
        }
        const double lhs = beta * operator_norm(J(x) - J(xt));
        worst = std::max(worst, lhs / ((1.0 - tau) * d));
    }
    return worst;
}

} // namespace

ProblemInstance::ProblemInstance(std::string name, std::size_t domain_dim,
                                 std::size_t range_dim, Map F, JacobianMap J,
                                 Vector x_star, double domain_radius,
                                 std::optional<MajorantFunction> majorant,
                                 std::string majorant_provenance)
    : name_(std::move(name)), n_(domain_dim), m_(range_dim), F_(std::move(F)),
      J_(std::move(J)), x_star_(std::move(x_star)), domain_radius_(domain_radius),
      majorant_(std::move(majorant)),
      majorant_provenance_(std::move(majorant_provenance)) {
    if (m_ < n_)
        throw InvalidParameter("range dimension must be at least the domain dimension");
    if (x_star_.dim() != n_)
        throw DimensionMismatch("root dimension does not match the domain");
    if (!(domain_radius_ > 0.0))
        throw InvalidParameter("domain radius must be positive");
    const Vector r = F_(x_star_);
    if (r.dim() != m_)
        throw DimensionMismatch("residual dimension does not match the range");
    if (!r.all_finite() || r.norm() >= 1e-12)
        throw InvalidParameter("problem root is not a zero-residual point");
    const Matrix j = J_(x_star_);
    if (j.rows() != m_ || j.cols() != n_)
        throw DimensionMismatch("Jacobian shape does not match the problem");
    if (!j.all_finite())
        throw InvalidParameter("Jacobian at the root is not finite");
    beta_ = pseudoinverse_norm(j); // throws RankDeficient when not injective
}

const MajorantFunction& ProblemInstance::majorant() const {
    if (!majorant_) throw MissingMajorant("problem has no attached majorant");
    return *majorant_;
}

double ProblemInstance::kappa() const {
    if (!majorant_) return domain_radius_;
    return std::min(domain_radius_, majorant_->domain_bound());
}

ProblemInstance ProblemInstance::with_majorant(MajorantFunction m,
                                               std::string provenance) const {
    ProblemInstance copy = *this;
    copy.majorant_ = std::move(m);
    copy.majorant_provenance_ = std::move(provenance);
    return copy;
}

ProblemInstance paper_example(double a, double b) {
    if (a == 0.0 && b == 0.0)
        throw InvalidParameter("parameters (a, b) must not both vanish");
    auto F = [a, b](const Vector& x) {
        const double t = x[0];
        const double q = four_thirds_power(t);
        return Vector{a * q - 2.0 * t, b * q + t};
    };
    auto J = [a, b](const Vector& x) {
        const double c = (4.0 / 3.0) * cube_root(x[0]);
        Matrix m(2, 1);
        m(0, 0) = a * c - 2.0;
        m(1, 0) = b * c + 1.0;
        return m;
    };
    const double K = 4.0 * std::sqrt(5.0 * (a * a + b * b)) / 15.0;
    char name[64];
    std::snprintf(name, sizeof(name), "paper-example-%g-%g", a, b);
    ProblemInstance prob(name, 1, 2, F, J, Vector{0.0}, kInf,
                         holder_majorant(K, 1.0 / 3.0),
                         "closed-form condition constant K = 4 sqrt(5(a^2+b^2))/15, p = 1/3");
    // printed uniqueness radius (5 / sqrt(5(a^2+b^2)))^3, cross-checked
    // against the family's own [(p+1)/K]^{1/p}
    const double hint = std::pow(5.0 / std::sqrt(5.0 * (a * a + b * b)), 3.0);
    prob.set_uniqueness_radius_hint(hint);
    return prob;
}

ProblemInstance linear_problem(Matrix A, Vector x_star, double domain_radius) {
    pseudoinverse_norm(A); // rank gate up front
    auto F = [A, x_star](const Vector& x) { return A * (x - x_star); };
    auto J = [A](const Vector&) { return A; };
    MajorantFunction one_step(kInf, [](double t) { return -t; }, [](double) { return -1.0; });
    char name[64];
    std::snprintf(name, sizeof(name), "linear-%zux%zu", A.rows(), A.cols());
    const std::size_t n = A.cols();
    const std::size_t m = A.rows();
    return ProblemInstance(name, n, m, F, J, std::move(x_star), domain_radius,
                           std::move(one_step), "exact linear majorant f(t) = -t");
}

ProblemInstance lipschitz_toy(double c) {
    if (c == 0.0) throw InvalidParameter("curvature c must be nonzero");
    auto F = [c](const Vector& x) { return Vector{x[0] + 0.5 * c * x[0] * x[0]}; };
    auto J = [c](const Vector& x) {
        Matrix m(1, 1);
        m(0, 0) = 1.0 + c * x[0];
        return m;
    };
    // |J(x) - J(tau x)| = |c| (1 - tau) |x| exactly, so K = |c| with no slack
    const double K = std::abs(c);
    return ProblemInstance("lipschitz-toy-1d", 1, 1, F, J, Vector{0.0}, 1.0 / K,
                           holder_majorant(K, 1.0),
                           "exact radial condition constant K = |c|");
}

ProblemInstance surface_problem() {
    auto F = [](const Vector& v) {
        const double u = v[0] - 1.0;
        const double y = v[1];
        return Vector{u, u * u + y, y * std::exp(u)};
    };
    auto J = [](const Vector& v) {
        const double u = v[0] - 1.0;
        const double y = v[1];
        Matrix m(3, 2);
        m(0, 0) = 1.0;
        m(0, 1) = 0.0;
        m(1, 0) = 2.0 * u;
        m(1, 1) = 1.0;
        m(2, 0) = y * std::exp(u);
        m(2, 1) = std::exp(u);
        return m;
    };
    const Vector root{1.0, 0.0};
    const double radius = 0.5;
    Matrix j0 = J(root);
    const double beta = pseudoinverse_norm(j0);
    // Empirical radial condition constant over 10^4 seeded samples,
    // inflated by 25%. Labelled empirical: an estimate, not a certificate.
    const double sampled = sample_radial_lipschitz(J, root, radius, beta, 10000, 20240913u);
    const double K = 1.25 * sampled;
    return ProblemInstance("surface-2x3", 2, 3, F, J, root, radius,
                           holder_majorant(K, 1.0),
                           "empirical radial Lipschitz constant, 1e4 samples, +25% margin");
}

ProblemInstance sine_analytic() {
    auto F = [](const Vector& x) { return Vector{std::sin(x[0]), x[0]}; };
    auto J = [](const Vector& x) {
        Matrix m(2, 1);
        m(0, 0) = std::cos(x[0]);
        m(1, 0) = 1.0;
        return m;
    };
    // beta = 1/sqrt(2); the supremum defining the analytic bound is
    // attained at the third derivative term, sqrt(beta/6) ~ 0.3434.
    // 0.35 is a documented safe upper bound; any gamma above the supremum
    // yields a valid (more conservative) majorant.
    const double gamma = 0.35;
    return ProblemInstance("sine-analytic-1d", 1, 2, F, J, Vector{0.0}, kInf,
                           smale_majorant(gamma),
                           "user-supplied analytic bound gamma = 0.35 >= sqrt(beta/6)");
}

ProblemInstance scalar_odd_extension(const MajorantFunction& family, std::string name) {
    auto f = [family](double t) { return family.value(t); };
    auto df = [family](double t) { return family.slope(t); };
    auto F = [f](const Vector& x) {
        const double t = x[0];
        return Vector{t >= 0.0 ? f(t) : -f(-t)};
    };
    auto J = [df](const Vector& x) {
        Matrix m(1, 1);
        m(0, 0) = df(std::abs(x[0]));
        return m;
    };
    // J vanishes at |x| = nu, so the domain ball stops there
    return ProblemInstance(std::move(name), 1, 1, F, J, Vector{0.0}, family.nu(), family,
                           "family transferred unchanged to its own odd extension");
}

std::vector<ProblemInstance> corpus() {
    std::vector<ProblemInstance> v;
    v.push_back(paper_example(1.0, 0.0));
    v.push_back(paper_example(0.0, 1.0));
    v.push_back(paper_example(3.0, 4.0));
    v.push_back(linear_problem(Matrix::identity(2), Vector{0.0, 0.0}));
    v.push_back(linear_problem(Matrix{{2.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}, Vector{1.0, 1.0}));
    v.push_back(surface_problem());
    v.push_back(lipschitz_toy(1.0));
    v.push_back(sine_analytic());
    v.push_back(scalar_odd_extension(holder_majorant(1.0, 1.0), "holder-cycle-1d"));
    return v;
}

std::optional<ProblemInstance> problem_by_name(const std::string& name) {
    for (auto& p : corpus())
        if (p.name() == name) return p;
    return std::nullopt;
}

} // namespace gncert
