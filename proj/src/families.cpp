#include "gncert/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "gncert/quadrature.hpp"

namespace gncert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStartup = 1e-14; // quadrature starts here; below is closed form

/// Shared cumulative quadrature of I0 = ∫L and I1 = ∫uL over a log grid.
/// Built once; evaluation adds an adaptive increment from the nearest node
/// below, so repeated evaluations are pure and mutually consistent.
class WeightIntegrals {
public:
    WeightIntegrals(std::function<double(double)> L, double R, double tol, double alpha)
        : L_(std::move(L)), alpha_(alpha) {
        const double cap = R * (1.0 - 1e-12);
        const int n = 2048;
        inc_tol_ = tol / double(n + 1);
        nodes_.reserve(n + 1);
        c0_.reserve(n + 1);
        c1_.reserve(n + 1);
        nodes_.push_back(kStartup);
        c0_.push_back(startup_i0(kStartup));
        c1_.push_back(startup_i1(kStartup));
        const double ratio = std::pow(cap / kStartup, 1.0 / double(n));
        double t = kStartup;
        for (int i = 1; i <= n; ++i) {
            const double next = (i == n) ? cap : t * ratio;
            c0_.push_back(c0_.back() + integrate(t, next, false));
            c1_.push_back(c1_.back() + integrate(t, next, true));
            nodes_.push_back(next);
            t = next;
        }
    }

    double i0(double t) const {
        if (t <= 0.0) return 0.0;
        if (t <= kStartup) return startup_i0(t);
        const std::size_t j = node_below(t);
        return c0_[j] + integrate(nodes_[j], t, false);
    }

    double i1(double t) const {
        if (t <= 0.0) return 0.0;
        if (t <= kStartup) return startup_i1(t);
        const std::size_t j = node_below(t);
        return c1_[j] + integrate(nodes_[j], t, true);
    }

private:
    std::size_t node_below(double t) const {
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
        return std::size_t(std::distance(nodes_.begin(), it)) - 1;
    }

    double integrate(double a, double b, bool weighted) const {
        if (!(b > a)) return 0.0;
        if (weighted)
            return adaptive_simpson([this](double u) { return u * L_(u); }, a, b, inc_tol_);
        return adaptive_simpson(L_, a, b, inc_tol_);
    }

    // L ~ c u^alpha near 0 with c read off at the startup point.
    double startup_i0(double t) const {
        const double c = L_(kStartup) * std::pow(kStartup, -alpha_);
        return c * std::pow(t, alpha_ + 1.0) / (alpha_ + 1.0);
    }
    double startup_i1(double t) const {
        const double c = L_(kStartup) * std::pow(kStartup, -alpha_);
        return c * std::pow(t, alpha_ + 2.0) / (alpha_ + 2.0);
    }

    std::function<double(double)> L_;
    double alpha_;
    double inc_tol_;
    std::vector<double> nodes_;
    std::vector<double> c0_;
    std::vector<double> c1_;
};

} // namespace

MajorantFunction holder_majorant(double K, double p) {
    if (!(K > 0.0)) throw InvalidParameter("condition constant K must be positive");
    if (!(p > 0.0) || p > 1.0) throw InvalidParameter("exponent p must lie in (0, 1]");
    ClosedFormRadii radii;
    radii.nu = std::pow(1.0 / K, 1.0 / p);
    radii.rho = std::pow((p + 1.0) / ((2.0 * p + 1.0) * K), 1.0 / p);
    radii.sigma_unbounded = std::pow((p + 1.0) / K, 1.0 / p);
    radii.sharp = true;
    auto f = [K, p](double t) { return K * std::pow(t, p + 1.0) / (p + 1.0) - t; };
    auto df = [K, p](double t) { return K * std::pow(t, p) - 1.0; };
    auto step = [K, p](double t) {
        return K * p * std::pow(t, p + 1.0) / ((p + 1.0) * (1.0 - K * std::pow(t, p)));
    };
    return MajorantFunction::closed_form(kInf, f, df, radii, step, p);
}

MajorantFunction smale_majorant(double gamma) {
    if (!(gamma > 0.0)) throw InvalidParameter("analytic bound gamma must be positive");
    ClosedFormRadii radii;
    radii.nu = (1.0 - std::sqrt(0.5)) / gamma;
    radii.rho = (5.0 - std::sqrt(17.0)) / (4.0 * gamma);
    radii.sigma_unbounded = 0.5 / gamma;
    radii.sharp = true;
    auto f = [gamma](double t) { return t / (1.0 - gamma * t) - 2.0 * t; };
    auto df = [gamma](double t) {
        const double w = 1.0 - gamma * t;
        return 1.0 / (w * w) - 2.0;
    };
    auto step = [gamma](double t) {
        const double w = 1.0 - gamma * t;
        return gamma * t * t / (2.0 * w * w - 1.0);
    };
    return MajorantFunction::closed_form(1.0 / gamma, f, df, radii, step, 1.0);
}

MajorantFunction integrable_L_majorant(std::function<double(double)> L, double R,
                                       IntegrableLOptions opts) {
    if (!(R > 0.0) || std::isinf(R))
        throw InvalidParameter("weight family needs a finite positive domain bound");
    if (!(opts.quadrature_tol > 0.0))
        throw InvalidParameter("quadrature tolerance must be positive");
    double alpha = opts.singularity_exponent.value_or(0.0);
    if (alpha <= -1.0 || alpha > 0.0)
        throw InvalidParameter("singularity exponent must lie in (-1, 0]");

    // positivity scan; integrability of L is the caller's claim, positivity
    // we can at least sample
    for (int i = 1; i <= 512; ++i) {
        const double u = R * (1.0 - 1e-12) * double(i) / 512.0;
        if (!(L(u) > 0.0)) throw NonPositiveL("weight function must be positive on (0, R)");
    }

    auto integrals = std::make_shared<WeightIntegrals>(L, R, opts.quadrature_tol, alpha);
    auto f = [integrals](double t) {
        return t * integrals->i0(t) - integrals->i1(t) - t;
    };
    auto df = [integrals](double t) { return integrals->i0(t) - 1.0; };
    auto step = [integrals](double t) {
        return integrals->i1(t) / (1.0 - integrals->i0(t));
    };

    if (opts.rate_p) {
        // nu is not known yet; check on the conservative window where f' < 0
        MajorantFunction probe(R, f, df);
        SampledCheck ok = check_weight_monotonicity(L, *opts.rate_p,
                                                    std::min(probe.nu(), R * (1.0 - 1e-12)));
        if (!ok.passed)
            throw InvalidParameter("claimed rate exponent fails the weight monotonicity check");
    }
    return MajorantFunction::numeric_with_step(R, f, df, step, opts.rate_p);
}

SampledCheck check_weight_monotonicity(const std::function<double(double)>& L, double p,
                                       double nu) {
    if (p < 0.0 || p > 1.0)
        throw OutOfDomain("rate exponent must lie in [0, 1]");
    SampledCheck check;
    const int n = 4096;
    const double lo = nu * 1e-6;
    const double ratio = std::pow((nu * (1.0 - 1e-9)) / lo, 1.0 / double(n - 1));
    double t = lo;
    double prev = std::pow(t, 1.0 - p) * L(t);
    double min_margin = std::numeric_limits<double>::infinity();
    bool pass = true;
    for (int i = 1; i < n; ++i) {
        t *= ratio;
        const double cur = std::pow(t, 1.0 - p) * L(t);
        const double margin = cur - prev;
        min_margin = std::min(min_margin, margin);
        if (margin < -(1e-12 + 1e-9 * std::abs(prev))) pass = false;
        prev = cur;
    }
    check.passed = pass;
    check.min_margin = min_margin;
    check.samples = n;
    return check;
}

} // namespace gncert
