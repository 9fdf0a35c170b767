#include "gncert/majorant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gncert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kGridPoints = 4096;
constexpr double kScanFloor = 1e-12;  // geometric scans start here
constexpr double kScanCeil = 1e30;    // unbounded domains are scanned up to here
constexpr double kEdgeGuard = 1e-14;  // keep evaluations away from t = nu

/// Bisect a sign change of g on [lo, hi] (g(lo) < 0 <= g(hi)) down to
/// double resolution; cheaper than any tolerance bookkeeping and exceeds
/// the 1e-12 absolute target everywhere.
double bisect_sign_change(const std::function<double(double)>& g, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (g(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double effective_cap(double bound) {
    if (std::isinf(bound)) return kScanCeil;
    return bound * (1.0 - 1e-15);
}

} // namespace

MajorantFunction::MajorantFunction(double domain_bound, Scalar f, Scalar derivative)
    : domain_bound_(domain_bound), f_(std::move(f)), df_(std::move(derivative)),
      kind_(MajorantKind::Numeric) {
    if (!(domain_bound_ > 0.0))
        throw InvalidParameter("majorant domain bound must be positive");
    check_normalization();
    check_monotone_slope();
    locate_radii();
}

MajorantFunction MajorantFunction::closed_form(double domain_bound, Scalar f,
                                               Scalar derivative, ClosedFormRadii radii,
                                               Scalar family_step,
                                               std::optional<double> rate_exponent) {
    MajorantFunction m;
    m.domain_bound_ = domain_bound;
    m.f_ = std::move(f);
    m.df_ = std::move(derivative);
    m.kind_ = MajorantKind::ClosedForm;
    m.closed_ = radii;
    m.family_step_ = std::move(family_step);
    m.rate_exponent_ = rate_exponent;
    if (!(m.domain_bound_ > 0.0))
        throw InvalidParameter("majorant domain bound must be positive");
    m.check_normalization();
    m.nu_ = radii.nu;
    m.rho_ = radii.rho;
    return m;
}

MajorantFunction MajorantFunction::numeric_with_step(double domain_bound, Scalar f,
                                                     Scalar derivative, Scalar family_step,
                                                     std::optional<double> rate_exponent) {
    MajorantFunction m(domain_bound, std::move(f), std::move(derivative));
    m.family_step_ = std::move(family_step);
    m.rate_exponent_ = rate_exponent;
    return m;
}

const ClosedFormRadii& MajorantFunction::closed_form_radii() const {
    if (!closed_) throw Error("majorant has no closed-form radii");
    return *closed_;
}

double MajorantFunction::family_step(double t) const {
    if (!family_step_) throw Error("majorant has no family recurrence");
    return family_step_(t);
}

void MajorantFunction::check_normalization() const {
    if (std::abs(f_(0.0)) > 1e-15)
        throw HypothesisViolated("majorant must vanish at 0");
    if (std::abs(df_(0.0) + 1.0) > 1e-12)
        throw HypothesisViolated("majorant slope at 0 must be -1");
}

void MajorantFunction::check_monotone_slope() const {
    // Sampled surrogate for strict monotonicity of f' : a 4096-point grid
    // over [0, min(R, 1e3)] with margin >= -1e-14. A flat derivative
    // (linear majorant) passes; a decreasing one does not.
    const double hi = std::min(effective_cap(domain_bound_), 1e3);
    double prev = df_(0.0);
    for (int i = 1; i <= kGridPoints; ++i) {
        const double t = hi * double(i) / double(kGridPoints);
        const double cur = df_(t);
        if (cur - prev < -1e-14)
            throw HypothesisViolated("majorant derivative is not increasing on the sampled grid");
        prev = cur;
    }
}

void MajorantFunction::locate_radii() {
    // nu: unique sign change of the strictly increasing f', found by a
    // geometric scan from below and bisection inside the bracket.
    const double cap = effective_cap(domain_bound_);
    if (df_(std::min(kScanFloor, cap)) >= 0.0)
        throw NoNegativeDerivative("derivative is nonnegative arbitrarily close to 0");
    double lo = std::min(kScanFloor, cap), hi = lo;
    bool bracketed = false;
    while (hi < cap) {
        hi = std::min(hi * 2.0, cap);
        if (df_(hi) >= 0.0) {
            bracketed = true;
            break;
        }
        lo = hi;
    }
    if (!bracketed) {
        nu_ = std::isinf(domain_bound_) ? kInf : domain_bound_;
    } else {
        nu_ = bisect_sign_change(df_, lo, hi);
    }

    // rho: first crossing of g(t) = |n_f(t)|/t - 1 on a log grid over
    // (0, nu); if g stays negative the sup is attained at nu itself.
    const double nu_cap = std::isinf(nu_) ? kScanCeil : nu_ * (1.0 - kEdgeGuard);
    auto g = [this](double t) {
        const double d = df_(t);
        if (d >= 0.0) return kInf; // at or past nu; treat as beyond the sup
        return std::abs(t - f_(t) / d) / t - 1.0;
    };
    const double lo_g = std::min(nu_cap, 1.0) * 1e-12;
    const double ratio = std::pow(nu_cap / lo_g, 1.0 / double(kGridPoints - 1));
    double prev_t = lo_g;
    double prev_g = g(prev_t);
    double found = kInf;
    if (prev_g >= 0.0) {
        found = 0.0; // contraction fails immediately; degenerate input
    } else {
        double t = lo_g;
        for (int i = 1; i < kGridPoints; ++i) {
            t *= ratio;
            const double cur = g(t);
            if (cur >= 0.0) {
                found = bisect_sign_change(g, prev_t, t);
                break;
            }
            prev_t = t;
            prev_g = cur;
        }
    }
    if (std::isinf(found))
        rho_ = std::isinf(nu_) && std::isinf(domain_bound_) ? kInf : nu_;
    else
        rho_ = found;
}

double newton_map(const MajorantFunction& m, double t) {
    if (t < 0.0 || t >= m.nu())
        throw OutOfDomain("scalar Newton step needs 0 <= t < nu");
    if (t == 0.0) return 0.0;
    const double d = m.slope(t);
    if (d >= 0.0)
        throw OutOfDomain("scalar Newton step needs f'(t) < 0");
    const double n = t - m.value(t) / d;
    if (n > 0.0)
        throw MonotonicityViolated("scalar Newton step must be nonpositive below nu");
    return n;
}

double majorant_step(const MajorantFunction& m, double t) {
    if (!(t > 0.0) || t >= m.rho())
        throw OutOfDomain("majorant step needs 0 < t < rho");
    const double s = std::abs(newton_map(m, t));
    if (s >= t)
        throw MonotonicityViolated("majorant step failed to contract below rho");
    return s;
}

namespace {

RadiusReport radii_numeric(const MajorantFunction& m, double kappa) {
    RadiusReport rep;
    rep.kappa = std::min(kappa, m.domain_bound());
    rep.nu = m.nu();
    rep.rho = m.rho();
    rep.nu_method = RadiusMethod::Bisection;
    rep.rho_method = RadiusMethod::Bisection;

    // sigma: first zero of f beyond 0 inside (0, kappa); f stays negative
    // while it decreases, so scan + bisection from a log grid suffices.
    const double cap = std::min(rep.kappa, effective_cap(m.domain_bound()));
    const double lo0 = std::min(cap, 1.0) * 1e-12;
    const double ratio = std::pow(cap / lo0, 1.0 / double(kGridPoints - 1));
    auto f = [&m](double t) { return m.value(t); };
    double prev = lo0;
    double sigma = kInf;
    double t = lo0;
    if (f(t) >= 0.0) {
        sigma = 0.0;
    } else {
        for (int i = 1; i < kGridPoints; ++i) {
            t *= ratio;
            if (f(t) >= 0.0) {
                sigma = bisect_sign_change(f, prev, t);
                break;
            }
            prev = t;
        }
    }
    rep.sigma = std::isinf(sigma) ? rep.kappa : std::min(sigma, rep.kappa);
    rep.sigma_method = RadiusMethod::Bisection;
    rep.r = std::min(rep.kappa, rep.rho);

    if (rep.rho < rep.kappa && std::isfinite(rep.rho)) {
        const double d = m.slope(rep.rho);
        if (d < 0.0) {
            const double sharp = m.value(rep.rho) / (rep.rho * d) - 1.0;
            rep.is_optimal = std::abs(sharp - 1.0) < 1e-8;
        }
    }
    return rep;
}

} // namespace

RadiusReport compute_radii(const MajorantFunction& m, double kappa) {
    if (!(kappa > 0.0))
        throw InvalidParameter("kappa must be positive");
    if (!m.has_closed_form()) return radii_numeric(m, kappa);
    const ClosedFormRadii& cf = m.closed_form_radii();
    RadiusReport rep;
    rep.kappa = std::min(kappa, m.domain_bound());
    rep.nu = cf.nu;
    rep.rho = cf.rho;
    rep.sigma = std::min(rep.kappa, cf.sigma_unbounded);
    rep.r = std::min(rep.kappa, rep.rho);
    rep.nu_method = rep.rho_method = rep.sigma_method = RadiusMethod::ClosedForm;
    rep.is_optimal = cf.sharp && cf.rho < rep.kappa;
    return rep;
}

RadiusReport compute_radii_numeric(const MajorantFunction& m, double kappa) {
    if (!(kappa > 0.0))
        throw InvalidParameter("kappa must be positive");
    if (m.has_closed_form()) {
        // rebuild nu/rho numerically instead of trusting the family
        MajorantFunction numeric(m.domain_bound(),
                                 [&m](double t) { return m.value(t); },
                                 [&m](double t) { return m.slope(t); });
        return radii_numeric(numeric, kappa);
    }
    return radii_numeric(m, kappa);
}

MajorantSequence run_majorant_sequence(const MajorantFunction& m, double t0, int max_steps,
                                       std::optional<double> p) {
    if (!(t0 > 0.0) || t0 >= m.rho())
        throw OutOfDomain("majorant sequence needs 0 < t0 < rho");
    if (!p) p = m.rate_exponent();
    MajorantSequence seq;
    seq.p = p;
    seq.t.push_back(t0);
    double t = t0;
    for (int k = 0; k < max_steps && t >= 1e-15; ++k) {
        const double next = majorant_step(m, t);
        if (next >= t)
            throw MonotonicityViolated("majorant sequence must decrease strictly");
        seq.ratios.push_back(next / t);
        if (p) seq.p_ratios.push_back(next / std::pow(t, *p + 1.0));
        seq.t.push_back(next);
        t = next;
    }
    return seq;
}

SampledCheck check_rate_condition(const MajorantFunction& m, double p) {
    if (p < 0.0 || p > 1.0)
        throw OutOfDomain("rate exponent must lie in [0, 1]");
    SampledCheck check;
    const double nu_cap = std::isinf(m.nu()) ? 1e8 : m.nu();
    // The grid floor keeps |n_f| above its last few significant digits;
    // closer to 0 the quotient drowns in rounding noise of t*f'(t) - f(t).
    const double lo = nu_cap * 1e-4;
    const double hi = nu_cap * (1.0 - 1e-9);
    const double ratio = std::pow(hi / lo, 1.0 / double(kGridPoints - 1));
    double min_margin = kInf;
    bool pass = true;
    double t = lo;
    double prev = std::abs(newton_map(m, t)) / std::pow(t, p + 1.0);
    for (int i = 1; i < kGridPoints; ++i) {
        t *= ratio;
        if (t >= m.nu()) break;
        const double cur = std::abs(newton_map(m, t)) / std::pow(t, p + 1.0);
        const double margin = cur - prev;
        min_margin = std::min(min_margin, margin);
        if (margin < -(1e-12 + 1e-9 * std::abs(prev))) pass = false;
        prev = cur;
    }
    check.passed = pass;
    check.min_margin = min_margin;
    check.samples = kGridPoints;
    return check;
}

} // namespace gncert
