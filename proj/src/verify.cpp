#include "gncert/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace gncert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vector random_direction(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector dir(n);
    double nn = 0.0;
    do {
        for (std::size_t i = 0; i < n; ++i) dir[i] = gauss(rng);
        nn = dir.norm();
    } while (nn == 0.0);
    return (1.0 / nn) * dir;
}

/// Finite sampling radius for probes over possibly unbounded balls.
double finite_probe_radius(double kappa, double rho, const Vector& x_star) {
    double r = kappa;
    if (std::isfinite(rho)) r = std::min(r, 10.0 * rho);
    if (!std::isfinite(r)) r = 10.0 * (1.0 + x_star.norm());
    return r;
}

} // namespace

Vector sphere_point(const ProblemInstance& problem, double radius, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Vector dir = random_direction(problem.domain_dim(), rng);
    return problem.root() + radius * dir;
}

VerificationReport verify_majorant_bound(const ProblemInstance& problem, const Vector& x0,
                                         const SolveConfig& cfg) {
    if (!problem.has_majorant())
        throw MissingMajorant("verification needs a problem with an attached majorant");
    const MajorantFunction& m = problem.majorant();
    VerificationReport rep;
    rep.problem_name = problem.name();
    rep.radius_report = compute_radii(m, problem.kappa());
    const double t0 = (x0 - problem.root()).norm();
    rep.t0 = t0;
    if (!(t0 < rep.radius_report.r))
        throw OutsideCertifiedBall("starting point lies outside the certified radius");

    IterationTrace trace = gauss_newton_solve(problem, x0, cfg);
    rep.solve_status = trace.status;
    const std::vector<double>& err = *trace.errors;

    // the scalar sequence, stepped alongside the iterates
    std::vector<double> t{t0};
    if (t0 > 0.0) {
        double tk = t0;
        for (std::size_t k = 1; k < err.size() && tk >= 1e-15; ++k) {
            tk = majorant_step(m, tk);
            t.push_back(tk);
        }
    }
    while (t.size() < err.size()) t.push_back(t.back()); // exhausted below 1e-15

    bool all_bounds = true;
    for (std::size_t k = 0; k < err.size(); ++k) {
        BoundRecord rec;
        rec.k = int(k);
        rec.error = err[k];
        rec.t = t[k];
        rec.slack = rec.t - rec.error;
        rec.pass = rec.slack >= -assertion_slack(rec.t);
        all_bounds = all_bounds && rec.pass;
        rep.bound_checks.push_back(rec);
    }

    const std::optional<double> p = m.rate_exponent();
    bool all_rates = true;
    for (std::size_t k = 0; k + 1 < err.size(); ++k) {
        RateRecord rec;
        rec.k = int(k);
        rec.ratio = err[k] > 0.0 ? err[k + 1] / err[k] : 0.0;
        if (p && err[k] > 0.0) {
            const double ekp = std::pow(err[k], *p + 1.0);
            rec.p_ratio = err[k + 1] / ekp;
            if (t[k] > 1e-15) {
                const double coeff = t[k + 1] / std::pow(t[k], *p + 1.0);
                rec.rate_rhs = coeff * ekp;
                rec.rate_pass = err[k + 1] <= *rec.rate_rhs + assertion_slack(*rec.rate_rhs);
            }
        }
        all_rates = all_rates && rec.rate_pass;
        rep.rate_records.push_back(rec);
    }

    rep.overall = all_bounds && all_rates && trace.status == SolveStatus::Converged;
    return rep;
}

double condition_margin(const ProblemInstance& problem, const MajorantFunction& m,
                        const Vector& x, double tau) {
    const Vector d = x - problem.root();
    const double dist = d.norm();
    const Vector x_tau = problem.root() + tau * d;
    const double lhs =
        problem.beta() * operator_norm(problem.jacobian(x) - problem.jacobian(x_tau));
    const double rhs = m.slope(dist) - m.slope(tau * dist);
    return rhs - lhs;
}

ConditionProbe probe_majorant_condition(const ProblemInstance& problem,
                                        const MajorantFunction& m, int samples,
                                        std::uint64_t seed) {
    if (samples < 1) throw InvalidParameter("probe needs at least one sample");
    const double kappa = std::min(problem.domain_radius(), m.domain_bound());
    const double radius =
        finite_probe_radius(kappa * (1.0 - 1e-12), m.rho(), problem.root());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t n = problem.domain_dim();
    ConditionProbe probe;
    probe.samples = samples;
    probe.worst_margin = kInf;
    int passed = 0;
    for (int s = 0; s < samples; ++s) {
        const Vector dir = random_direction(n, rng);
        const double dist = radius * std::pow(unif(rng), 1.0 / double(n));
        const double tau = unif(rng);
        const Vector x = problem.root() + dist * dir;
        const double margin = condition_margin(problem, m, x, tau);
        const double scale = std::abs(m.slope(dist) - m.slope(tau * dist));
        probe.worst_margin = std::min(probe.worst_margin, margin);
        if (margin >= -assertion_slack(scale)) ++passed;
    }
    probe.pass_fraction = double(passed) / double(samples);
    return probe;
}

CycleResult cycle_demo(const MajorantFunction& m) {
    const double rho = m.rho();
    if (!std::isfinite(rho))
        throw SharpnessNotMet("contraction radius is not finite");
    bool sharp = m.has_closed_form() && m.closed_form_radii().sharp;
    if (!sharp) {
        const double d = m.slope(rho);
        sharp = d < 0.0 && std::abs(m.value(rho) / (rho * d) - 2.0) < 1e-8;
    }
    if (!sharp)
        throw SharpnessNotMet("majorant does not satisfy the sharpness identity at rho");

    ProblemInstance scalar = scalar_odd_extension(m, "odd-extension");
    CycleResult res;
    res.rho = rho;
    Vector x{-rho};
    res.iterates.push_back(x[0]);
    for (int k = 0; k < 4; ++k) {
        x = gn_step(scalar, x);
        res.iterates.push_back(x[0]);
    }
    res.cycle_confirmed = std::abs(res.iterates[1] - rho) < 1e-9 &&
                          std::abs(res.iterates[2] + rho) < 1e-9;
    return res;
}

UniquenessProbe uniqueness_probe(const ProblemInstance& problem, const MajorantFunction& m,
                                 int samples, std::uint64_t seed) {
    UniquenessProbe probe;
    const RadiusReport radii = compute_radii(m, problem.kappa());
    probe.sigma = radii.sigma;
    const double sigma_eff = std::isfinite(radii.sigma)
                                 ? radii.sigma
                                 : finite_probe_radius(radii.sigma, m.rho(), problem.root());
    probe.sample_radius = sigma_eff;

    probe.grid_max = -kInf;
    probe.grid_pass = true;
    for (int i = 1; i <= 1024; ++i) {
        const double t = sigma_eff * double(i) / 1025.0;
        const double v = m.value(t);
        probe.grid_max = std::max(probe.grid_max, v);
        if (!(v < 0.0)) probe.grid_pass = false;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t n = problem.domain_dim();
    probe.empirical_samples = samples;
    probe.min_residual_norm = kInf;
    probe.empirical_pass = true;
    for (int s = 0; s < samples; ++s) {
        const Vector dir = random_direction(n, rng);
        double dist;
        do {
            dist = sigma_eff * std::pow(unif(rng), 1.0 / double(n));
        } while (dist < sigma_eff * 1e-6); // keep away from the root itself
        const Vector x = problem.root() + dist * dir;
        const double rn = problem.residual(x).norm();
        probe.min_residual_norm = std::min(probe.min_residual_norm, rn);
        if (!(rn > 1e-10)) probe.empirical_pass = false;
    }

    if (problem.uniqueness_radius_hint()) {
        probe.printed_radius = *problem.uniqueness_radius_hint();
        const double rel = std::abs(*probe.printed_radius - radii.sigma) /
                           std::max(1.0, std::abs(radii.sigma));
        probe.printed_radius_consistent = rel < 1e-8;
    }
    return probe;
}

LinearizationErrors linearization_errors(const ProblemInstance& problem,
                                         const MajorantFunction& m, const Vector& x) {
    const Vector d = x - problem.root();
    const double t = d.norm();
    if (!(t < problem.kappa()))
        throw OutOfDomain("point lies outside the domain ball");
    LinearizationErrors res;
    // remainder of linearizing F at x, evaluated at the root (F(x*) = 0)
    const Vector rem = problem.jacobian(x) * d - problem.residual(x);
    res.map_error_norm = rem.norm();
    res.scalar_error = t * m.slope(t) - m.value(t);
    res.bound_holds =
        problem.beta() * res.map_error_norm <= res.scalar_error + assertion_slack(res.scalar_error);
    return res;
}

PinvBallCheck pseudoinverse_ball_bound(const ProblemInstance& problem,
                                       const MajorantFunction& m, const Vector& x) {
    const double t = (x - problem.root()).norm();
    if (!(t < std::min(m.nu(), problem.kappa())))
        throw OutOfDomain("point lies outside min(nu, kappa)");
    PinvBallCheck res;
    res.lhs = pseudoinverse_norm(problem.jacobian(x));
    res.rhs = problem.beta() / std::abs(m.slope(t));
    res.pass = res.lhs <= res.rhs + assertion_slack(res.rhs);
    return res;
}

VerificationReport run_full_verification(const ProblemInstance& problem, const Vector& x0,
                                         int probe_samples, std::uint64_t seed,
                                         const SolveConfig& cfg) {
    VerificationReport rep = verify_majorant_bound(problem, x0, cfg);
    const MajorantFunction& m = problem.majorant();
    rep.condition_probe = probe_majorant_condition(problem, m, probe_samples, seed);
    rep.uniqueness = uniqueness_probe(problem, m, probe_samples, seed + 1);

    bool sharp = m.has_closed_form() && m.closed_form_radii().sharp;
    if (sharp && std::isfinite(m.rho())) rep.cycle_result = cycle_demo(m);

    // lemma sweeps at sampled points strictly inside the certified ball
    std::mt19937_64 rng(seed + 2);
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    double ball = std::min(rep.radius_report.r, rep.radius_report.nu);
    if (!std::isfinite(ball)) ball = 10.0 * (1.0 + problem.root().norm());
    for (int s = 0; s < 32; ++s) {
        const Vector x =
            problem.root() + (unif(rng) * ball) * random_direction(problem.domain_dim(), rng);
        ++rep.lemma_checks;
        const LinearizationErrors lin = linearization_errors(problem, m, x);
        const PinvBallCheck ball_check = pseudoinverse_ball_bound(problem, m, x);
        if (!lin.bound_holds || !ball_check.pass) ++rep.lemma_failures;
    }

    const bool probe_ok = rep.condition_probe->pass_fraction == 1.0;
    const bool uniq_ok = rep.uniqueness->grid_pass && rep.uniqueness->empirical_pass &&
                         rep.uniqueness->printed_radius_consistent;
    const bool cycle_ok = !rep.cycle_result || rep.cycle_result->cycle_confirmed;
    rep.overall = rep.overall && probe_ok && uniq_ok && cycle_ok && rep.lemma_failures == 0;
    return rep;
}

} // namespace gncert
