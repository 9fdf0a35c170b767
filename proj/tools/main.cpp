// Command-line front end: convergence radii for the majorant families,
// Gauss-Newton runs with per-iteration traces, the theory-vs-practice
// verification harness, the sharp-radius cycle demonstration, and basin
// sweeps. CSV output uses 17 significant digits so files diff cleanly.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "gncert/families.hpp"
#include "gncert/gauss_newton.hpp"
#include "gncert/trace_io.hpp"
#include "gncert/verify.hpp"

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitVerifyFailure = 4;

struct FamilyOptions {
    std::string family = "holder";
    double K = 1.0;
    double p = 1.0;
    double gamma = 1.0;
    std::string preset = "constant";
};

void add_family_flags(CLI::App* cmd, FamilyOptions& opts) {
    cmd->add_option("--family", opts.family, "majorant family: holder | smale | integrable-L")
        ->check(CLI::IsMember({"holder", "smale", "integrable-L"}));
    cmd->add_option("--K", opts.K, "condition constant K (holder, integrable-L)");
    cmd->add_option("--p", opts.p, "exponent p in (0, 1] (holder, integrable-L power preset)");
    cmd->add_option("--gamma", opts.gamma, "analytic bound gamma (smale)");
    cmd->add_option("--preset", opts.preset,
                    "weight preset for integrable-L: constant | power | sine")
        ->check(CLI::IsMember({"constant", "power", "sine"}));
}

gncert::MajorantFunction make_family(const FamilyOptions& opts) {
    using namespace gncert;
    if (opts.family == "holder") return holder_majorant(opts.K, opts.p);
    if (opts.family == "smale") return smale_majorant(opts.gamma);
    if (opts.preset == "constant") {
        IntegrableLOptions o;
        o.rate_p = 1.0;
        const double K = opts.K;
        return integrable_L_majorant([K](double) { return K; }, 4.0 / K, o);
    }
    if (opts.preset == "power") {
        IntegrableLOptions o;
        o.singularity_exponent = opts.p - 1.0;
        o.rate_p = opts.p;
        const double K = opts.K, p = opts.p;
        return integrable_L_majorant(
            [K, p](double u) { return K * p * std::pow(u, p - 1.0); },
            2.0 * std::pow((p + 1.0) / K, 1.0 / p), o);
    }
    return integrable_L_majorant(
        [](double u) { return 1.0 + std::sin(u) * std::sin(u); }, 2.0, {});
}

struct ProblemOptions {
    std::string problem;
    double a = 1.0;
    double b = 0.0;
};

void add_problem_flags(CLI::App* cmd, ProblemOptions& opts) {
    cmd->add_option("--problem", opts.problem, "problem name (see the list command)")
        ->required();
    cmd->add_option("--a", opts.a, "parameter a of paper-example");
    cmd->add_option("--b", opts.b, "parameter b of paper-example");
}

gncert::ProblemInstance make_problem(const ProblemOptions& opts) {
    if (opts.problem == "paper-example") return gncert::paper_example(opts.a, opts.b);
    auto found = gncert::problem_by_name(opts.problem);
    if (!found) throw gncert::InvalidParameter("unknown problem: " + opts.problem);
    return *found;
}

/// Starting point from either an explicit coordinate list or a fraction of
/// the certified radius along a seeded sphere direction.
gncert::Vector resolve_start(const gncert::ProblemInstance& problem,
                             const std::string& x0_csv, std::optional<double> frac,
                             std::uint64_t seed, bool& certified) {
    using namespace gncert;
    double r = kInf;
    if (problem.has_majorant()) r = compute_radii(problem.majorant(), problem.kappa()).r;
    const double finite_r = std::isfinite(r) ? r : 10.0 * (1.0 + problem.root().norm());
    if (!x0_csv.empty()) {
        std::vector<double> vals;
        std::stringstream ss(x0_csv);
        std::string item;
        while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
        if (vals.size() != problem.domain_dim())
            throw InvalidParameter("--x0 needs " + std::to_string(problem.domain_dim()) +
                                   " comma-separated values");
        Vector x0(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) x0[i] = vals[i];
        certified = (x0 - problem.root()).norm() < r;
        return x0;
    }
    const double fraction = frac.value_or(0.5);
    if (!(fraction > 0.0))
        throw InvalidParameter("--start-frac must be positive");
    certified = fraction * finite_r < r;
    return sphere_point(problem, fraction * finite_r, seed);
}

/// Writes to the path when given, stdout otherwise.
int with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty()) {
        fn(std::cout);
        return 0;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot open output file: " << path << "\n";
        return kExitUsage;
    }
    fn(out);
    return 0;
}

std::string show(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return gncert::format_double(v);
}

int cmd_radius(const FamilyOptions& fam, double kappa, const std::string& format,
               const std::string& output) {
    using namespace gncert;
    MajorantFunction m = make_family(fam);
    RadiusReport rep = compute_radii(m, kappa);
    if (format == "json")
        return with_output(
            output, [&](std::ostream& os) { os << radius_report_json(rep).dump(2) << "\n"; });
    return with_output(output, [&](std::ostream& os) {
        auto method = [](RadiusMethod me) {
            return me == RadiusMethod::ClosedForm ? "closed-form" : "bisection";
        };
        os << "family: " << fam.family << "\n";
        os << "kappa = " << show(rep.kappa) << "\n";
        os << "nu    = " << show(rep.nu) << "  [" << method(rep.nu_method) << "]\n";
        os << "rho   = " << show(rep.rho) << "  [" << method(rep.rho_method) << "]\n";
        os << "sigma = " << show(rep.sigma) << "  [" << method(rep.sigma_method) << "]\n";
        os << "r     = " << show(rep.r) << "\n";
        os << "optimal-radius: " << (rep.is_optimal ? "yes" : "no") << "\n";
    });
}

int cmd_solve(const ProblemOptions& po, const std::string& x0_csv, std::optional<double> frac,
              const gncert::SolveConfig& cfg, std::uint64_t seed, const std::string& format,
              const std::string& output) {
    using namespace gncert;
    ProblemInstance problem = make_problem(po);
    bool certified = false;
    Vector x0 = resolve_start(problem, x0_csv, frac, seed, certified);
    IterationTrace trace = gauss_newton_solve(problem, x0, cfg);
    int rc = with_output(output, [&](std::ostream& os) {
        if (format == "json")
            os << trace_json(trace, problem, certified).dump(2) << "\n";
        else
            write_trace_csv(os, trace, problem, certified);
    });
    if (rc != 0) return rc;
    std::cerr << "status: " << to_string(trace.status) << " after " << trace.steps()
              << " steps\n";
    return trace.status == SolveStatus::Converged ? 0 : kExitNoConvergence;
}

int cmd_verify(const ProblemOptions& po, std::optional<double> k_override,
               const std::string& x0_csv, std::optional<double> frac, int samples,
               const gncert::SolveConfig& cfg, std::uint64_t seed, const std::string& output) {
    using namespace gncert;
    ProblemInstance problem = make_problem(po);
    if (k_override) {
        const double p = problem.has_majorant()
                             ? problem.majorant().rate_exponent().value_or(1.0)
                             : 1.0;
        problem = problem.with_majorant(holder_majorant(*k_override, p),
                                        "constant overridden on the command line");
    }
    bool certified = false;
    Vector x0 = resolve_start(problem, x0_csv, frac, seed, certified);
    if (!certified) {
        std::cerr << "starting point lies outside the certified radius\n";
        return kExitUsage;
    }
    VerificationReport rep = run_full_verification(problem, x0, samples, seed, cfg);
    int rc = with_output(output, [&](std::ostream& os) {
        os << verification_report_json(rep).dump(2) << "\n";
    });
    if (rc != 0) return rc;
    if (!rep.overall) {
        std::cerr << "verification FAILED for " << rep.problem_name << "\n";
        if (rep.condition_probe && rep.condition_probe->pass_fraction < 1.0)
            std::cerr << "  condition probe pass fraction "
                      << rep.condition_probe->pass_fraction << ", worst margin "
                      << rep.condition_probe->worst_margin << "\n";
        for (const BoundRecord& b : rep.bound_checks)
            if (!b.pass)
                std::cerr << "  bound violated at k=" << b.k << ": err=" << b.error
                          << " t=" << b.t << "\n";
        return kExitVerifyFailure;
    }
    std::cerr << "verification passed for " << rep.problem_name << "\n";
    return 0;
}

int cmd_cycle(const FamilyOptions& fam, const std::string& format, const std::string& output) {
    using namespace gncert;
    MajorantFunction m = make_family(fam);
    CycleResult res = cycle_demo(m);
    int rc = with_output(output, [&](std::ostream& os) {
        if (format == "json") {
            os << cycle_result_json(res).dump(2) << "\n";
            return;
        }
        os << "rho = " << show(res.rho) << "\n";
        for (std::size_t k = 0; k + 1 < res.iterates.size(); ++k)
            os << "x_" << k << " = " << show(res.iterates[k]) << "\n";
        os << "cycle: " << (res.cycle_confirmed ? "confirmed" : "NOT confirmed") << "\n";
    });
    if (rc != 0) return rc;
    return res.cycle_confirmed ? 0 : kExitVerifyFailure;
}

int cmd_sweep(const ProblemOptions& po, double frac_min, double frac_max, double frac_step,
              int directions, const gncert::SolveConfig& cfg, std::uint64_t seed,
              const std::string& output) {
    using namespace gncert;
    ProblemInstance problem = make_problem(po);
    const RadiusReport radii = compute_radii(problem.majorant(), problem.kappa());
    const double r = std::isfinite(radii.r) ? radii.r : 10.0 * (1.0 + problem.root().norm());
    return with_output(output, [&](std::ostream& os) {
        write_sweep_header(os);
        int row_seed = 0;
        for (double frac = frac_min; frac <= frac_max + 1e-12; frac += frac_step) {
            for (int d = 0; d < directions; ++d, ++row_seed) {
                const Vector x0 = sphere_point(problem, frac * r, seed + 1000 * row_seed);
                IterationTrace t = gauss_newton_solve(problem, x0, cfg);
                const double err = t.errors ? t.errors->back() : kInf;
                const bool to_root = t.status == SolveStatus::Converged &&
                                     err <= 1e-8 * (1.0 + problem.root().norm());
                write_sweep_row(os, frac, d, to_root, t.steps(), err);
            }
        }
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gauss-Newton solver with local-convergence certificates"};
    app.require_subcommand(1);

    std::string format = "csv";
    std::string output;
    std::uint64_t seed = 42;
    gncert::SolveConfig cfg;
    app.add_option("--format", format, "output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", output, "write results to this file instead of stdout");
    app.add_option("--seed", seed, "seed for sampled directions and probes");
    app.add_option("--max-iters", cfg.max_iters, "iteration budget");
    app.add_option("--step-tol", cfg.step_tol, "stop once the step norm falls below this");
    app.add_option("--grad-tol", cfg.grad_tol, "stationarity tolerance on the gradient norm");

    FamilyOptions fam;
    double kappa = kInf;
    CLI::App* radius = app.add_subcommand("radius", "convergence and uniqueness radii");
    add_family_flags(radius, fam);
    radius->add_option("--kappa", kappa, "domain ball radius (default unbounded)");

    ProblemOptions po;
    std::string x0_csv;
    std::optional<double> frac;
    CLI::App* solve = app.add_subcommand("solve", "run the iteration and write the trace");
    add_problem_flags(solve, po);
    solve->add_option("--x0", x0_csv, "starting point, comma-separated");
    solve->add_option("--start-frac", frac, "start at this fraction of the certified radius");

    ProblemOptions vo;
    std::string vx0;
    std::optional<double> vfrac;
    std::optional<double> k_override;
    int samples = 1000;
    CLI::App* verify = app.add_subcommand("verify", "run the certificate checks");
    add_problem_flags(verify, vo);
    verify->add_option("--x0", vx0, "starting point, comma-separated");
    verify->add_option("--start-frac", vfrac, "start at this fraction of the certified radius");
    verify->add_option("--samples", samples, "sample count for the probes");
    verify->add_option("--K-override", k_override,
                       "replace the attached condition constant (falsification runs)");

    FamilyOptions cfam;
    CLI::App* cycle = app.add_subcommand("cycle", "sharp-radius two-cycle demonstration");
    add_family_flags(cycle, cfam);

    ProblemOptions so;
    double frac_min = 0.1, frac_max = 1.5, frac_step = 0.1;
    int directions = 8;
    CLI::App* sweep = app.add_subcommand("sweep", "basin sweep over starting radii");
    add_problem_flags(sweep, so);
    sweep->add_option("--frac-min", frac_min, "smallest fraction of r");
    sweep->add_option("--frac-max", frac_max, "largest fraction of r");
    sweep->add_option("--frac-step", frac_step, "fraction increment");
    sweep->add_option("--directions", directions, "sphere directions per fraction");

    CLI::App* list = app.add_subcommand("list", "list the built-in problems");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (radius->parsed()) return cmd_radius(fam, kappa, format, output);
        if (solve->parsed()) return cmd_solve(po, x0_csv, frac, cfg, seed, format, output);
        if (verify->parsed())
            return cmd_verify(vo, k_override, vx0, vfrac, samples, cfg, seed, output);
        if (cycle->parsed()) return cmd_cycle(cfam, format, output);
        if (sweep->parsed())
            return cmd_sweep(so, frac_min, frac_max, frac_step, directions, cfg, seed, output);
        if (list->parsed()) {
            for (const gncert::ProblemInstance& p : gncert::corpus())
                std::cout << p.name() << "\n";
            std::cout << "paper-example (parametric: --a, --b)\n";
            return 0;
        }
    } catch (const gncert::SharpnessNotMet& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const gncert::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const gncert::OutsideCertifiedBall& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const gncert::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
