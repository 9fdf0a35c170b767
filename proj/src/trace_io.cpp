#include "gncert/trace_io.hpp"

#include <cmath>
#include <cstdio>

namespace gncert {

namespace {

/// Non-finite doubles become strings so the JSON stays parseable.
nlohmann::json json_number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

const char* method_name(RadiusMethod m) {
    return m == RadiusMethod::ClosedForm ? "closed-form" : "bisection";
}

/// Majorant sequence aligned with the trace, empty once exhausted.
std::vector<std::optional<double>> lockstep_t(const IterationTrace& trace,
                                              const ProblemInstance& problem,
                                              bool certified) {
    std::vector<std::optional<double>> t(trace.iterates.size());
    if (!certified || !problem.has_majorant() || !trace.errors || trace.errors->empty())
        return t;
    const MajorantFunction& m = problem.majorant();
    double tk = trace.errors->front();
    if (!(tk > 0.0) || tk >= m.rho()) return t;
    t[0] = tk;
    for (std::size_t k = 1; k < t.size() && tk >= 1e-15; ++k) {
        tk = majorant_step(m, tk);
        t[k] = tk;
    }
    return t;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace,
                     const ProblemInstance& problem, bool certified) {
    const std::size_t n = problem.domain_dim();
    out << "k";
    for (std::size_t j = 0; j < n; ++j) out << ",x_" << j;
    out << ",res_norm,err_norm,t_k,ratio,p_ratio,certificate\n";

    const auto t = lockstep_t(trace, problem, certified);
    const std::optional<double> p =
        problem.has_majorant() ? problem.majorant().rate_exponent() : std::nullopt;
    const char* cert = certified ? "certified" : "uncertified";
    for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
        out << k;
        for (std::size_t j = 0; j < n; ++j) out << ',' << format_double(trace.iterates[k][j]);
        out << ',' << format_double(trace.residual_norms[k]);
        out << ',';
        if (trace.errors) out << format_double((*trace.errors)[k]);
        out << ',';
        if (t[k]) out << format_double(*t[k]);
        out << ',';
        if (k > 0 && trace.errors && (*trace.errors)[k - 1] > 0.0)
            out << format_double((*trace.errors)[k] / (*trace.errors)[k - 1]);
        out << ',';
        if (k > 0 && trace.errors && (*trace.errors)[k - 1] > 0.0 && p)
            out << format_double((*trace.errors)[k] /
                                 std::pow((*trace.errors)[k - 1], *p + 1.0));
        out << ',' << cert << '\n';
    }
}

void write_sweep_header(std::ostream& out) {
    out << "fraction,direction,converged,iterations,final_error\n";
}

void write_sweep_row(std::ostream& out, double fraction, int direction, bool converged,
                     std::size_t iterations, double final_error) {
    out << format_double(fraction) << ',' << direction << ',' << (converged ? 1 : 0) << ','
        << iterations << ',' << format_double(final_error) << '\n';
}

nlohmann::json radius_report_json(const RadiusReport& rep) {
    return {
        {"schema", 1},
        {"kappa", json_number(rep.kappa)},
        {"nu", json_number(rep.nu)},
        {"rho", json_number(rep.rho)},
        {"sigma", json_number(rep.sigma)},
        {"r", json_number(rep.r)},
        {"is_optimal", rep.is_optimal},
        {"methods",
         {{"nu", method_name(rep.nu_method)},
          {"rho", method_name(rep.rho_method)},
          {"sigma", method_name(rep.sigma_method)}}},
    };
}

nlohmann::json trace_json(const IterationTrace& trace, const ProblemInstance& problem,
                          bool certified) {
    nlohmann::json rows = nlohmann::json::array();
    const auto t = lockstep_t(trace, problem, certified);
    for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
        nlohmann::json row;
        row["k"] = k;
        row["x"] = trace.iterates[k].entries();
        row["res_norm"] = json_number(trace.residual_norms[k]);
        if (trace.errors) row["err_norm"] = json_number((*trace.errors)[k]);
        if (t[k]) row["t_k"] = json_number(*t[k]);
        rows.push_back(std::move(row));
    }
    return {{"schema", 1},
            {"problem", problem.name()},
            {"status", to_string(trace.status)},
            {"certificate", certified ? "certified" : "uncertified"},
            {"iterations", rows}};
}

nlohmann::json cycle_result_json(const CycleResult& res) {
    return {{"schema", 1},
            {"rho", json_number(res.rho)},
            {"iterates", res.iterates},
            {"cycle_confirmed", res.cycle_confirmed}};
}

nlohmann::json verification_report_json(const VerificationReport& rep) {
    nlohmann::json bounds = nlohmann::json::array();
    for (const auto& b : rep.bound_checks)
        bounds.push_back({{"k", b.k},
                          {"err", json_number(b.error)},
                          {"t", json_number(b.t)},
                          {"slack", json_number(b.slack)},
                          {"pass", b.pass}});
    nlohmann::json rates = nlohmann::json::array();
    for (const auto& r : rep.rate_records) {
        nlohmann::json row{{"k", r.k}, {"ratio", json_number(r.ratio)}, {"pass", r.rate_pass}};
        if (r.p_ratio) row["p_ratio"] = json_number(*r.p_ratio);
        if (r.rate_rhs) row["rate_rhs"] = json_number(*r.rate_rhs);
        rates.push_back(std::move(row));
    }
    nlohmann::json out{{"schema", 1},
                       {"problem", rep.problem_name},
                       {"radius", radius_report_json(rep.radius_report)},
                       {"t0", json_number(rep.t0)},
                       {"solve_status", to_string(rep.solve_status)},
                       {"bound_checks", std::move(bounds)},
                       {"rate_records", std::move(rates)},
                       {"lemma_checks", rep.lemma_checks},
                       {"lemma_failures", rep.lemma_failures},
                       {"overall", rep.overall}};
    if (rep.condition_probe)
        out["condition_probe"] = {{"pass_fraction", rep.condition_probe->pass_fraction},
                                  {"worst_margin", json_number(rep.condition_probe->worst_margin)},
                                  {"samples", rep.condition_probe->samples}};
    if (rep.cycle_result) out["cycle"] = cycle_result_json(*rep.cycle_result);
    if (rep.uniqueness) {
        const auto& u = *rep.uniqueness;
        nlohmann::json uj{{"sigma", json_number(u.sigma)},
                          {"sample_radius", json_number(u.sample_radius)},
                          {"grid_pass", u.grid_pass},
                          {"grid_max", json_number(u.grid_max)},
                          {"empirical_samples", u.empirical_samples},
                          {"min_residual_norm", json_number(u.min_residual_norm)},
                          {"empirical_pass", u.empirical_pass},
                          {"printed_radius_consistent", u.printed_radius_consistent}};
        if (u.printed_radius) uj["printed_radius"] = json_number(*u.printed_radius);
        out["uniqueness"] = std::move(uj);
    }
    return out;
}

} // namespace gncert
