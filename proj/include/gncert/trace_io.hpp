#pragma once

#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "gncert/gauss_newton.hpp"
#include "gncert/verify.hpp"

namespace gncert {

/// Shortest decimal form of a double that round-trips exactly (17
/// significant digits), so emitted files diff cleanly across runs.
std::string format_double(double v);

/// Per-iteration CSV with the fixed header
///   k,x_0..x_{n-1},res_norm,err_norm,t_k,ratio,p_ratio,certificate
/// t_k and the ratio columns are left empty where undefined; the trailing
/// certificate column says whether the start was inside the certified ball.
void write_trace_csv(std::ostream& out, const IterationTrace& trace,
                     const ProblemInstance& problem, bool certified);

/// One row per (fraction, direction) sweep run.
void write_sweep_header(std::ostream& out);
void write_sweep_row(std::ostream& out, double fraction, int direction, bool converged,
                     std::size_t iterations, double final_error);

nlohmann::json radius_report_json(const RadiusReport& rep);
nlohmann::json trace_json(const IterationTrace& trace, const ProblemInstance& problem,
                          bool certified);
nlohmann::json verification_report_json(const VerificationReport& rep);
nlohmann::json cycle_result_json(const CycleResult& res);

} // namespace gncert
