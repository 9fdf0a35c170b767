#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gncert/linalg.hpp"
#include "gncert/problems.hpp"

namespace gncert {

/// Stopping rules for the iteration driver. The analyzed method carries no
/// stopping rule of its own; these cut the run off once nothing further can
/// be learned in double precision.
struct SolveConfig {
    int max_iters = 100;
    double step_tol = 1e-14;  ///< on ‖x_{k+1} - x_k‖
    double grad_tol = 1e-12;  ///< on ‖J(x)ᵀ F(x)‖, the stationarity certificate
    bool record_errors = true;
};

enum class SolveStatus { Converged, MaxIters, RankDeficientJacobian, Diverged };

const char* to_string(SolveStatus s);

/// Per-iteration record of a Gauss-Newton run. All per-iterate lists share
/// one length (entry k describes iterate k; step_norms[0] is 0).
struct IterationTrace {
    std::vector<Vector> iterates;
    std::vector<double> residual_norms;
    std::vector<double> step_norms;
    std::optional<std::vector<double>> errors; ///< ‖x_k - x*‖ when recorded
    SolveStatus status = SolveStatus::MaxIters;

    std::size_t steps() const { return iterates.empty() ? 0 : iterates.size() - 1; }
};

/// One application of the iteration map x -> x - J(x)† F(x).
Vector gn_step(const ProblemInstance& problem, const Vector& x);

/// Run the pure Gauss-Newton iteration from x0. Convergence means the
/// gradient rule fired; a rank-deficient Jacobian mid-run is recorded in the
/// status with the partial trace kept, so callers can observe failures
/// outside the certified ball.
IterationTrace gauss_newton_solve(const ProblemInstance& problem, const Vector& x0,
                                  const SolveConfig& cfg = {});

} // namespace gncert
