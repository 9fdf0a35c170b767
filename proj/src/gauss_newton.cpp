#include "gncert/gauss_newton.hpp"

#include <cmath>

namespace gncert {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "Converged";
        case SolveStatus::MaxIters: return "MaxIters";
        case SolveStatus::RankDeficientJacobian: return "RankDeficientJacobian";
        case SolveStatus::Diverged: return "Diverged";
    }
    return "Unknown";
}

Vector gn_step(const ProblemInstance& problem, const Vector& x) {
    const Matrix j = problem.jacobian(x);
    const Vector r = problem.residual(x);
    return x - pseudoinverse_apply(j, r);
}

IterationTrace gauss_newton_solve(const ProblemInstance& problem, const Vector& x0,
                                  const SolveConfig& cfg) {
    IterationTrace trace;
    auto record = [&](const Vector& x) {
        trace.iterates.push_back(x);
        trace.residual_norms.push_back(problem.residual(x).norm());
        trace.step_norms.push_back(trace.iterates.size() == 1
                                       ? 0.0
                                       : (x - trace.iterates[trace.iterates.size() - 2]).norm());
        if (cfg.record_errors) {
            if (!trace.errors) trace.errors.emplace();
            trace.errors->push_back((x - problem.root()).norm());
        }
    };

    Vector x = x0;
    record(x);
    const double escape = 1e6 * (1.0 + x0.norm());
    int k = 0;
    bool stalled = false;
    while (true) {
        if ((x - x0).norm() > escape) {
            trace.status = SolveStatus::Diverged;
            return trace;
        }
        const Matrix j = problem.jacobian(x);
        // the rank gate comes before the gradient rule: a tiny gradient at a
        // rank-deficient point is a degenerate stationary point, not a
        // certified solution
        if (!j.all_finite() ||
            smallest_singular_value(j) <= rank_tolerance() * operator_norm(j)) {
            trace.status = SolveStatus::RankDeficientJacobian;
            return trace;
        }
        const Vector residual = problem.residual(x);
        if (transpose_times(j, residual).norm() <= cfg.grad_tol) {
            trace.status = SolveStatus::Converged;
            return trace;
        }
        if (k >= cfg.max_iters || stalled) break;
        Vector next(x.dim());
        try {
            next = x - pseudoinverse_apply(j, residual);
        } catch (const RankDeficient&) {
            trace.status = SolveStatus::RankDeficientJacobian;
            return trace;
        }
        record(next);
        stalled = (next - x).norm() < cfg.step_tol;
        x = next;
        ++k;
    }
    trace.status = SolveStatus::MaxIters;
    return trace;
}

} // namespace gncert
