// Test-only oracles, deliberately independent of the library's own
// factorization and power-iteration paths: Eigen's SVD, brute-force
// minimization, and central finite differences.
#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "gncert/linalg.hpp"
#include "gncert/problems.hpp"

namespace oracles {

inline Eigen::MatrixXd to_eigen(const gncert::Matrix& a) {
    Eigen::MatrixXd m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    return m;
}

/// Singular values in decreasing order, via Eigen's Jacobi SVD.
inline std::vector<double> singular_values(const gncert::Matrix& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
    const auto& s = svd.singularValues();
    return std::vector<double>(s.data(), s.data() + s.size());
}

inline double svd_norm(const gncert::Matrix& a) { return singular_values(a).front(); }
inline double svd_smin(const gncert::Matrix& a) { return singular_values(a).back(); }

/// Least-squares solution through Eigen's QR, as a cross-check route.
inline gncert::Vector eigen_least_squares(const gncert::Matrix& a, const gncert::Vector& y) {
    Eigen::VectorXd rhs(y.dim());
    for (std::size_t i = 0; i < y.dim(); ++i) rhs(i) = y[i];
    Eigen::VectorXd z = to_eigen(a).colPivHouseholderQr().solve(rhs);
    gncert::Vector out(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) out[i] = z(i);
    return out;
}

/// Brute-force minimizer of ‖a z - y‖ for a single-column a: golden-section
/// refinement of a coarse scan, no orthogonalization anywhere.
inline double brute_force_1d_least_squares(const gncert::Matrix& a, const gncert::Vector& y) {
    auto objective = [&](double z) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const double r = a(i, 0) * z - y[i];
            s += r * r;
        }
        return s;
    };
    double best = 0.0, best_val = objective(0.0);
    for (int i = -4000; i <= 4000; ++i) {
        const double z = i * 0.01;
        const double v = objective(z);
        if (v < best_val) {
            best_val = v;
            best = z;
        }
    }
    double lo = best - 0.01, hi = best + 0.01;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 200; ++it) {
        const double m1 = hi - gr * (hi - lo);
        const double m2 = lo + gr * (hi - lo);
        if (objective(m1) < objective(m2))
            hi = m2;
        else
            lo = m1;
    }
    return 0.5 * (lo + hi);
}

/// Central-difference Jacobian.
inline gncert::Matrix fd_jacobian(const gncert::ProblemInstance& p, const gncert::Vector& x) {
    gncert::Matrix j(p.range_dim(), p.domain_dim());
    for (std::size_t c = 0; c < p.domain_dim(); ++c) {
        const double h = 6e-6 * (1.0 + std::abs(x[c]));
        gncert::Vector xp = x, xm = x;
        xp[c] += h;
        xm[c] -= h;
        const gncert::Vector fp = p.residual(xp);
        const gncert::Vector fm = p.residual(xm);
        for (std::size_t r = 0; r < p.range_dim(); ++r) j(r, c) = (fp[r] - fm[r]) / (2.0 * h);
    }
    return j;
}

/// Random matrix with entries in [-1, 1] and a conditioning floor
/// sigma_min >= 1e-3 sigma_max, regenerating until the floor holds.
inline gncert::Matrix random_conditioned(std::mt19937_64& rng, std::size_t m, std::size_t n) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    while (true) {
        gncert::Matrix a(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = unif(rng);
        const auto sv = singular_values(a);
        if (sv.back() > 1e-3 * sv.front()) return a;
    }
}

} // namespace oracles
