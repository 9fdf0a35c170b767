#include "gncert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gncert {

namespace {

constexpr double kRankTol = 1e-12;
constexpr double kPowerIterTol = 1e-12;
constexpr int kPowerIterCap = 10000;

void require_same_dim(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("vector dimensions differ");
}

void require_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix shapes differ");
}

void require_overdetermined(const Matrix& a) {
    if (a.rows() < a.cols())
        throw DimensionMismatch("pseudoinverse operations require rows >= cols");
    if (a.cols() == 0)
        throw DimensionMismatch("matrix has no columns");
}

/// Compact Householder factorization of an m×n matrix, m >= n.
/// R sits in the upper triangle of `qr`; the (unnormalized is avoided —
/// vectors are stored unit-length) reflector of step j sits below it.
struct HouseholderQr {
    Matrix qr;
    std::vector<double> diag; // diagonal of R (the reflected alphas)

    explicit HouseholderQr(const Matrix& a) : qr(a), diag(a.cols(), 0.0) {
        const std::size_t m = a.rows();
        const std::size_t n = a.cols();
        for (std::size_t j = 0; j < n; ++j) {
            double colnorm = 0.0;
            for (std::size_t i = j; i < m; ++i) colnorm = std::hypot(colnorm, qr(i, j));
            if (colnorm == 0.0) {
                diag[j] = 0.0;
                continue; // exactly dependent column; rank gate reports it
            }
            double alpha = (qr(j, j) >= 0.0) ? -colnorm : colnorm;
            // v = x - alpha e1, normalized
            qr(j, j) -= alpha;
            double vnorm = 0.0;
            for (std::size_t i = j; i < m; ++i) vnorm = std::hypot(vnorm, qr(i, j));
            if (vnorm > 0.0)
                for (std::size_t i = j; i < m; ++i) qr(i, j) /= vnorm;
            // apply I - 2vvᵀ to the trailing columns
            for (std::size_t k = j + 1; k < n; ++k) {
                double s = 0.0;
                for (std::size_t i = j; i < m; ++i) s += qr(i, j) * qr(i, k);
                s *= 2.0;
                for (std::size_t i = j; i < m; ++i) qr(i, k) -= s * qr(i, j);
            }
            diag[j] = alpha;
        }
    }

    std::size_t rows() const { return qr.rows(); }
    std::size_t cols() const { return qr.cols(); }

    bool exactly_singular() const {
        return std::any_of(diag.begin(), diag.end(), [](double d) { return d == 0.0; });
    }

    /// y <- Qᵀ y.
    void apply_qt(std::vector<double>& y) const {
        const std::size_t m = rows();
        const std::size_t n = cols();
        for (std::size_t j = 0; j < n; ++j) {
            if (diag[j] == 0.0) continue;
            double s = 0.0;
            for (std::size_t i = j; i < m; ++i) s += qr(i, j) * y[i];
            s *= 2.0;
            for (std::size_t i = j; i < m; ++i) y[i] -= s * qr(i, j);
        }
    }

    /// Solve R z = b[0..n).
    std::vector<double> solve_r(const std::vector<double>& b) const {
        const std::size_t n = cols();
        std::vector<double> z(n, 0.0);
        for (std::size_t jj = n; jj-- > 0;) {
            double s = b[jj];
            for (std::size_t k = jj + 1; k < n; ++k) s -= qr(jj, k) * z[k];
            z[jj] = s / diag[jj];
        }
        return z;
    }

    /// Solve Rᵀ z = b.
    std::vector<double> solve_rt(const std::vector<double>& b) const {
        const std::size_t n = cols();
        std::vector<double> z(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            double s = b[j];
            for (std::size_t k = 0; k < j; ++k) s -= qr(k, j) * z[k];
            z[j] = s / diag[j];
        }
        return z;
    }
};

double norm2(const std::vector<double>& v) {
    double n = 0.0;
    for (double x : v) n = std::hypot(n, x);
    return n;
}

/// Deterministic, generically non-orthogonal start vector for power iteration.
std::vector<double> power_start(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.25 * std::sin(double(i) + 1.0);
    double nn = norm2(v);
    for (double& x : v) x /= nn;
    return v;
}

/// Largest eigenvalue of the Gram matrix aᵀa by power iteration.
double gram_lambda_max(const Matrix& a) {
    const std::size_t n = a.cols();
    // form aᵀa once; matrices here are small
    Matrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.rows(); ++k) acc += a(k, i) * a(k, j);
            s(i, j) = acc;
        }
    std::vector<double> v = power_start(n), w(n);
    double lambda = 0.0;
    for (int it = 0; it < kPowerIterCap; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += s(i, j) * v[j];
            w[i] = acc;
        }
        double rayleigh = 0.0;
        for (std::size_t i = 0; i < n; ++i) rayleigh += v[i] * w[i];
        double wn = norm2(w);
        if (wn == 0.0) return 0.0;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
        if (std::abs(rayleigh - lambda) <= kPowerIterTol * std::max(std::abs(rayleigh), 1e-300)) {
            lambda = rayleigh;
            break;
        }
        lambda = rayleigh;
    }
    return std::max(lambda, 0.0);
}

} // namespace

double Vector::norm() const { return norm2(entries_); }

bool Vector::all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](double x) { return std::isfinite(x); });
}

Vector operator+(const Vector& a, const Vector& b) {
    require_same_dim(a, b);
    Vector r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector operator-(const Vector& a, const Vector& b) {
    require_same_dim(a, b);
    Vector r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vector operator*(double s, const Vector& v) {
    Vector r(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) r[i] = s * v[i];
    return r;
}

double dot(const Vector& a, const Vector& b) {
    require_same_dim(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows.begin() == rows.end() ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw DimensionMismatch("ragged initializer rows");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](double x) { return std::isfinite(x); });
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
    return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shapes");
    Matrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols() != v.dim()) throw DimensionMismatch("matrix-vector shapes");
    Vector r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

Vector transpose_times(const Matrix& a, const Vector& v) {
    if (a.rows() != v.dim()) throw DimensionMismatch("matrix-vector shapes");
    Vector r(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, j) * v[i];
        r[j] = s;
    }
    return r;
}

double rank_tolerance() { return kRankTol; }

double operator_norm(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    // power iteration wants rows >= cols; the norm is transpose-invariant
    if (a.rows() < a.cols()) return std::sqrt(gram_lambda_max(a.transpose()));
    return std::sqrt(gram_lambda_max(a));
}

double smallest_singular_value(const Matrix& a) {
    require_overdetermined(a);
    HouseholderQr qr(a);
    if (qr.exactly_singular()) return 0.0;
    const std::size_t n = a.cols();
    // inverse power iteration: w <- (aᵀa)⁻¹ w via RᵀR solves
    std::vector<double> v = power_start(n);
    double mu = 0.0; // converges to 1/σ_min²
    for (int it = 0; it < kPowerIterCap; ++it) {
        std::vector<double> u = qr.solve_rt(v);
        std::vector<double> w = qr.solve_r(u);
        double rayleigh = 0.0;
        for (std::size_t i = 0; i < n; ++i) rayleigh += v[i] * w[i];
        if (!std::isfinite(rayleigh)) return 0.0;
        double wn = norm2(w);
        if (wn == 0.0 || !std::isfinite(wn)) return 0.0;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
        if (std::abs(rayleigh - mu) <= kPowerIterTol * std::max(std::abs(rayleigh), 1e-300)) {
            mu = rayleigh;
            break;
        }
        mu = rayleigh;
    }
    if (mu <= 0.0 || !std::isfinite(mu)) return 0.0;
    return 1.0 / std::sqrt(mu);
}

double pseudoinverse_norm(const Matrix& a) {
    require_overdetermined(a);
    double smax = operator_norm(a);
    double smin = smallest_singular_value(a);
    if (smin <= kRankTol * smax)
        throw RankDeficient("matrix is rank deficient at the working tolerance");
    return 1.0 / smin;
}

Vector pseudoinverse_apply(const Matrix& a, const Vector& y) {
    require_overdetermined(a);
    if (a.rows() != y.dim())
        throw DimensionMismatch("right-hand side does not match matrix rows");
    double smax = operator_norm(a);
    double smin = smallest_singular_value(a);
    if (smin <= kRankTol * smax)
        throw RankDeficient("matrix is rank deficient at the working tolerance");
    HouseholderQr qr(a);
    std::vector<double> rhs = y.entries();
    qr.apply_qt(rhs);
    std::vector<double> z = qr.solve_r(rhs);
    Vector out(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) out[i] = z[i];
    return out;
}

Matrix pseudoinverse(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t j = 0; j < a.rows(); ++j) {
        Vector e(a.rows());
        e[j] = 1.0;
        Vector col = pseudoinverse_apply(a, e);
        for (std::size_t i = 0; i < a.cols(); ++i) out(i, j) = col[i];
    }
    return out;
}

PerturbationCheck perturbation_bound_check(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    PerturbationCheck res;
    double a_pinv = pseudoinverse_norm(a);
    res.contraction = a_pinv * operator_norm(a - b);
    if (res.contraction >= 1.0) {
        res.hypothesis_met = false;
        return res;
    }
    res.hypothesis_met = true;
    res.rhs = a_pinv / (1.0 - res.contraction);
    try {
        res.lhs = pseudoinverse_norm(b);
    } catch (const RankDeficient&) {
        // the bound asserts b is injective; a deficient b is a failure
        res.lhs = std::numeric_limits<double>::infinity();
        res.passed = false;
        return res;
    }
    res.passed = res.lhs <= res.rhs * (1.0 + 1e-10) + 1e-14;
    return res;
}

} // namespace gncert
