#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "gncert/errors.hpp"

namespace gncert {

/// Dense real vector with value semantics.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t dim) : entries_(dim, 0.0) {}
    Vector(std::initializer_list<double> values) : entries_(values) {}

    static Vector zeros(std::size_t dim) { return Vector(dim); }

    std::size_t dim() const { return entries_.size(); }
    double& operator[](std::size_t i) { return entries_[i]; }
    double operator[](std::size_t i) const { return entries_[i]; }

    double norm() const;
    bool all_finite() const;

    const std::vector<double>& entries() const { return entries_; }

private:
    std::vector<double> entries_;
};

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& v);
double dot(const Vector& a, const Vector& b);

/// Dense real matrix, row-major storage.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}
    /// Construction from rows, e.g. Matrix{{2, 0}, {0, 1}, {1, 1}}.
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    Matrix transpose() const;
    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& v);

/// aᵀ v without forming the transpose.
Vector transpose_times(const Matrix& a, const Vector& v);

/// Operator 2-norm (largest singular value), by power iteration on aᵀa.
double operator_norm(const Matrix& a);

/// Smallest singular value, by inverse power iteration through the
/// triangular factor of a Householder factorization. Returns 0 for an
/// exactly singular matrix; requires rows >= cols.
double smallest_singular_value(const Matrix& a);

/// ‖a†‖ = 1 / σ_min(a). Throws RankDeficient when σ_min ≤ tol · σ_max.
double pseudoinverse_norm(const Matrix& a);

/// Least-squares solution a† y, the unique minimizer of ‖a z − y‖ for a
/// full-column-rank a, computed through Householder orthogonalization.
Vector pseudoinverse_apply(const Matrix& a, const Vector& y);

/// Dense a† assembled column by column; mainly for property checks.
Matrix pseudoinverse(const Matrix& a);

/// Relative rank tolerance: σ_min ≤ rank_tolerance() · σ_max is deficient.
double rank_tolerance();

/// Outcome of the pseudoinverse perturbation bound test for a pair (a, b):
/// when ‖a†‖‖a−b‖ < 1, b must be injective with
/// ‖b†‖ ≤ ‖a†‖ / (1 − ‖a†‖‖a−b‖).
struct PerturbationCheck {
    bool hypothesis_met = false; ///< ‖a†‖‖a−b‖ < 1
    bool passed = false;         ///< lhs ≤ rhs (meaningful only when hypothesis_met)
    double contraction = 0.0;    ///< ‖a†‖‖a−b‖
    double lhs = 0.0;            ///< ‖b†‖
    double rhs = 0.0;            ///< ‖a†‖ / (1 − contraction)
};

PerturbationCheck perturbation_bound_check(const Matrix& a, const Matrix& b);

} // namespace gncert
