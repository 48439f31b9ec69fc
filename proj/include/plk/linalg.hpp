#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace plk {

/// Minimal dense row-major matrix; everything here is desk-scale.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<double> multiply(std::span<const double> x) const;
    double max_diagonal() const;

private:
    std::size_t rows_{0};
    std::size_t cols_{0};
    std::vector<double> data_;
};

struct PivotFailure {
    std::size_t index{0};  // original row/column of the failing pivot
    double pivot{0.0};
    double max_diagonal{0.0};
};

/// LDL^T factorization with diagonal pivoting for symmetric positive
/// semidefinite systems. Solves apply one step of iterative refinement
/// against the original matrix.
class SymmetricSolver {
public:
    /// Returns std::nullopt and fills `failure` when a pivot falls below
    /// rel_pivot_tol * max(diagonal).
    static std::optional<SymmetricSolver> factor(const Matrix& a, double rel_pivot_tol,
                                                 PivotFailure* failure = nullptr);

    std::vector<double> solve(std::span<const double> rhs) const;
    double min_pivot() const { return min_pivot_; }
    double max_diagonal() const { return max_diagonal_; }

private:
    SymmetricSolver() = default;
    std::vector<double> solve_factored(std::span<const double> rhs) const;

    Matrix original_;
    Matrix factors_;  // unit lower factors below the diagonal, pivot rows above
    std::vector<double> diag_;
    std::vector<std::size_t> perm_;  // perm_[k] = original index of the k-th pivot
    double min_pivot_{0.0};
    double max_diagonal_{0.0};
};

struct SymmetricEigen {
    std::vector<double> values;  // ascending
    Matrix vectors;              // columns match values
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
SymmetricEigen symmetric_eigen(Matrix a, int max_sweeps = 100);

/// Least-squares solve through the eigendecomposition, discarding eigenvalues
/// below rel_eigen_tol * max eigenvalue.
std::vector<double> solve_projected(const Matrix& a, std::span<const double> rhs,
                                    double rel_eigen_tol);

}  // namespace plk
