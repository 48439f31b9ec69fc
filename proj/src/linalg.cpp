#include "plk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace plk {

std::vector<double> Matrix::multiply(std::span<const double> x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) acc += data_[i * cols_ + j] * x[j];
        y[i] = acc;
    }
    return y;
}

double Matrix::max_diagonal() const {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) m = std::max(m, (*this)(i, i));
    return m;
}

std::optional<SymmetricSolver> SymmetricSolver::factor(const Matrix& a, double rel_pivot_tol,
                                                       PivotFailure* failure) {
    if (a.rows() != a.cols()) throw std::invalid_argument("factorization requires a square matrix");
    const std::size_t n = a.rows();

    SymmetricSolver s;
    s.original_ = a;
    s.factors_ = a;
    s.diag_.assign(n, 0.0);
    s.perm_.resize(n);
    std::iota(s.perm_.begin(), s.perm_.end(), std::size_t{0});

    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i));
    s.max_diagonal_ = max_diag;
    s.min_pivot_ = std::numeric_limits<double>::infinity();

    Matrix& w = s.factors_;
    const double threshold = rel_pivot_tol * max_diag;

    auto fail = [&](std::size_t k, double pivot) {
        if (failure) *failure = {s.perm_[k], pivot, max_diag};
        return std::nullopt;
    };

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t best = k;
        for (std::size_t j = k + 1; j < n; ++j) {
            if (w(j, j) > w(best, best)) best = j;
        }
        if (best != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w(k, j), w(best, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(w(i, k), w(i, best));
            std::swap(s.perm_[k], s.perm_[best]);
        }
        const double d = w(k, k);
        if (!(max_diag > 0.0) || d < threshold || !(d > 0.0)) return fail(k, d);
        s.min_pivot_ = std::min(s.min_pivot_, d);
        s.diag_[k] = d;
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = w(i, k) / d;
            for (std::size_t j = k + 1; j < n; ++j) w(i, j) -= l * w(k, j);
            w(i, k) = l;
        }
    }
    return s;
}

std::vector<double> SymmetricSolver::solve_factored(std::span<const double> rhs) const {
    const std::size_t n = diag_.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = rhs[perm_[i]];
        for (std::size_t k = 0; k < i; ++k) acc -= factors_(i, k) * y[k];
        y[i] = acc;
    }
    for (std::size_t i = 0; i < n; ++i) y[i] /= diag_[i];
    std::vector<double> xp(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double acc = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) acc -= factors_(k, ii) * xp[k];
        xp[ii] = acc;
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = xp[i];
    return x;
}

std::vector<double> SymmetricSolver::solve(std::span<const double> rhs) const {
    const std::size_t n = diag_.size();
    if (rhs.size() != n) throw std::invalid_argument("right-hand side size mismatch");
    std::vector<double> x = solve_factored(rhs);
    // One refinement pass against the unfactored matrix.
    const std::vector<double> ax = original_.multiply(x);
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ax[i];
    const std::vector<double> dx = solve_factored(r);
    for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
    return x;
}

SymmetricEigen symmetric_eigen(Matrix a, int max_sweeps) {
    if (a.rows() != a.cols()) throw std::invalid_argument("eigendecomposition requires a square matrix");
    const std::size_t n = a.rows();
    Matrix v(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) norm = std::max(norm, std::fabs(a(i, j)));
    if (norm == 0.0) norm = 1.0;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off = std::max(off, std::fabs(a(i, j)));
        if (off <= 1e-15 * norm) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    SymmetricEigen eig;
    eig.values.resize(n);
    eig.vectors = Matrix(n, n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        eig.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) eig.vectors(i, j) = v(i, order[j]);
    }
    return eig;
}

std::vector<double> solve_projected(const Matrix& a, std::span<const double> rhs,
                                    double rel_eigen_tol) {
    const std::size_t n = a.rows();
    if (rhs.size() != n) throw std::invalid_argument("right-hand side size mismatch");
    const SymmetricEigen eig = symmetric_eigen(a);
    double lam_max = 0.0;
    for (double lam : eig.values) lam_max = std::max(lam_max, lam);
    const double cutoff = rel_eigen_tol * lam_max;
    std::vector<double> x(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double lam = eig.values[j];
        if (!(lam > cutoff)) continue;
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += eig.vectors(i, j) * rhs[i];
        const double scale = proj / lam;
        for (std::size_t i = 0; i < n; ++i) x[i] += scale * eig.vectors(i, j);
    }
    return x;
}

}  // namespace plk
