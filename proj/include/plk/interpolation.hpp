#pragma once

#include <span>
#include <vector>

#include "plk/kernel.hpp"
#include "plk/linalg.hpp"
#include "plk/nodes.hpp"

namespace plk {

/// Matrix of kernel evaluations at node pairs; exactly symmetric.
Matrix gram_matrix(const KernelModel& model, const NodeSet& nodes);

enum class SolveMode {
    strict,   // a singular Gram matrix raises SingularGramError
    project,  // least-squares via eigendecomposition, discarding eigenvalues below 1e-12 * max
};

/// Span-of-translates interpolant sum_i c_i K(x_i, .).
class KernelInterpolant {
public:
    KernelInterpolant(KernelModel model, NodeSet nodes, std::vector<double> coefficients);

    double evaluate(double x) const;
    double operator()(double x) const { return evaluate(x); }
    /// One-sided derivative: right-sided, except left-sided at x = 1.
    double derivative(double x) const;

    const KernelModel& model() const { return model_; }
    const NodeSet& nodes() const { return nodes_; }
    std::span<const double> coefficients() const { return coefficients_; }

private:
    KernelModel model_;
    NodeSet nodes_;
    std::vector<double> coefficients_;
};

/// Solves the Gram system K c = values with a diagonally pivoted symmetric
/// factorization (plus one refinement step). A pivot below 1e-12 * max
/// diagonal raises SingularGramError carrying the offending node index and a
/// hint when that node is a forced zero with nonzero data. SolveMode::project
/// instead discards the null directions, for the semidefinite kernels.
KernelInterpolant solve_coefficients(const KernelModel& model, const NodeSet& nodes,
                                     std::span<const double> values,
                                     SolveMode mode = SolveMode::strict);

/// Chord interpolant between consecutive nodes; nodes must include 0 and 1.
class PiecewiseLinearInterpolant {
public:
    PiecewiseLinearInterpolant(NodeSet nodes, std::vector<double> values);

    /// Node hits return the stored values exactly.
    double evaluate(double x) const;
    double operator()(double x) const { return evaluate(x); }
    /// Chord slope of the containing panel (right-sided at nodes, left-sided at 1).
    double derivative(double x) const;

    const NodeSet& nodes() const { return nodes_; }
    std::span<const double> values() const { return values_; }

private:
    std::size_t panel_index(double x) const;

    NodeSet nodes_;
    std::vector<double> values_;
};

PiecewiseLinearInterpolant piecewise_linear(const NodeSet& nodes, std::span<const double> values);

/// max |P_n f - L_n f| over `probes` equispaced points in [0, 1]; zero in
/// exact arithmetic for every 2-piecewise-linear positive-semidefinite kernel
/// whose space has no forced boundary zeros.
double equivalence_gap(const KernelModel& model, const NodeSet& nodes,
                       std::span<const double> values, int probes = 1000);

}  // namespace plk
