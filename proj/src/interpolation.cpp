#include "plk/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "plk/errors.hpp"

namespace plk {

namespace {

constexpr double kPivotTol = 1e-12;

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void check_unit_interval(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("evaluation point " + fmt_g(x) + " is outside [0, 1]");
    }
}

}  // namespace

Matrix gram_matrix(const KernelModel& model, const NodeSet& nodes) {
    const std::size_t n = nodes.size();
    Matrix k(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = model.evaluate(nodes[i], nodes[j]);
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

KernelInterpolant::KernelInterpolant(KernelModel model, NodeSet nodes,
                                     std::vector<double> coefficients)
    : model_(std::move(model)), nodes_(std::move(nodes)), coefficients_(std::move(coefficients)) {
    if (coefficients_.size() != nodes_.size()) {
        throw std::invalid_argument("coefficient count must match the node count");
    }
}

double KernelInterpolant::evaluate(double x) const {
    check_unit_interval(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        acc += coefficients_[i] * model_.evaluate(nodes_[i], x);
    }
    return acc;
}

double KernelInterpolant::derivative(double x) const {
    check_unit_interval(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const SideSlopes s = model_.branch_slopes(nodes_[i]);
        const bool left_branch = x < nodes_[i] || (x == 1.0 && nodes_[i] == 1.0);
        acc += coefficients_[i] * (left_branch ? s.left : s.right);
    }
    return acc;
}

KernelInterpolant solve_coefficients(const KernelModel& model, const NodeSet& nodes,
                                     std::span<const double> values, SolveMode mode) {
    if (values.size() != nodes.size()) {
        throw std::invalid_argument("value count must match the node count");
    }
    const Matrix k = gram_matrix(model, nodes);

    std::vector<double> coeff;
    if (mode == SolveMode::project) {
        coeff = solve_projected(k, values, kPivotTol);
    } else {
        PivotFailure failure;
        auto solver = SymmetricSolver::factor(k, kPivotTol, &failure);
        if (!solver) {
            const double node_value = nodes[failure.index];
            const ForcedZeros fz = model.forced_zeros();
            const bool forced = (fz.left && node_value == 0.0) || (fz.right && node_value == 1.0);
            const bool conflict = forced && values[failure.index] != 0.0;
            std::string msg = "singular Gram matrix: pivot " + fmt_g(failure.pivot) + " at node index " +
                              std::to_string(failure.index) + " (x = " + fmt_g(node_value) + ")";
            if (conflict) {
                msg += "; every function in this kernel's space vanishes there but the data value is " +
                       fmt_g(values[failure.index]);
            }
            throw SingularGramError(msg, failure.index, node_value, conflict);
        }
        coeff = solver->solve(values);

        const std::vector<double> kc = k.multiply(coeff);
        double resid = 0.0, fmax = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            resid = std::max(resid, std::fabs(kc[i] - values[i]));
            fmax = std::max(fmax, std::fabs(values[i]));
        }
        if (resid > 1e-9 * (1.0 + fmax)) {
            throw std::runtime_error("Gram solve residual " + fmt_g(resid) + " exceeds tolerance");
        }
    }
    return KernelInterpolant(model, nodes, std::move(coeff));
}

PiecewiseLinearInterpolant::PiecewiseLinearInterpolant(NodeSet nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
    if (!nodes_.has_both_endpoints()) {
        throw std::invalid_argument("piecewise linear interpolant requires nodes at both 0 and 1");
    }
    if (values_.size() != nodes_.size()) {
        throw std::invalid_argument("value count must match the node count");
    }
}

std::size_t PiecewiseLinearInterpolant::panel_index(double x) const {
    const auto vals = nodes_.values();
    auto it = std::upper_bound(vals.begin(), vals.end(), x);
    std::size_t i = static_cast<std::size_t>(it - vals.begin());
    if (i == 0) i = 1;
    if (i >= vals.size()) i = vals.size() - 1;
    return i;
}

double PiecewiseLinearInterpolant::evaluate(double x) const {
    check_unit_interval(x);
    const std::size_t i = panel_index(x);
    if (x == nodes_[i - 1]) return values_[i - 1];
    if (x == nodes_[i]) return values_[i];
    const double gap = nodes_[i] - nodes_[i - 1];
    return values_[i - 1] + (values_[i] - values_[i - 1]) / gap * (x - nodes_[i - 1]);
}

double PiecewiseLinearInterpolant::derivative(double x) const {
    check_unit_interval(x);
    std::size_t i = panel_index(x);
    if (x == 1.0) i = nodes_.size() - 1;  // left-sided at the right endpoint
    return (values_[i] - values_[i - 1]) / (nodes_[i] - nodes_[i - 1]);
}

PiecewiseLinearInterpolant piecewise_linear(const NodeSet& nodes, std::span<const double> values) {
    return PiecewiseLinearInterpolant(nodes, std::vector<double>(values.begin(), values.end()));
}

double equivalence_gap(const KernelModel& model, const NodeSet& nodes,
                       std::span<const double> values, int probes) {
    if (!model.forced_zeros().empty()) {
        throw std::invalid_argument("equivalence requires a kernel without forced boundary zeros");
    }
    if (!nodes.has_both_endpoints()) {
        throw std::invalid_argument("equivalence requires nodes at both 0 and 1");
    }
    if (probes < 2) throw std::invalid_argument("equivalence needs at least two probe points");

    const KernelInterpolant pn = solve_coefficients(model, nodes, values);
    const PiecewiseLinearInterpolant ln = piecewise_linear(nodes, values);

    double gap = 0.0;
    for (int j = 0; j < probes; ++j) {
        const double t = static_cast<double>(j) / (probes - 1);
        gap = std::max(gap, std::fabs(pn.evaluate(t) - ln.evaluate(t)));
    }
    return gap;
}

}  // namespace plk
