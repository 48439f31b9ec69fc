#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plk/functions.hpp"
#include "plk/kernel.hpp"
#include "plk/nodes.hpp"

namespace plk {

struct QuadratureRule {
    NodeSet nodes;
    std::vector<double> weights;
    std::string label;

    double apply(const std::function<double(double)>& f) const;
};

/// Weights obtained by integrating the piecewise linear interpolant:
/// w_0 = d_1/2, w_i = (d_i + d_{i+1})/2, w_n = d_n/2. Nodes must include 0 and 1.
QuadratureRule trapezoid_rule(const NodeSet& nodes);

/// Weights w solving K w = z, where z_i = int_0^1 K(x_i, y) dy is evaluated in
/// closed form (the translates are affine on each side of x_i, so the two-chord
/// trapezoid is exact). Coincides with the trapezoidal rule for these kernels
/// when the endpoints are present.
QuadratureRule kernel_quadrature_weights(const KernelModel& model, const NodeSet& nodes);

/// p / (p - 1) with the conventions 1 -> inf and inf -> 1.
double holder_conjugate(double p);

/// Euler beta function; exact rational evaluation for integer arguments <= 20,
/// log-gamma otherwise.
double beta_function(double a, double b);

struct BoundReport {
    std::string bound_id;
    std::optional<double> constant;  // absent when only the rate is known
    double rate_exponent{0.0};
    std::optional<double> rhs;
    std::optional<double> lhs;
    bool satisfied{false};

    /// Fills lhs and the satisfied flag (lhs <= rhs * (1 + 1e-12)).
    BoundReport& with_lhs(double value);
};

/// Right-hand side of the trapezoid error bounds on uniform nodes x_i = i/n:
///   cu_a            Holder(0, alpha):  n^{-alpha} / ((1 + alpha) 2^alpha)
///   cu_b            W^1_p:             n^{-1} / (2 (p' + 1)^{1/p'})
///   cu_c_rate_only  Holder(1, alpha):  rate 1 + alpha, no known constant
///   cu_d            W^2_p:             n^{-2} B(p' + 1, p' + 1)^{1/p'} / 2
/// For cu_a and cu_b the seminorm must be the infimum over linear shifts
/// (see inf_shifted_seminorm).
BoundReport trapezoid_bound(std::string_view bound_id, int n, const SmoothnessSpace& space,
                            double seminorm_value);

/// inf over r of the seminorm of x -> f(x) - r x, in W^1_p or Holder(0, alpha).
/// Closed form for p = 2 (r* is the mean of f'); golden-section minimization
/// (200 iterations, bracket from sampled f' bounds) otherwise.
double inf_shifted_seminorm(const TestFunction& f, const SmoothnessSpace& space, int quad_order = 16);

}  // namespace plk
