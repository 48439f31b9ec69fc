#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "plk/functions.hpp"
#include "plk/kernel.hpp"

namespace plk {

TestFunction affine(double a, double b);  // a + b x
TestFunction quadratic();                 // x^2
TestFunction sin_pi();                    // sin(pi x)
TestFunction power_fn(double gamma);      // x^gamma, gamma in (0, 2)
TestFunction abs_power(double gamma);     // |x - 1/2|^gamma, gamma in (0, 1)
TestFunction hat(double breakpoint);      // piecewise linear bump, peak value 1 at the breakpoint

/// Quadratic x^2 + b x + c with b, c solved so that both Robin boundary
/// conditions beta u'(0) = a0 u(0) + a2 u(1), beta u'(1) = -a1 u(1) - a2 u(0)
/// hold exactly.
TestFunction bc_quadratic(const KernelParams& params);

/// The kernel translate K(center, .) registered as a test function.
TestFunction kernel_translate(const KernelModel& model, double center);

/// Breakpoint of the default bank's hat entry: irrational, chosen so the kink
/// sits at a nearly constant relative position inside its panel under dyadic
/// refinement (multiples of 1/sqrt(2) drift arbitrarily close to grid nodes,
/// which makes refinement studies erratic).
double default_hat_breakpoint();

/// The default registry of test functions.
std::vector<TestFunction> builtin_bank();

/// Resolves ids like "quadratic", "sin_pi", "pow:0.75", "abs_pow:0.6",
/// "affine:1,2", "hat:0.7", "bc_quadratic:1,0,0,1".
TestFunction find_function(std::string_view id);

/// Numerical Sobolev (order 1 or 2) or Holder seminorm. Sobolev seminorms use
/// composite Gauss-Legendre split at the declared singular points (dense
/// sampling for p = inf); Holder seminorms return stated metadata when
/// available, otherwise a sampled lower estimate of the sup quotient.
/// Fractional Sobolev orders are metadata-only and rejected.
double seminorm(const TestFunction& f, const SmoothnessSpace& space, int quad_order = 16);

/// True when stored memberships imply f lies in W^1_p (memberships at higher
/// integrability imply lower ones on [0, 1]).
bool member_of_w1p(const TestFunction& f, double p);

/// Largest Sobolev order recorded for integrability p.
std::optional<double> sobolev_order(const TestFunction& f, double p);

/// Stored seminorm for an exactly matching Sobolev membership, if any.
std::optional<double> stored_sobolev_seminorm(const TestFunction& f, double p, double sigma);

}  // namespace plk
