#pragma once

#include <functional>
#include <vector>

namespace plk {

struct GaussLegendreRule {
    std::vector<double> nodes;    // in (-1, 1), ascending
    std::vector<double> weights;  // sum to 2
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
const GaussLegendreRule& gauss_legendre(int points);

/// Integral of f over [a, b] with a single n-point rule.
double gauss_integrate(const std::function<double(double)>& f, double a, double b, int points);

/// Composite integral of f over [a, b]. Panels are split at `breakpoints`.
/// A panel whose endpoint appears in `singular` is refined geometrically
/// toward that endpoint and the unresolved tail is summed by geometric
/// extrapolation, so integrable endpoint singularities like |t - s|^a with
/// a > -1 are handled accurately. Endpoints themselves are never sampled.
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        std::vector<double> breakpoints, std::vector<double> singular,
                        int points = 16);

}  // namespace plk
