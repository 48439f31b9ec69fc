#include "plk/gauss_legendre.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "plk/summation.hpp"

namespace plk {

namespace {

GaussLegendreRule compute_rule(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 1; i <= half; ++i) {
        // Newton iteration on the Legendre three-term recurrence.
        double z = std::cos(M_PI * (i - 0.25) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) < 1e-15) break;
        }
        rule.nodes[i - 1] = -z;
        rule.nodes[n - i] = z;
        rule.weights[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - i] = rule.weights[i - 1];
    }
    return rule;
}

double panel_integral(const std::function<double(double)>& f, double a, double b,
                      const GaussLegendreRule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    CompensatedSum acc;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        acc.add(rule.weights[i] * f(mid + half * rule.nodes[i]));
    }
    return acc.value() * half;
}

// Integral over [a, b] with geometric refinement toward one singular endpoint.
// Dyadic subpanels approach the endpoint until they collapse in double
// precision; the remaining tail is a near-geometric series and is summed by
// extrapolating the ratio of the last two subpanel integrals.
double graded_integral(const std::function<double(double)>& f, double a, double b,
                       bool singular_at_left, const GaussLegendreRule& rule) {
    const double width = b - a;
    const double anchor = singular_at_left ? a : b;
    const double sign = singular_at_left ? 1.0 : -1.0;

    CompensatedSum acc;
    double prev_panel = 0.0;
    double last_panel = 0.0;
    int panels = 0;
    double outer = singular_at_left ? b : a;
    for (int k = 0; k < 48; ++k) {
        const double inner = anchor + sign * std::ldexp(width, -(k + 1));
        if (inner == anchor || inner == outer) break;
        const double lo = singular_at_left ? inner : outer;
        const double hi = singular_at_left ? outer : inner;
        const double piece = panel_integral(f, lo, hi, rule);
        acc.add(piece);
        prev_panel = last_panel;
        last_panel = piece;
        ++panels;
        outer = inner;
        if (std::fabs(piece) < 1e-18 * (std::fabs(acc.value()) + 1e-300)) break;
    }

    // Tail toward the singularity. For f ~ c |t - anchor|^p the subpanel
    // integrals form a geometric sequence with ratio 2^{-(1+p)}, so the
    // extrapolated sum is exact in the limit.
    if (panels >= 2 && last_panel != 0.0 && prev_panel != 0.0) {
        const double ratio = last_panel / prev_panel;
        if (ratio > 0.0 && ratio < 0.95) {
            acc.add(last_panel * ratio / (1.0 - ratio));
            return acc.value();
        }
    }
    // No stable geometric behaviour: integrate the sliver directly (its
    // interior nodes avoid the endpoint).
    if (outer != anchor) {
        const double lo = singular_at_left ? anchor : outer;
        const double hi = singular_at_left ? outer : anchor;
        acc.add(panel_integral(f, lo, hi, rule));
    }
    return acc.value();
}

bool listed(const std::vector<double>& points, double x) {
    for (double p : points) {
        if (std::fabs(p - x) <= 1e-15 * std::max(1.0, std::fabs(x))) return true;
    }
    return false;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int points) {
    if (points < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one point");
    static std::mutex mutex;
    static std::map<int, GaussLegendreRule> cache;
    std::scoped_lock lock(mutex);
    auto it = cache.find(points);
    if (it == cache.end()) it = cache.emplace(points, compute_rule(points)).first;
    return it->second;
}

double gauss_integrate(const std::function<double(double)>& f, double a, double b, int points) {
    return panel_integral(f, a, b, gauss_legendre(points));
}

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        std::vector<double> breakpoints, std::vector<double> singular,
                        int points) {
    if (!(b > a)) throw std::invalid_argument("integration interval must have positive length");
    const GaussLegendreRule& rule = gauss_legendre(points);

    std::vector<double> cuts;
    cuts.push_back(a);
    cuts.push_back(b);
    for (double x : breakpoints) {
        if (x > a && x < b) cuts.push_back(x);
    }
    for (double x : singular) {
        if (x > a && x < b) cuts.push_back(x);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double u, double v) { return std::fabs(u - v) <= 1e-15; }),
               cuts.end());

    CompensatedSum total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        if (!(hi > lo)) continue;
        const bool sing_lo = listed(singular, lo);
        const bool sing_hi = listed(singular, hi);
        if (sing_lo && sing_hi) {
            const double mid = 0.5 * (lo + hi);
            total.add(graded_integral(f, lo, mid, true, rule));
            total.add(graded_integral(f, mid, hi, false, rule));
        } else if (sing_lo) {
            total.add(graded_integral(f, lo, hi, true, rule));
        } else if (sing_hi) {
            total.add(graded_integral(f, lo, hi, false, rule));
        } else {
            total.add(panel_integral(f, lo, hi, rule));
        }
    }
    return total.value();
}

}  // namespace plk
