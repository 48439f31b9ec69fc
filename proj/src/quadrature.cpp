#include "plk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

#include "plk/errors.hpp"
#include "plk/gauss_legendre.hpp"
#include "plk/interpolation.hpp"
#include "plk/linalg.hpp"
#include "plk/summation.hpp"

namespace plk {

namespace {

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

double exact_integer_beta(int a, int b) {
    // B(a, b) = 1 / ((a + b - 1) * C(a + b - 2, a - 1)); the binomial fits in
    // 64 bits for arguments up to 20.
    const int n = a + b - 2;
    const int k = std::min(a - 1, b - 1);
    std::uint64_t binom = 1;
    for (int i = 1; i <= k; ++i) {
        binom = binom * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return 1.0 / (static_cast<double>(a + b - 1) * static_cast<double>(binom));
}

double golden_minimize(const std::function<double(double)>& g, double lo, double hi,
                       double tol, int max_iter) {
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = g(c);
    double fd = g(d);
    for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = g(d);
        }
    }
    return g(0.5 * (a + b));
}

/// Finite bounds of f' from dense sampling (singular values are skipped).
std::pair<double, double> sampled_derivative_range(const TestFunction& f) {
    double lo = kInf, hi = -kInf;
    auto visit = [&](double x) {
        const double v = f.d1(x);
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    constexpr int kSamples = 2000;
    for (int i = 0; i <= kSamples; ++i) visit(static_cast<double>(i) / kSamples);
    for (double s : f.singular_points) {
        for (int k = 0; k <= 200; ++k) {
            const double x = s - 1e-3 + k * 1e-5;
            if (x >= 0.0 && x <= 1.0) visit(x);
        }
    }
    if (!(lo <= hi)) return {-1.0, 1.0};
    return {lo, hi};
}

}  // namespace

double QuadratureRule::apply(const std::function<double(double)>& f) const {
    CompensatedSum acc;
    for (std::size_t i = 0; i < weights.size(); ++i) acc.add(weights[i] * f(nodes[i]));
    return acc.value();
}

QuadratureRule trapezoid_rule(const NodeSet& nodes) {
    if (!nodes.has_both_endpoints()) {
        throw std::invalid_argument("trapezoid rule requires nodes at both 0 and 1");
    }
    const std::size_t n = nodes.size();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        const double gap = nodes[i] - nodes[i - 1];
        w[i - 1] += 0.5 * gap;
        w[i] += 0.5 * gap;
    }
    return {nodes, std::move(w), "trapezoid"};
}

QuadratureRule kernel_quadrature_weights(const KernelModel& model, const NodeSet& nodes) {
    const Matrix k = gram_matrix(model, nodes);
    const std::size_t n = nodes.size();
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        // The translate is affine on [0, x_i] and [x_i, 1]; chord integration is exact.
        const double x = nodes[i];
        const double at0 = model.evaluate(x, 0.0);
        const double atx = model.evaluate(x, x);
        const double at1 = model.evaluate(x, 1.0);
        z[i] = x * (at0 + atx) / 2.0 + (1.0 - x) * (atx + at1) / 2.0;
    }
    PivotFailure failure;
    auto solver = SymmetricSolver::factor(k, 1e-12, &failure);
    if (!solver) {
        throw SingularGramError("singular Gram matrix in kernel quadrature: pivot " +
                                    fmt_g(failure.pivot) + " at node index " +
                                    std::to_string(failure.index),
                                failure.index, nodes[failure.index], false);
    }
    return {nodes, solver->solve(z), "kernel"};
}

double holder_conjugate(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("Holder conjugate requires p >= 1");
    if (p == 1.0) return kInf;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

double beta_function(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta function requires positive arguments");
    const double ra = std::round(a);
    const double rb = std::round(b);
    if (std::fabs(a - ra) < 1e-12 && std::fabs(b - rb) < 1e-12 && ra <= 20.0 && rb <= 20.0) {
        return exact_integer_beta(static_cast<int>(ra), static_cast<int>(rb));
    }
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

BoundReport& BoundReport::with_lhs(double value) {
    lhs = value;
    satisfied = rhs.has_value() && value <= *rhs * (1.0 + 1e-12);
    return *this;
}

BoundReport trapezoid_bound(std::string_view bound_id, int n, const SmoothnessSpace& space,
                            double seminorm_value) {
    if (n < 1) throw std::invalid_argument("bound requires n >= 1");
    BoundReport report;
    report.bound_id = std::string(bound_id);

    const bool holder0 = space.kind == SmoothnessSpace::Kind::holder && space.s == 0;
    const bool holder1 = space.kind == SmoothnessSpace::Kind::holder && space.s == 1;
    const bool sobolev1 = space.kind == SmoothnessSpace::Kind::sobolev && std::fabs(space.sigma - 1.0) < 1e-12;
    const bool sobolev2 = space.kind == SmoothnessSpace::Kind::sobolev && std::fabs(space.sigma - 2.0) < 1e-12;

    if (bound_id == "cu_a") {
        if (!holder0) throw std::invalid_argument("cu_a applies to Holder(0, alpha) data");
        report.constant = 1.0 / ((1.0 + space.alpha) * std::pow(2.0, space.alpha));
        report.rate_exponent = space.alpha;
    } else if (bound_id == "cu_b") {
        if (!sobolev1) throw std::invalid_argument("cu_b applies to W^1_p data");
        const double pc = holder_conjugate(space.p);
        const double root = std::isinf(pc) ? 1.0 : std::pow(pc + 1.0, 1.0 / pc);
        report.constant = 1.0 / (2.0 * root);
        report.rate_exponent = 1.0;
    } else if (bound_id == "cu_c_rate_only") {
        if (!holder1) throw std::invalid_argument("cu_c_rate_only applies to Holder(1, alpha) data");
        report.rate_exponent = 1.0 + space.alpha;
        return report;  // no constant is known, so no rhs either
    } else if (bound_id == "cu_d") {
        if (!sobolev2) throw std::invalid_argument("cu_d applies to W^2_p data");
        // Peano kernel t(1-t)/2 on the unit panel, measured in L_{p'}:
        // B(p'+1, p'+1)^{1/p'} / 2, degenerating to its sup norm 1/8 at p = 1.
        const double pc = holder_conjugate(space.p);
        report.constant = std::isinf(pc)
                              ? 1.0 / 8.0
                              : std::pow(beta_function(pc + 1.0, pc + 1.0), 1.0 / pc) / 2.0;
        report.rate_exponent = 2.0;
    } else {
        throw std::invalid_argument("unknown bound id \"" + std::string(bound_id) + "\"");
    }

    report.rhs = *report.constant * std::pow(static_cast<double>(n), -report.rate_exponent) * seminorm_value;
    return report;
}

double inf_shifted_seminorm(const TestFunction& f, const SmoothnessSpace& space, int quad_order) {
    const bool holder0 = space.kind == SmoothnessSpace::Kind::holder && space.s == 0;
    const bool sobolev1 = space.kind == SmoothnessSpace::Kind::sobolev && std::fabs(space.sigma - 1.0) < 1e-12;
    if (!holder0 && !sobolev1) {
        throw std::invalid_argument("shifted infimum is defined for W^1_p and Holder(0, alpha) seminorms");
    }

    if (sobolev1 && !f.has_d1()) {
        throw MissingDerivativeError("shifted infimum requires f' for \"" + f.id + "\"");
    }

    std::function<double(double)> objective;
    if (sobolev1) {
        const double p = space.p;
        if (std::isinf(p)) {
            objective = [&f](double r) {
                double best = 0.0;
                constexpr int kSamples = 4000;
                for (int i = 0; i <= kSamples; ++i) {
                    const double v = f.d1(static_cast<double>(i) / kSamples) - r;
                    if (std::isfinite(v)) best = std::max(best, std::fabs(v));
                }
                return best;
            };
        } else {
            objective = [&f, p, quad_order](double r) {
                const double integral = integrate_panels(
                    [&f, r, p](double t) { return std::pow(std::fabs(f.d1(t) - r), p); }, 0.0, 1.0,
                    f.singular_points, f.singular_points, quad_order);
                return std::pow(integral, 1.0 / p);
            };
        }
        if (std::fabs(p - 2.0) < 1e-12) {
            // r* is the mean of f', i.e. f(1) - f(0).
            return objective(f.eval(1.0) - f.eval(0.0));
        }
    } else {
        const double alpha = space.alpha;
        if (alpha == 1.0 && f.has_d1()) {
            objective = [&f](double r) {
                double best = 0.0;
                constexpr int kSamples = 4000;
                for (int i = 0; i <= kSamples; ++i) {
                    const double v = f.d1(static_cast<double>(i) / kSamples) - r;
                    if (std::isfinite(v)) best = std::max(best, std::fabs(v));
                }
                return best;
            };
        } else {
            objective = [&f, alpha](double r) {
                double best = 0.0;
                constexpr int kGrid = 500;
                std::vector<double> values(kGrid);
                for (int i = 0; i < kGrid; ++i) {
                    const double x = static_cast<double>(i) / (kGrid - 1);
                    values[i] = f.eval(x) - r * x;
                }
                for (int i = 0; i < kGrid; ++i) {
                    for (int j = i + 1; j < kGrid; ++j) {
                        const double dx = static_cast<double>(j - i) / (kGrid - 1);
                        const double q = std::fabs(values[i] - values[j]) / std::pow(dx, alpha);
                        if (std::isfinite(q)) best = std::max(best, q);
                    }
                }
                return best;
            };
        }
    }

    double lo, hi;
    if (f.has_d1()) {
        const auto [mn, mx] = sampled_derivative_range(f);
        lo = mn - 1.0;
        hi = mx + 1.0;
    } else {
        const double scale = objective(0.0) + std::fabs(f.eval(1.0) - f.eval(0.0)) + 1.0;
        lo = -10.0 * scale;
        hi = 10.0 * scale;
    }
    return golden_minimize(objective, lo, hi, 1e-8, 200);
}

}  // namespace plk
