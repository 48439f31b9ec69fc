#include "plk/function_bank.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "plk/errors.hpp"
#include "plk/gauss_legendre.hpp"

namespace plk {

namespace {

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

Membership sobolev_member(double p, double sigma, double value, std::string note = {}) {
    return Membership{SmoothnessSpace::sobolev(p, sigma), value, false, std::move(note)};
}

Membership sobolev_sup_member(double p, double sigma, std::string note) {
    return Membership{SmoothnessSpace::sobolev(p, sigma), std::nullopt, true, std::move(note)};
}

Membership holder_member(int s, double alpha, double value) {
    return Membership{SmoothnessSpace::holder(s, alpha), value, false, {}};
}

/// Dense maximum of |g| over [0, 1] with extra samples near singular points.
double dense_max_abs(const std::function<double(double)>& g, const std::vector<double>& singular) {
    double best = 0.0;
    constexpr int kSamples = 10000;
    for (int i = 0; i <= kSamples; ++i) {
        const double v = std::fabs(g(static_cast<double>(i) / kSamples));
        if (std::isnan(v)) continue;
        best = std::max(best, v);
    }
    for (double s : singular) {
        for (int k = 0; k <= 200; ++k) {
            const double x = s - 1e-3 + k * 1e-5;
            if (x < 0.0 || x > 1.0) continue;
            const double v = std::fabs(g(x));
            if (std::isnan(v)) continue;
            best = std::max(best, v);
        }
    }
    return best;
}

/// Sampled sup of |g(x) - g(y)| / |x - y|^alpha over a 500 x 500 grid.
/// A lower estimate of the Holder seminorm.
double sampled_holder_quotient(const std::function<double(double)>& g, double alpha) {
    constexpr int kGrid = 500;
    std::vector<double> values(kGrid);
    for (int i = 0; i < kGrid; ++i) values[i] = g(static_cast<double>(i) / (kGrid - 1));
    double best = 0.0;
    for (int i = 0; i < kGrid; ++i) {
        if (std::isnan(values[i])) continue;
        for (int j = i + 1; j < kGrid; ++j) {
            if (std::isnan(values[j])) continue;
            const double dx = static_cast<double>(j - i) / (kGrid - 1);
            const double q = std::fabs(values[i] - values[j]) / std::pow(dx, alpha);
            best = std::max(best, q);
        }
    }
    return best;
}

const std::function<double(double)>& derivative_of_order(const TestFunction& f, int order) {
    if (order == 1) {
        if (!f.has_d1()) throw MissingDerivativeError("\"" + f.id + "\" has no first derivative");
        return f.d1;
    }
    if (!f.has_d2()) throw MissingDerivativeError("\"" + f.id + "\" has no second derivative");
    return f.d2;
}

}  // namespace

TestFunction affine(double a, double b) {
    TestFunction f;
    f.id = "affine:" + fmt_g(a) + "," + fmt_g(b);
    f.eval = [a, b](double x) { return a + b * x; };
    f.d1 = [b](double) { return b; };
    f.d2 = [](double) { return 0.0; };
    const double ab = std::fabs(b);
    f.memberships = {
        sobolev_member(1.0, 1.0, ab),
        sobolev_member(2.0, 1.0, ab),
        sobolev_member(kInf, 1.0, ab),
        sobolev_member(2.0, 2.0, 0.0),
        sobolev_member(kInf, 2.0, 0.0),
        holder_member(0, 1.0, ab),
    };
    f.integral = a + 0.5 * b;
    return f;
}

TestFunction quadratic() {
    TestFunction f;
    f.id = "quadratic";
    f.eval = [](double x) { return x * x; };
    f.d1 = [](double x) { return 2.0 * x; };
    f.d2 = [](double) { return 2.0; };
    f.memberships = {
        sobolev_member(1.0, 1.0, 1.0),                   // int |2x| = 1
        sobolev_member(2.0, 1.0, 2.0 / std::sqrt(3.0)),  // ||2x||_2
        sobolev_member(kInf, 1.0, 2.0),
        sobolev_member(1.0, 2.0, 2.0),
        sobolev_member(2.0, 2.0, 2.0),
        sobolev_member(4.0, 2.0, 2.0),
        sobolev_member(kInf, 2.0, 2.0),
        holder_member(0, 1.0, 2.0),
        holder_member(1, 1.0, 2.0),
    };
    f.integral = 1.0 / 3.0;
    return f;
}

TestFunction sin_pi() {
    TestFunction f;
    f.id = "sin_pi";
    f.eval = [](double x) { return std::sin(M_PI * x); };
    f.d1 = [](double x) { return M_PI * std::cos(M_PI * x); };
    f.d2 = [](double x) { return -M_PI * M_PI * std::sin(M_PI * x); };
    const double pi = M_PI;
    const double quartic = std::pow(3.0 / 8.0, 0.25);  // (int cos^4)^{1/4} = (int sin^4)^{1/4}
    f.memberships = {
        sobolev_member(1.0, 1.0, 2.0),                // int pi |cos(pi x)| = 2
        sobolev_member(2.0, 1.0, pi / std::sqrt(2.0)),
        sobolev_member(4.0, 1.0, pi * quartic),
        sobolev_member(kInf, 1.0, pi),
        sobolev_member(1.0, 2.0, 2.0 * pi),
        sobolev_member(2.0, 2.0, pi * pi / std::sqrt(2.0)),
        sobolev_member(4.0, 2.0, pi * pi * quartic),
        sobolev_member(kInf, 2.0, pi * pi),
    };
    f.integral = 2.0 / pi;
    return f;
}

TestFunction power_fn(double gamma) {
    if (!(gamma > 0.0 && gamma < 2.0)) throw std::invalid_argument("power exponent must lie in (0, 2)");
    TestFunction f;
    f.id = "pow:" + fmt_g(gamma);
    f.eval = [gamma](double x) { return std::pow(x, gamma); };
    f.d1 = [gamma](double x) { return gamma * std::pow(x, gamma - 1.0); };
    f.d2 = [gamma](double x) { return gamma * (gamma - 1.0) * std::pow(x, gamma - 2.0); };
    f.singular_points = {0.0};
    // x^gamma lies in W^sigma_2 exactly for sigma < gamma + 1/2.
    f.memberships.push_back(sobolev_sup_member(2.0, gamma + 0.5, "order is the supremum, not attained"));
    f.memberships.push_back(sobolev_member(1.0, 1.0, 1.0));  // int gamma x^{gamma-1} = 1
    if (gamma > 0.5) {
        // ||gamma x^{gamma-1}||_2 = gamma / sqrt(2 gamma - 1)
        f.memberships.push_back(sobolev_member(2.0, 1.0, gamma / std::sqrt(2.0 * gamma - 1.0)));
    }
    if (gamma >= 1.0) {
        f.memberships.push_back(sobolev_member(kInf, 1.0, gamma));
        f.memberships.push_back(holder_member(0, 1.0, gamma));
    }
    if (gamma > 1.0) {
        f.memberships.push_back(sobolev_member(1.0, 2.0, gamma));  // int |f''| = gamma telescopes
    }
    f.integral = 1.0 / (gamma + 1.0);
    return f;
}

TestFunction abs_power(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("abs-power exponent must lie in (0, 1)");
    TestFunction f;
    f.id = "abs_pow:" + fmt_g(gamma);
    f.eval = [gamma](double x) { return std::pow(std::fabs(x - 0.5), gamma); };
    f.d1 = [gamma](double x) {
        const double u = x - 0.5;
        return std::copysign(gamma * std::pow(std::fabs(u), gamma - 1.0), u);
    };
    f.d2 = [gamma](double x) {
        return gamma * (gamma - 1.0) * std::pow(std::fabs(x - 0.5), gamma - 2.0);
    };
    f.singular_points = {0.5};
    f.memberships.push_back(sobolev_sup_member(2.0, gamma + 0.5, "order is the supremum, not attained"));
    // int |f'| = 2 * 0.5^gamma
    f.memberships.push_back(sobolev_member(1.0, 1.0, std::pow(2.0, 1.0 - gamma)));
    if (gamma > 0.5) {
        // int f'^2 = 2 gamma^2 0.5^{2 gamma - 1} / (2 gamma - 1)
        const double sq = 2.0 * gamma * gamma * std::pow(0.5, 2.0 * gamma - 1.0) / (2.0 * gamma - 1.0);
        f.memberships.push_back(sobolev_member(2.0, 1.0, std::sqrt(sq)));
    }
    f.memberships.push_back(holder_member(0, gamma, 1.0));
    f.integral = std::pow(0.5, gamma) / (gamma + 1.0);
    return f;
}

TestFunction hat(double breakpoint) {
    if (!(breakpoint > 0.0 && breakpoint < 1.0)) {
        throw std::invalid_argument("hat breakpoint must lie in (0, 1)");
    }
    const double y = breakpoint;
    TestFunction f;
    f.id = "hat:" + fmt_g(y);
    f.eval = [y](double x) { return x <= y ? x / y : (1.0 - x) / (1.0 - y); };
    f.d1 = [y](double x) { return x < y ? 1.0 / y : -1.0 / (1.0 - y); };
    f.singular_points = {y};
    const double rising = 1.0 / y;
    const double falling = 1.0 / (1.0 - y);
    f.memberships = {
        sobolev_sup_member(2.0, 1.5, "kink; order is the supremum, not attained"),
        sobolev_member(1.0, 1.0, 2.0),
        sobolev_member(2.0, 1.0, std::sqrt(rising + falling)),
        sobolev_member(kInf, 1.0, std::max(rising, falling)),
        holder_member(0, 1.0, std::max(rising, falling)),
    };
    f.integral = 0.5;
    return f;
}

TestFunction bc_quadratic(const KernelParams& params) {
    if (!(params.beta > 0.0)) throw std::invalid_argument("bc_quadratic requires beta > 0");
    // Ansatz u = x^2 + b x + c; the two boundary conditions are linear in (b, c):
    //   (beta - a2) b - (a0 + a2) c = a2
    //   (beta + a1) b + (a1 + a2) c = -2 beta - a1
    const double a0 = params.alpha0, a1 = params.alpha1, a2 = params.alpha2, beta = params.beta;
    const double det = (beta - a2) * (a1 + a2) + (a0 + a2) * (beta + a1);
    if (std::fabs(det) < 1e-12 * (std::fabs(beta) + std::fabs(a0) + std::fabs(a1) + std::fabs(a2) + 1.0)) {
        throw std::invalid_argument("no quadratic satisfies both boundary conditions for these parameters");
    }
    const double b = (a2 * (a1 + a2) + (a0 + a2) * (-2.0 * beta - a1)) / det;
    const double c = ((beta - a2) * (-2.0 * beta - a1) - (beta + a1) * a2) / det;

    TestFunction f;
    f.id = "bc_quadratic:" + fmt_g(a0) + "," + fmt_g(a1) + "," + fmt_g(a2) + "," + fmt_g(beta);
    f.eval = [b, c](double x) { return x * x + b * x + c; };
    f.d1 = [b](double x) { return 2.0 * x + b; };
    f.d2 = [](double) { return 2.0; };
    f.memberships = {
        sobolev_member(2.0, 1.0, std::sqrt(4.0 / 3.0 + 2.0 * b + b * b)),
        sobolev_member(kInf, 1.0, std::max(std::fabs(b), std::fabs(2.0 + b))),
        sobolev_member(2.0, 2.0, 2.0),
        sobolev_member(kInf, 2.0, 2.0),
    };
    f.integral = 1.0 / 3.0 + 0.5 * b + c;
    f.notes = "quadratic matched to the Robin boundary conditions; u = x^2 + " + fmt_g(b) + " x + " + fmt_g(c);
    return f;
}

TestFunction kernel_translate(const KernelModel& model, double center) {
    if (!(center >= 0.0 && center <= 1.0)) {
        throw std::invalid_argument("translate center must lie in [0, 1]");
    }
    const SideSlopes s = model.branch_slopes(center);
    TestFunction f;
    f.id = "kernel_translate:" + fmt_g(center);
    f.eval = [model, center](double x) { return model.evaluate(center, x); };
    f.d1 = [s, center](double x) { return x < center ? s.left : s.right; };
    if (center > 0.0 && center < 1.0) f.singular_points = {center};
    const double kc = model.evaluate(center, center);
    f.integral = center * (model.evaluate(center, 0.0) + kc) / 2.0 +
                 (1.0 - center) * (kc + model.evaluate(center, 1.0)) / 2.0;
    f.notes = "translate of " + model.describe();
    return f;
}

double default_hat_breakpoint() {
    // 2/3 + sqrt(2) * 1e-5: irrational, and frac(2^k * y) stays near {1/3, 2/3}
    // for the dyadic levels used in refinement studies.
    return 2.0 / 3.0 + 1e-5 * std::sqrt(2.0);
}

std::vector<TestFunction> builtin_bank() {
    return {
        affine(1.0, 0.0),
        affine(0.5, 2.0),
        quadratic(),
        sin_pi(),
        power_fn(0.75),
        power_fn(1.25),
        abs_power(0.6),
        abs_power(0.75),
        hat(default_hat_breakpoint()),
    };
}

TestFunction find_function(std::string_view id) {
    const auto colon = id.find(':');
    const std::string name(id.substr(0, colon));
    std::vector<double> args;
    if (colon != std::string_view::npos) {
        std::string rest(id.substr(colon + 1));
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t next = rest.find(',', pos);
            if (next == std::string::npos) next = rest.size();
            try {
                args.push_back(std::stod(rest.substr(pos, next - pos)));
            } catch (const std::exception&) {
                throw std::invalid_argument("cannot parse numeric argument in function id \"" + std::string(id) + "\"");
            }
            pos = next + 1;
        }
    }
    auto want = [&](std::size_t n) {
        if (args.size() != n) {
            throw std::invalid_argument("function \"" + name + "\" takes " + std::to_string(n) +
                                        " argument(s), got " + std::to_string(args.size()));
        }
    };
    if (name == "quadratic") { want(0); return quadratic(); }
    if (name == "sin_pi") { want(0); return sin_pi(); }
    if (name == "affine") { want(2); return affine(args[0], args[1]); }
    if (name == "pow") { want(1); return power_fn(args[0]); }
    if (name == "abs_pow") { want(1); return abs_power(args[0]); }
    if (name == "hat") {
        if (args.empty()) return hat(default_hat_breakpoint());
        want(1);
        return hat(args[0]);
    }
    if (name == "bc_quadratic") { want(4); return bc_quadratic({args[0], args[1], args[2], args[3]}); }
    throw std::invalid_argument("unknown function id \"" + std::string(id) + "\"");
}

double seminorm(const TestFunction& f, const SmoothnessSpace& space, int quad_order) {
    if (space.kind == SmoothnessSpace::Kind::besov) {
        throw std::invalid_argument("Besov seminorms are metadata-only");
    }
    if (space.kind == SmoothnessSpace::Kind::holder) {
        for (const Membership& m : f.memberships) {
            if (m.space.kind == SmoothnessSpace::Kind::holder && m.space.s == space.s &&
                m.space.alpha == space.alpha && m.value) {
                return *m.value;
            }
        }
        const auto& g = space.s == 0 ? f.eval : derivative_of_order(f, space.s);
        return sampled_holder_quotient(g, space.alpha);
    }

    const double sigma = space.sigma;
    int order = 0;
    if (std::fabs(sigma - 1.0) < 1e-12) order = 1;
    else if (std::fabs(sigma - 2.0) < 1e-12) order = 2;
    else throw std::invalid_argument("fractional Sobolev orders are metadata-only (got sigma = " + fmt_g(sigma) + ")");

    const auto& g = derivative_of_order(f, order);
    if (std::isinf(space.p)) return dense_max_abs(g, f.singular_points);

    const double p = space.p;
    const double integral = integrate_panels(
        [&](double t) { return std::pow(std::fabs(g(t)), p); }, 0.0, 1.0, f.singular_points,
        f.singular_points, quad_order);
    return std::pow(integral, 1.0 / p);
}

bool member_of_w1p(const TestFunction& f, double p) {
    for (const Membership& m : f.memberships) {
        if (m.space.kind == SmoothnessSpace::Kind::holder && m.space.s == 0 && m.space.alpha == 1.0) {
            return true;  // Lipschitz implies W^1_p for every p
        }
        if (m.space.kind != SmoothnessSpace::Kind::sobolev) continue;
        // On [0, 1], L_q contains L_p for q >= p, so higher p implies lower.
        if (m.space.sigma >= 1.0 - 1e-12 && m.space.p >= p - 1e-12 && !m.sigma_is_supremum) return true;
        if (m.space.sigma > 1.0 + 1e-12 && m.space.p >= p - 1e-12) return true;
    }
    return false;
}

std::optional<double> sobolev_order(const TestFunction& f, double p) {
    std::optional<double> best;
    for (const Membership& m : f.memberships) {
        if (m.space.kind != SmoothnessSpace::Kind::sobolev) continue;
        if (std::fabs(m.space.p - p) > 1e-12 && !(std::isinf(m.space.p) && std::isinf(p))) continue;
        if (!best || m.space.sigma > *best) best = m.space.sigma;
    }
    return best;
}

std::optional<double> stored_sobolev_seminorm(const TestFunction& f, double p, double sigma) {
    for (const Membership& m : f.memberships) {
        if (m.space.kind != SmoothnessSpace::Kind::sobolev || !m.value) continue;
        const bool p_match = std::fabs(m.space.p - p) <= 1e-12 || (std::isinf(m.space.p) && std::isinf(p));
        if (p_match && std::fabs(m.space.sigma - sigma) <= 1e-12) return m.value;
    }
    return std::nullopt;
}

}  // namespace plk
