#include "plk/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "plk/errors.hpp"
#include "plk/gauss_legendre.hpp"

namespace plk {

namespace {

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void check_domain(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::domain_error(std::string(name) + " = " + fmt_g(v) + " is outside [0, 1]");
    }
}

void check_interior(double x) {
    if (!(x > 0.0 && x < 1.0)) {
        throw std::domain_error("x = " + fmt_g(x) + " must lie in the open interval (0, 1)");
    }
}

}  // namespace

std::string ParamsValidation::message() const {
    if (ok) return "ok";
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += v;
    }
    return out;
}

ParamsValidation validate_params(const KernelParams& p) {
    ParamsValidation result;
    if (!(p.beta > 0.0)) {
        result.violations.push_back("beta: requires beta > 0, got " + fmt_g(p.beta));
    }
    if (!(p.determinant() > 0.0)) {
        result.violations.push_back("determinant: requires alpha0*alpha1 - alpha2^2 > 0, got " +
                                    fmt_g(p.determinant()));
    }
    if (!(p.trace() > 0.0)) {
        result.violations.push_back("trace: requires alpha0 + alpha1 > 0, got " + fmt_g(p.trace()));
    }
    // Implied by the conditions above; asserted independently.
    if (result.violations.empty() && !(p.delta() > 0.0)) {
        result.violations.push_back("delta: requires alpha0*alpha1 - alpha2^2 + beta*(alpha0 + alpha1 + 2*alpha2) > 0, got " +
                                    fmt_g(p.delta()));
    }
    result.ok = result.violations.empty();
    return result;
}

KernelModel::KernelModel(Kind kind, KernelParams params, double epsilon)
    : kind_(kind), params_(params), epsilon_(epsilon) {}

KernelModel KernelModel::general_w1(const KernelParams& params) {
    const ParamsValidation v = validate_params(params);
    if (!v.ok) throw std::invalid_argument("invalid kernel parameters: " + v.message());
    return KernelModel(Kind::general_w1, params, 0.0);
}

KernelModel KernelModel::released_brownian(double alpha0, double beta) {
    if (!(alpha0 > 0.0)) throw std::invalid_argument("released Brownian kernel requires alpha0 > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("released Brownian kernel requires beta > 0");
    KernelParams p{alpha0, 0.0, 0.0, beta};
    return KernelModel(Kind::released_brownian, p, 0.0);
}

KernelModel KernelModel::released_reverse_brownian(double alpha1, double beta) {
    if (!(alpha1 > 0.0)) throw std::invalid_argument("released reverse Brownian kernel requires alpha1 > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("released reverse Brownian kernel requires beta > 0");
    KernelParams p{0.0, alpha1, 0.0, beta};
    return KernelModel(Kind::released_reverse_brownian, p, 0.0);
}

KernelModel KernelModel::brownian_motion(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("Brownian motion kernel requires beta > 0");
    KernelParams p{0.0, 0.0, 0.0, beta};
    return KernelModel(Kind::brownian_motion, p, 0.0);
}

KernelModel KernelModel::reverse_brownian_motion(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("reverse Brownian motion kernel requires beta > 0");
    KernelParams p{0.0, 0.0, 0.0, beta};
    return KernelModel(Kind::reverse_brownian_motion, p, 0.0);
}

KernelModel KernelModel::brownian_bridge(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("Brownian bridge kernel requires beta > 0");
    KernelParams p{0.0, 0.0, 0.0, beta};
    return KernelModel(Kind::brownian_bridge, p, 0.0);
}

KernelModel KernelModel::wendland_linear(double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("Wendland kernel is 2-piecewise linear on [0, 1] only for epsilon in (0, 1]");
    }
    return KernelModel(Kind::wendland_linear, KernelParams{}, epsilon);
}

const KernelParams& KernelModel::params() const {
    if (kind_ != Kind::general_w1) {
        throw UnsupportedKindError("params() is defined for the general kernel only");
    }
    return params_;
}

double KernelModel::epsilon() const {
    if (kind_ != Kind::wendland_linear) {
        throw UnsupportedKindError("epsilon() is defined for the Wendland kernel only");
    }
    return epsilon_;
}

ForcedZeros KernelModel::forced_zeros() const {
    switch (kind_) {
        case Kind::brownian_motion:
            return {true, false};
        case Kind::reverse_brownian_motion:
            return {false, true};
        case Kind::brownian_bridge:
            return {true, true};
        default:
            return {false, false};
    }
}

double KernelModel::diffusion() const {
    if (kind_ == Kind::wendland_linear) return 1.0 / (2.0 * epsilon_);
    return params_.beta;
}

std::string KernelModel::describe() const {
    switch (kind_) {
        case Kind::general_w1:
            return "general-w1(alpha0=" + fmt_g(params_.alpha0) + ",alpha1=" + fmt_g(params_.alpha1) +
                   ",alpha2=" + fmt_g(params_.alpha2) + ",beta=" + fmt_g(params_.beta) + ")";
        case Kind::released_brownian:
            return "released-bm(alpha0=" + fmt_g(params_.alpha0) + ",beta=" + fmt_g(params_.beta) + ")";
        case Kind::released_reverse_brownian:
            return "released-rbm(alpha1=" + fmt_g(params_.alpha1) + ",beta=" + fmt_g(params_.beta) + ")";
        case Kind::brownian_motion:
            return "bm(beta=" + fmt_g(params_.beta) + ")";
        case Kind::reverse_brownian_motion:
            return "reverse-bm(beta=" + fmt_g(params_.beta) + ")";
        case Kind::brownian_bridge:
            return "brownian-bridge(beta=" + fmt_g(params_.beta) + ")";
        case Kind::wendland_linear:
            return "wendland(epsilon=" + fmt_g(epsilon_) + ")";
    }
    return "?";
}

double KernelModel::evaluate(double x, double y) const {
    check_domain(x, "x");
    check_domain(y, "y");
    // All closed forms use min/max so evaluation is exactly symmetric in (x, y).
    const double lo = std::fmin(x, y);
    const double hi = std::fmax(x, y);
    const KernelParams& p = params_;
    switch (kind_) {
        case Kind::general_w1: {
            const double num = p.alpha1 * p.beta + p.beta * p.beta - hi * (p.alpha1 + p.alpha2) * p.beta +
                               lo * (p.alpha0 * p.alpha1 + p.alpha0 * p.beta - p.alpha2 * p.alpha2 + p.alpha2 * p.beta) +
                               x * y * (p.alpha2 * p.alpha2 - p.alpha0 * p.alpha1);
            return num / (p.beta * p.delta());
        }
        case Kind::released_brownian:
            return 1.0 / p.alpha0 + lo / p.beta;
        case Kind::released_reverse_brownian:
            return 1.0 / p.alpha1 + (1.0 - hi) / p.beta;
        case Kind::brownian_motion:
            return lo / p.beta;
        case Kind::reverse_brownian_motion:
            return (1.0 - hi) / p.beta;
        case Kind::brownian_bridge:
            return (lo - x * y) / p.beta;
        case Kind::wendland_linear:
            return std::fmax(0.0, 1.0 - epsilon_ * (hi - lo));
    }
    return 0.0;
}

SideSlopes KernelModel::branch_slopes(double x) const {
    const KernelParams& p = params_;
    switch (kind_) {
        case Kind::general_w1: {
            const double scale = p.beta * p.delta();
            const double cross = x * (p.alpha2 * p.alpha2 - p.alpha0 * p.alpha1);
            const double left = (p.alpha0 * p.alpha1 + p.alpha0 * p.beta - p.alpha2 * p.alpha2 + p.alpha2 * p.beta + cross) / scale;
            const double right = (-(p.alpha1 + p.alpha2) * p.beta + cross) / scale;
            return {left, right};
        }
        case Kind::released_brownian:
        case Kind::brownian_motion:
            return {1.0 / p.beta, 0.0};
        case Kind::released_reverse_brownian:
        case Kind::reverse_brownian_motion:
            return {0.0, -1.0 / p.beta};
        case Kind::brownian_bridge:
            return {(1.0 - x) / p.beta, -x / p.beta};
        case Kind::wendland_linear:
            // 1 - eps|x - y| stays nonnegative on [0, 1]^2 for eps <= 1.
            return {epsilon_, -epsilon_};
    }
    return {0.0, 0.0};
}

SideSlopes KernelModel::slopes(double x) const {
    check_interior(x);
    return branch_slopes(x);
}

double KernelModel::jump_residual(double x) const {
    const SideSlopes s = slopes(x);
    return diffusion() * (s.left - s.right) - 1.0;
}

BoundaryResiduals KernelModel::boundary_residuals(double x) const {
    if (kind_ != Kind::general_w1) {
        throw UnsupportedKindError(
            "boundary residuals are defined for the general kernel; limit kernels satisfy "
            "Dirichlet constraints at their forced zeros instead");
    }
    check_interior(x);
    const SideSlopes s = branch_slopes(x);
    const double at0 = evaluate(x, 0.0);
    const double at1 = evaluate(x, 1.0);
    const KernelParams& p = params_;
    const double left = p.beta * s.left - p.alpha0 * at0 - p.alpha2 * at1;
    const double right = p.beta * s.right + p.alpha1 * at1 + p.alpha2 * at0;
    return {left, right};
}

double rkhs_inner_product(const KernelParams& params, const TestFunction& f,
                          const TestFunction& g, int quad_order) {
    const ParamsValidation v = validate_params(params);
    if (!v.ok) throw std::invalid_argument("invalid kernel parameters: " + v.message());
    if (quad_order < 2) throw std::invalid_argument("quad_order must be at least 2");
    if (!f.has_d1()) throw MissingDerivativeError("inner product requires f' for \"" + f.id + "\"");
    if (!g.has_d1()) throw MissingDerivativeError("inner product requires g' for \"" + g.id + "\"");

    const double f0 = f.eval(0.0), f1 = f.eval(1.0);
    const double g0 = g.eval(0.0), g1 = g.eval(1.0);
    const double boundary = params.alpha0 * f0 * g0 + params.alpha1 * f1 * g1 +
                            params.alpha2 * (f0 * g1 + f1 * g0);

    std::vector<double> cuts = f.singular_points;
    cuts.insert(cuts.end(), g.singular_points.begin(), g.singular_points.end());
    const double l2 = integrate_panels([&](double t) { return f.d1(t) * g.d1(t); }, 0.0, 1.0,
                                       cuts, cuts, quad_order);
    return boundary + params.beta * l2;
}

}  // namespace plk
