#pragma once

#include <string>
#include <vector>

#include "plk/functions.hpp"

namespace plk {

/// Weights of the boundary-augmented inner product on W^1_2(0, 1),
///   <f, g> = a0 f(0)g(0) + a1 f(1)g(1) + a2 [f(0)g(1) + f(1)g(0)] + beta <f', g'>_{L2}.
struct KernelParams {
    double alpha0{1.0};
    double alpha1{1.0};
    double alpha2{0.0};
    double beta{1.0};

    double determinant() const { return alpha0 * alpha1 - alpha2 * alpha2; }
    double trace() const { return alpha0 + alpha1; }
    double delta() const { return determinant() + beta * (alpha0 + alpha1 + 2.0 * alpha2); }
};

struct ParamsValidation {
    bool ok{false};
    std::vector<std::string> violations;
    std::string message() const;
};

/// The bilinear form is an inner product iff beta > 0, the boundary matrix has
/// positive determinant (alpha0*alpha1 - alpha2^2 > 0) and positive trace
/// (alpha0 + alpha1 > 0). delta > 0 follows from these but is asserted anyway.
ParamsValidation validate_params(const KernelParams& p);

/// Endpoints at which every member of the kernel's space vanishes.
struct ForcedZeros {
    bool left{false};
    bool right{false};
    bool empty() const { return !left && !right; }
};

/// One-sided slopes of the kernel translate y -> K(x, y) on [0, x) and (x, 1].
struct SideSlopes {
    double left;
    double right;
};

struct BoundaryResiduals {
    double left;
    double right;
};

/// A member of the 2-piecewise-linear kernel family on [0, 1].
class KernelModel {
public:
    enum class Kind {
        general_w1,
        released_brownian,
        released_reverse_brownian,
        brownian_motion,
        reverse_brownian_motion,
        brownian_bridge,
        wendland_linear,
    };

    /// Full four-parameter kernel; throws std::invalid_argument naming the
    /// violated condition when the parameters do not give an inner product.
    static KernelModel general_w1(const KernelParams& params);
    static KernelModel released_brownian(double alpha0, double beta);
    static KernelModel released_reverse_brownian(double alpha1, double beta);
    static KernelModel brownian_motion(double beta);
    static KernelModel reverse_brownian_motion(double beta);
    static KernelModel brownian_bridge(double beta);
    /// max{0, 1 - eps|x - y|}; 2-piecewise linear on [0, 1] iff eps in (0, 1].
    static KernelModel wendland_linear(double epsilon);

    Kind kind() const { return kind_; }
    /// Parameters of the general kernel; throws UnsupportedKindError otherwise.
    const KernelParams& params() const;
    double epsilon() const;
    ForcedZeros forced_zeros() const;
    /// Coefficient of the second-derivative term in the associated boundary
    /// value problem -beta u'' = f (1/(2 eps) for the Wendland kernel).
    double diffusion() const;
    std::string describe() const;

    /// K(x, y) for x, y in [0, 1]; throws std::domain_error outside.
    double evaluate(double x, double y) const;
    double operator()(double x, double y) const { return evaluate(x, y); }

    /// One-sided slopes of y -> K(x, y) for x in (0, 1); closed form, never
    /// finite differences. Throws std::domain_error at the endpoints.
    SideSlopes slopes(double x) const;

    /// Slopes of the two affine branches of K(x, .); valid for any x in [0, 1].
    SideSlopes branch_slopes(double x) const;

    /// diffusion * (slope_left - slope_right) - 1 at x in (0, 1); identically
    /// zero across the whole family.
    double jump_residual(double x) const;

    /// Residuals of the Robin boundary conditions satisfied by K(x, .):
    ///   left  = beta K_x'(0+) - alpha0 K_x(0) - alpha2 K_x(1)
    ///   right = beta K_x'(1-) + alpha1 K_x(1) + alpha2 K_x(0)
    /// general_w1 only; the limit kernels carry Dirichlet constraints instead
    /// (see forced_zeros) and raise UnsupportedKindError here.
    BoundaryResiduals boundary_residuals(double x) const;

private:
    KernelModel(Kind kind, KernelParams params, double epsilon);

    Kind kind_;
    KernelParams params_{};
    double epsilon_{0.0};
};

/// <f, g> under the boundary-augmented inner product. The L2 term is a
/// composite Gauss-Legendre integral split at both functions' singular points.
double rkhs_inner_product(const KernelParams& params, const TestFunction& f,
                          const TestFunction& g, int quad_order = 16);

}  // namespace plk
