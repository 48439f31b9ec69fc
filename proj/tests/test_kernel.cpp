#include <cmath>
#include <random>

#include "doctest.h"
#include "plk/errors.hpp"
#include "plk/function_bank.hpp"
#include "plk/kernel.hpp"

using namespace plk;

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

KernelParams random_valid_params(std::mt19937_64& rng) {
    KernelParams p;
    p.alpha0 = 0.3 + 2.2 * uniform01(rng);
    p.alpha1 = 0.3 + 2.2 * uniform01(rng);
    p.alpha2 = 0.9 * (2.0 * uniform01(rng) - 1.0) * std::sqrt(p.alpha0 * p.alpha1);
    p.beta = 0.4 + 1.6 * uniform01(rng);
    return p;
}

std::vector<KernelModel> sample_models() {
    return {
        KernelModel::general_w1({1.0, 1.0, 0.0, 1.0}),
        KernelModel::general_w1({2.0, 1.0, -0.5, 0.7}),
        KernelModel::released_brownian(1.0, 1.0),
        KernelModel::released_reverse_brownian(2.0, 0.5),
        KernelModel::brownian_motion(1.0),
        KernelModel::reverse_brownian_motion(2.0),
        KernelModel::brownian_bridge(1.0),
        KernelModel::wendland_linear(0.8),
    };
}

// Residual of three samples of g lying on one line.
double collinearity_residual(double a, double b, double c, double ga, double gb, double gc) {
    const double interpolated = (ga * (c - b) + gc * (b - a)) / (c - a);
    return std::fabs(gb - interpolated);
}

}  // namespace

TEST_CASE("parameter validation conditions") {
    CHECK(validate_params({1.0, 1.0, 0.0, 1.0}).ok);

    const ParamsValidation equal = validate_params({1.0, 1.0, 1.0, 1.0});
    CHECK_FALSE(equal.ok);
    REQUIRE(equal.violations.size() == 1);
    CHECK(equal.violations[0].find("determinant") != std::string::npos);

    // alpha1 = 0 zeroes the determinant; this shape is served by the released kernel.
    const ParamsValidation released_shape = validate_params({1.0, 0.0, 0.0, 1.0});
    CHECK_FALSE(released_shape.ok);
    CHECK(released_shape.violations[0].find("determinant") != std::string::npos);

    CHECK_FALSE(validate_params({1.0, 1.0, 0.0, -1.0}).ok);
    CHECK_FALSE(validate_params({-1.0, -1.0, 0.0, 1.0}).ok);

    CHECK_THROWS_AS(KernelModel::general_w1({1.0, 1.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(KernelModel::wendland_linear(1.5), std::invalid_argument);
    CHECK_THROWS_AS(KernelModel::wendland_linear(0.0), std::invalid_argument);
}

TEST_CASE("kernel evaluation closed forms") {
    const KernelModel released = KernelModel::released_brownian(1.0, 1.0);
    CHECK(released.evaluate(0.3, 0.7) == doctest::Approx(1.3).epsilon(1e-15));

    const KernelModel bridge = KernelModel::brownian_bridge(1.0);
    CHECK(bridge.evaluate(0.5, 0.5) == doctest::Approx(0.25).epsilon(1e-15));

    const KernelModel bm = KernelModel::brownian_motion(2.0);
    CHECK(bm.evaluate(0.25, 0.75) == doctest::Approx(0.125).epsilon(1e-15));

    const KernelModel wendland = KernelModel::wendland_linear(1.0);
    CHECK(wendland.evaluate(0.0, 1.0) == doctest::Approx(0.0));
    CHECK(wendland.evaluate(0.25, 0.25) == doctest::Approx(1.0));

    CHECK_THROWS_AS(released.evaluate(1.5, 0.5), std::domain_error);
    CHECK_THROWS_AS(released.evaluate(0.5, -0.1), std::domain_error);
}

TEST_CASE("symmetry holds exactly for every kind") {
    std::mt19937_64 rng(7);
    auto models = sample_models();
    for (const KernelModel& m : models) {
        for (int trial = 0; trial < 200; ++trial) {
            const double x = uniform01(rng);
            const double y = uniform01(rng);
            CHECK(m.evaluate(x, y) == m.evaluate(y, x));
        }
    }
}

TEST_CASE("translates are affine on both sides of the center") {
    std::mt19937_64 rng(11);
    for (const KernelModel& m : sample_models()) {
        for (int trial = 0; trial < 25; ++trial) {
            const double x = 0.15 + 0.7 * uniform01(rng);
            auto g = [&](double y) { return m.evaluate(x, y); };
            const double a = 0.2 * x, b = 0.5 * x, c = 0.9 * x;
            CHECK(collinearity_residual(a, b, c, g(a), g(b), g(c)) <= 1e-12);
            const double u = x + 0.1 * (1.0 - x), v = x + 0.5 * (1.0 - x), w = x + 0.9 * (1.0 - x);
            CHECK(collinearity_residual(u, v, w, g(u), g(v), g(w)) <= 1e-12);
        }
    }
}

TEST_CASE("one-sided slopes of the translates") {
    const SideSlopes bm = KernelModel::brownian_motion(1.0).slopes(0.4);
    CHECK(bm.left == doctest::Approx(1.0));
    CHECK(bm.right == doctest::Approx(0.0));

    const SideSlopes bridge = KernelModel::brownian_bridge(1.0).slopes(0.5);
    CHECK(bridge.left == doctest::Approx(0.5));
    CHECK(bridge.right == doctest::Approx(-0.5));

    const SideSlopes rbm = KernelModel::reverse_brownian_motion(2.0).slopes(0.3);
    CHECK(rbm.left == doctest::Approx(0.0));
    CHECK(rbm.right == doctest::Approx(-0.5));

    CHECK_THROWS_AS(KernelModel::brownian_motion(1.0).slopes(0.0), std::domain_error);
    CHECK_THROWS_AS(KernelModel::brownian_motion(1.0).slopes(1.0), std::domain_error);

    // Slopes match a centered finite difference away from the kink.
    std::mt19937_64 rng(3);
    for (const KernelModel& m : sample_models()) {
        const double x = 0.3 + 0.4 * uniform01(rng);
        const SideSlopes s = m.slopes(x);
        const double dh = 1e-6;
        const double left_fd = (m.evaluate(x, x / 2 + dh) - m.evaluate(x, x / 2 - dh)) / (2 * dh);
        const double mid_right = x + (1.0 - x) / 2;
        const double right_fd = (m.evaluate(x, mid_right + dh) - m.evaluate(x, mid_right - dh)) / (2 * dh);
        CHECK(s.left == doctest::Approx(left_fd).epsilon(1e-7));
        CHECK(s.right == doctest::Approx(right_fd).epsilon(1e-7));
    }
}

TEST_CASE("green jump residual vanishes across the family") {
    CHECK(std::fabs(KernelModel::brownian_motion(1.0).jump_residual(0.4)) <= 1e-15);
    CHECK(std::fabs(KernelModel::brownian_motion(2.0).jump_residual(0.4)) <= 1e-15);

    std::mt19937_64 rng(19);
    for (const KernelModel& m : sample_models()) {
        for (int trial = 0; trial < 50; ++trial) {
            const double x = 0.01 + 0.98 * uniform01(rng);
            CHECK(std::fabs(m.jump_residual(x)) <= 1e-12);
        }
    }
    for (int trial = 0; trial < 20; ++trial) {
        const KernelModel m = KernelModel::general_w1(random_valid_params(rng));
        const double x = 0.01 + 0.98 * uniform01(rng);
        CHECK(std::fabs(m.jump_residual(x)) <= 1e-12);
    }
}

TEST_CASE("green boundary residuals vanish for the general kernel") {
    const KernelModel unit = KernelModel::general_w1({1.0, 1.0, 0.0, 1.0});
    const BoundaryResiduals r1 = unit.boundary_residuals(0.5);
    CHECK(std::fabs(r1.left) <= 1e-12);
    CHECK(std::fabs(r1.right) <= 1e-12);

    const KernelModel mixed = KernelModel::general_w1({2.0, 1.0, -0.5, 0.7});
    const BoundaryResiduals r2 = mixed.boundary_residuals(0.25);
    CHECK(std::fabs(r2.left) <= 1e-10);
    CHECK(std::fabs(r2.right) <= 1e-10);

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const double x = 0.01 + 0.98 * uniform01(rng);
        const BoundaryResiduals r = unit.boundary_residuals(x);
        CHECK(std::fabs(r.left) <= 1e-10);
        CHECK(std::fabs(r.right) <= 1e-10);
    }

    CHECK_THROWS_AS(KernelModel::brownian_motion(1.0).boundary_residuals(0.5), UnsupportedKindError);
}

TEST_CASE("limit kernels vanish at their forced zeros") {
    const KernelModel bm = KernelModel::brownian_motion(1.3);
    const KernelModel rbm = KernelModel::reverse_brownian_motion(0.8);
    const KernelModel bridge = KernelModel::brownian_bridge(1.0);
    CHECK(bm.forced_zeros().left);
    CHECK_FALSE(bm.forced_zeros().right);
    CHECK(rbm.forced_zeros().right);
    CHECK(bridge.forced_zeros().left);
    CHECK(bridge.forced_zeros().right);
    CHECK(KernelModel::wendland_linear(0.5).forced_zeros().empty());

    for (int i = 1; i < 20; ++i) {
        const double x = i / 20.0;
        CHECK(std::fabs(bm.evaluate(x, 0.0)) <= 1e-14);
        CHECK(std::fabs(rbm.evaluate(x, 1.0)) <= 1e-14);
        CHECK(std::fabs(bridge.evaluate(x, 0.0)) <= 1e-14);
        CHECK(std::fabs(bridge.evaluate(x, 1.0)) <= 1e-14);
    }
}

TEST_CASE("inner product closed forms") {
    const KernelParams p{1.0, 1.0, 0.0, 1.0};
    const TestFunction one = affine(1.0, 0.0);
    const TestFunction ident = affine(0.0, 1.0);

    // Constants: only the boundary terms remain.
    const KernelParams q{2.0, 1.5, -0.5, 0.9};
    CHECK(rkhs_inner_product(q, one, one) ==
          doctest::Approx(q.alpha0 + q.alpha1 + 2.0 * q.alpha2).epsilon(1e-14));

    CHECK(rkhs_inner_product(p, ident, ident) == doctest::Approx(2.0).epsilon(1e-14));

    // <1, K_x> = 1 for any x: the translate reproduces constants.
    const KernelModel model = KernelModel::general_w1(p);
    for (double x : {0.1, 0.37, 0.5, 0.93}) {
        const TestFunction kx = kernel_translate(model, x);
        CHECK(rkhs_inner_product(p, one, kx) == doctest::Approx(1.0).epsilon(1e-12));
    }

    TestFunction no_deriv = affine(0.0, 1.0);
    no_deriv.d1 = nullptr;
    CHECK_THROWS_AS(rkhs_inner_product(p, no_deriv, one), MissingDerivativeError);
    CHECK_THROWS_AS(rkhs_inner_product(p, one, one, 1), std::invalid_argument);
}

TEST_CASE("reproducing property for piecewise linear functions") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        const KernelParams p = random_valid_params(rng);
        const KernelModel model = KernelModel::general_w1(p);
        const double x = 0.05 + 0.9 * uniform01(rng);
        const TestFunction kx = kernel_translate(model, x);

        const TestFunction bump = hat(0.25 + 0.5 * uniform01(rng));
        CHECK(rkhs_inner_product(p, bump, kx) == doctest::Approx(bump.eval(x)).epsilon(1e-10));

        const TestFunction line = affine(2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0);
        CHECK(rkhs_inner_product(p, line, kx) ==
              doctest::Approx(line.eval(x)).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("wendland jump uses the effective diffusion 1/(2 eps)") {
    const KernelModel w = KernelModel::wendland_linear(0.6);
    CHECK(w.diffusion() == doctest::Approx(1.0 / 1.2));
    CHECK(std::fabs(w.jump_residual(0.33)) <= 1e-15);
}
