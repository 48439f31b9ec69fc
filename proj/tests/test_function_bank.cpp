#include <cmath>

#include "doctest.h"
#include "plk/errors.hpp"
#include "plk/function_bank.hpp"
#include "plk/gauss_legendre.hpp"

using namespace plk;

TEST_CASE("bank contents and lookup") {
    const auto bank = builtin_bank();
    CHECK(bank.size() >= 8);

    CHECK(find_function("quadratic").eval(0.5) == doctest::Approx(0.25));
    CHECK(find_function("sin_pi").eval(0.5) == doctest::Approx(1.0));
    CHECK(find_function("pow:0.75").eval(0.5) == doctest::Approx(std::pow(0.5, 0.75)));
    CHECK(find_function("affine:1,2").eval(0.5) == doctest::Approx(2.0));
    CHECK(find_function("hat:0.5").eval(0.5) == doctest::Approx(1.0));
    CHECK(find_function("bc_quadratic:1,0,0,1").eval(0.0) == doctest::Approx(-2.0));

    CHECK_THROWS_AS(find_function("nope"), std::invalid_argument);
    CHECK_THROWS_AS(find_function("pow:abc"), std::invalid_argument);
    CHECK_THROWS_AS(find_function("affine:1"), std::invalid_argument);
}

TEST_CASE("polynomial seminorms match closed forms to rounding") {
    const TestFunction q = quadratic();
    CHECK(seminorm(q, SmoothnessSpace::sobolev(2.0, 2.0)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(seminorm(q, SmoothnessSpace::sobolev(1.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(seminorm(q, SmoothnessSpace::sobolev(2.0, 1.0)) ==
          doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));

    const TestFunction line = affine(0.0, 1.0);
    CHECK(seminorm(line, SmoothnessSpace::sobolev(1.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(seminorm(line, SmoothnessSpace::sobolev(kInf, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sin seminorm") {
    // int pi^4 sin^2(pi x) = pi^4 / 2
    CHECK(seminorm(sin_pi(), SmoothnessSpace::sobolev(2.0, 2.0)) ==
          doctest::Approx(M_PI * M_PI / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(seminorm(sin_pi(), SmoothnessSpace::sobolev(kInf, 2.0)) ==
          doctest::Approx(M_PI * M_PI).epsilon(1e-6));
}

TEST_CASE("singular power seminorms via graded quadrature") {
    // ||0.75 x^{-1/4}||_2 = 0.75 sqrt(2)
    CHECK(seminorm(power_fn(0.75), SmoothnessSpace::sobolev(2.0, 1.0)) ==
          doctest::Approx(0.75 * std::sqrt(2.0)).epsilon(1e-9));
    // int |f'| telescopes to 1 for x^gamma
    CHECK(seminorm(power_fn(0.75), SmoothnessSpace::sobolev(1.0, 1.0)) ==
          doctest::Approx(1.0).epsilon(1e-9));

    // 2 * 0.36 * int_0^{1/2} t^{-0.8} = 3.6 * 0.5^{0.2}
    const double closed = std::sqrt(3.6 * std::pow(0.5, 0.2));
    CHECK(seminorm(abs_power(0.6), SmoothnessSpace::sobolev(2.0, 1.0)) ==
          doctest::Approx(closed).epsilon(1e-4));
    CHECK(seminorm(abs_power(0.6), SmoothnessSpace::sobolev(1.0, 1.0)) ==
          doctest::Approx(std::pow(2.0, 0.4)).epsilon(1e-9));
}

TEST_CASE("fractional orders are metadata only") {
    CHECK_THROWS_AS(seminorm(power_fn(0.75), SmoothnessSpace::sobolev(2.0, 1.25)),
                    std::invalid_argument);
    CHECK_THROWS_AS(seminorm(quadratic(), SmoothnessSpace::besov(2.0, 4.0, 1.5)),
                    std::invalid_argument);

    const auto sup = sobolev_order(power_fn(0.75), 2.0);
    REQUIRE(sup.has_value());
    CHECK(*sup == doctest::Approx(1.25));
    const auto hat_sup = sobolev_order(hat(default_hat_breakpoint()), 2.0);
    REQUIRE(hat_sup.has_value());
    CHECK(*hat_sup == doctest::Approx(1.5));
}

TEST_CASE("sampled Holder estimate never exceeds stated metadata") {
    for (const TestFunction& f : builtin_bank()) {
        for (const Membership& m : f.memberships) {
            if (m.space.kind != SmoothnessSpace::Kind::holder || !m.value) continue;
            if (*m.value == 0.0) continue;  // constants: nothing to sample
            TestFunction stripped = f;
            stripped.memberships.clear();  // force the sampled path
            const double sampled = seminorm(stripped, m.space);
            CHECK(sampled <= *m.value * (1.0 + 1e-12));
            CHECK(sampled > 0.2 * *m.value);  // and it is not wildly loose
        }
    }
}

TEST_CASE("missing derivatives are reported") {
    TestFunction f = hat(0.5);  // has no second derivative
    CHECK_THROWS_AS(seminorm(f, SmoothnessSpace::sobolev(2.0, 2.0)), MissingDerivativeError);
    f.d1 = nullptr;
    CHECK_THROWS_AS(seminorm(f, SmoothnessSpace::sobolev(2.0, 1.0)), MissingDerivativeError);
}

TEST_CASE("bc_quadratic satisfies both boundary conditions") {
    // For a0=1, a1=a2=0, beta=1 the solution is (x-1)^2 - 3 = x^2 - 2x - 2.
    const TestFunction u = bc_quadratic({1.0, 0.0, 0.0, 1.0});
    for (double x : {0.0, 0.3, 1.0}) {
        const double expect = (x - 1.0) * (x - 1.0) - 3.0;
        CHECK(u.eval(x) == doctest::Approx(expect).epsilon(1e-14));
    }

    const std::vector<KernelParams> sets = {
        {1.0, 1.0, 0.0, 1.0}, {2.0, 1.0, -0.5, 0.7}, {0.5, 2.0, 0.3, 1.5}};
    for (const KernelParams& p : sets) {
        const TestFunction f = bc_quadratic(p);
        const double left = p.beta * f.d1(0.0) - p.alpha0 * f.eval(0.0) - p.alpha2 * f.eval(1.0);
        const double right = p.beta * f.d1(1.0) + p.alpha1 * f.eval(1.0) + p.alpha2 * f.eval(0.0);
        CHECK(std::fabs(left) < 1e-12);
        CHECK(std::fabs(right) < 1e-12);
    }
}

TEST_CASE("membership-driven W^1_p queries") {
    CHECK(member_of_w1p(quadratic(), 4.0));
    CHECK(member_of_w1p(quadratic(), kInf));
    CHECK(member_of_w1p(hat(0.3), 4.0));
    CHECK(member_of_w1p(power_fn(1.25), kInf));
    CHECK(member_of_w1p(power_fn(0.75), 2.0));
    CHECK_FALSE(member_of_w1p(power_fn(0.75), 4.0));   // f' ~ x^{-1/4} just misses L_4
    CHECK_FALSE(member_of_w1p(abs_power(0.6), 4.0));
    CHECK(member_of_w1p(abs_power(0.6), 2.0));
}

TEST_CASE("Besov classes with p = q collapse to Sobolev") {
    const SmoothnessSpace s = SmoothnessSpace::besov(2.0, 2.0, 1.5);
    CHECK(s.kind == SmoothnessSpace::Kind::sobolev);
    CHECK(s.sigma == doctest::Approx(1.5));
    CHECK(SmoothnessSpace::besov(2.0, 4.0, 1.5).kind == SmoothnessSpace::Kind::besov);
}

TEST_CASE("stated integrals agree with quadrature") {
    for (const TestFunction& f : builtin_bank()) {
        REQUIRE(f.integral.has_value());
        const double numeric =
            integrate_panels(f.eval, 0.0, 1.0, f.singular_points, f.singular_points, 24);
        CHECK(numeric == doctest::Approx(*f.integral).epsilon(1e-11));
    }
}
