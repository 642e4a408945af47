#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "hsp/functionals.hpp"
#include "hsp/variational.hpp"

using namespace hsp;

namespace {
RadialField gaussian(const RadialGrid& g, double a = 1.0) {
    return sample_field(g, [a](double r) { return a * std::exp(-r * r / 4.0); });
}
}  // namespace

TEST_CASE("ModelParams validation and derived exponents") {
    const ModelParams p = ModelParams::make(3, 0.125);
    CHECK(p.beta == doctest::Approx(0.25));
    CHECK(p.p == doctest::Approx(5.0));
    CHECK(p.two_star == doctest::Approx(6.0));
    CHECK(p.beta == doctest::Approx(1.0 / (p.p - 1.0)));  // exponent identity
    CHECK_THROWS_AS(ModelParams::make(2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::make(3, -0.01), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::make(3, 0.126), std::invalid_argument);
    CHECK_NOTHROW(ModelParams::make(3, 0.125));  // (N-2)^2/8 inclusive
    CHECK(ModelParams::make(5, 0.0).beta == doctest::Approx(1.0 /
          (ModelParams::make(5, 0.0).p - 1.0)));
}

TEST_CASE("evaluate on the Gaussian matches closed forms") {
    const RadialGrid g = make_grid(3, 12.0, 2048);
    const RadialField v = gaussian(g);
    const double c = std::pow(4.0 * M_PI, 1.5);

    const FunctionalReport r0 = evaluate(g, v, ModelParams::make(3, 0.0), 1.0);
    CHECK(r0.a_val == doctest::Approx(1.25 * c).epsilon(1e-5));       // ~55.68
    CHECK(r0.b_val == doctest::Approx(std::pow(4.0 * M_PI / 5.0, 1.5)).epsilon(1e-5));
    CHECK(r0.energy == doctest::Approx(0.5 * r0.a_val - r0.b_val / 6.0).epsilon(1e-14));
    CHECK(r0.nehari == doctest::Approx(r0.a_val - r0.b_val).epsilon(1e-14));
    REQUIRE(r0.nehari_delta.has_value());
    CHECK(r0.nehari_delta->second == doctest::Approx(r0.nehari).epsilon(1e-14));
    CHECK(r0.energy == doctest::Approx(27.18).epsilon(1e-3));
    CHECK(r0.nehari == doctest::Approx(51.70).epsilon(1e-3));

    const FunctionalReport r1 = evaluate(g, v, ModelParams::make(3, 0.125));
    CHECK(r1.a_val == doctest::Approx(r0.a_val - 4.0 * std::pow(M_PI, 1.5) / 8.0).epsilon(1e-6));
    CHECK(r1.a_val == doctest::Approx(52.90).epsilon(1e-3));

    const FunctionalReport rz = evaluate(g, zero_field(g), ModelParams::make(3, 0.0));
    CHECK(rz.a_val == 0.0);
    CHECK(rz.b_val == 0.0);
    CHECK(rz.energy == 0.0);
    CHECK(rz.nehari == 0.0);
}

TEST_CASE("model_constants instantiation") {
    const ModelConstants c3 = model_constants(3);
    CHECK(c3.c_n == doctest::Approx(4.0));
    CHECK(c3.beta == doctest::Approx(0.25));
    CHECK(c3.p == doctest::Approx(5.0));
    CHECK(c3.two_star == doctest::Approx(6.0));
    CHECK(c3.lambda_1 == doctest::Approx(1.5));
    CHECK(c3.lambda_star == doctest::Approx(1.0));
    CHECK(c3.s0 == doctest::Approx(5.478).epsilon(1e-3));

    const ModelConstants c4 = model_constants(4);
    CHECK(c4.c_n == doctest::Approx(1.0));
    CHECK(c4.beta == doctest::Approx(0.5));
    CHECK(c4.p == doctest::Approx(3.0));
    CHECK(c4.two_star == doctest::Approx(4.0));
    CHECK(c4.lambda_1 == doctest::Approx(2.0));
    CHECK(c4.lambda_star == doctest::Approx(1.0));

    CHECK(model_constants(8).lambda_star == doctest::Approx(2.0));
    CHECK_THROWS_AS(model_constants(2), std::invalid_argument);
}

TEST_CASE("coercivity and Sobolev-type lower bound on random suite") {
    const RadialGrid g = make_grid(3, 12.0, 1024);
    const ModelConstants mc = model_constants(3);
    for (double mu : {0.0, 1.0 / 16.0, 1.0 / 8.0}) {
        const ModelParams params = ModelParams::make(3, mu);
        for (int k = 0; k < 200; ++k) {
            const RadialField v = random_test_field(g, 100 + k);
            const FunctionalReport r = evaluate(g, v, params);
            // A >= (1/4) l2^2, relative defect below 1e-3
            CHECK(r.a_val >= 0.25 * r.l2_sq * (1.0 - 1e-3));
            // S0 ||v||_{K,p+1}^2 + lambda_* ||v||_{K,2}^2 <= grad^2
            CHECK(mc.s0 * r.lp1 * r.lp1 + mc.lambda_star * r.l2_sq <=
                  r.grad_sq * (1.0 + 1e-3));
        }
    }
}

TEST_CASE("scaling laws are exact at quadrature level") {
    const RadialGrid g = make_grid(3, 12.0, 1024);
    const ModelParams params = ModelParams::make(3, 0.0625);
    const RadialField v = random_test_field(g, 42);
    RadialField w = v;
    const double s = 1.7;
    for (double& x : w.values) x *= s;
    const FunctionalReport rv = evaluate(g, v, params);
    const FunctionalReport rw = evaluate(g, w, params);
    CHECK(rw.a_val == doctest::Approx(s * s * rv.a_val).epsilon(1e-13));
    CHECK(rw.b_val == doctest::Approx(std::pow(s, params.p + 1.0) * rv.b_val).epsilon(1e-13));
    CHECK(rw.l2_sq == doctest::Approx(s * s * rv.l2_sq).epsilon(1e-13));
}

TEST_CASE("apply_linear_part pairs to A") {
    const RadialGrid g = make_grid(3, 12.0, 1024);
    const ModelParams params = ModelParams::make(3, 0.1);
    const RadialField v = random_test_field(g, 5);
    const FunctionalReport r = evaluate(g, v, params);
    CHECK(weighted_dot(g, apply_linear_part(g, params, v), v) ==
          doctest::Approx(r.a_val).epsilon(1e-12));
}
