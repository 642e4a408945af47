#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "hsp/selfsimilar.hpp"

using namespace hsp;

TEST_CASE("frame bookkeeping") {
    const FramePoint a = FramePoint::from_t(std::exp(1.0) - 1.0);
    CHECK(a.s == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a.rho == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    const FramePoint b = FramePoint::from_s(2.0);
    CHECK(b.t == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-14));
    CHECK(b.rho >= 1.0);
    CHECK_THROWS_AS(FramePoint::from_t(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(FramePoint::from_s(-0.1), std::invalid_argument);
}

TEST_CASE("t = 0 is the identity up to interpolation") {
    const RadialGrid g = make_grid(3, 12.0, 1024);
    const ModelParams params = ModelParams::make(3, 0.0);
    const RadialField u = sample_field(g, [](double r) { return std::exp(-r * r / 4.0); });
    const FrameMapResult v = to_selfsimilar(g, u, 0.0, g, params);
    CHECK(v.covered);
    for (int i = 0; i < g.m; ++i)
        CHECK(v.field.values[i] == doctest::Approx(u.values[i]).epsilon(1e-12));
}

TEST_CASE("analytic map of a Gaussian at s = 1") {
    // u = e^{-r^2/4}, t = e-1: v(y) = e^{1/4} e^{-e y^2/4} (beta = 1/4)
    const RadialGrid gx = make_grid(3, 20.0, 4096);
    const RadialGrid gy = make_grid(3, 10.0, 2048);
    const ModelParams params = ModelParams::make(3, 0.0);
    const RadialField u = sample_field(gx, [](double r) { return std::exp(-r * r / 4.0); });
    const FrameMapResult v = to_selfsimilar(gx, u, std::exp(1.0) - 1.0, gy, params);
    CHECK(v.covered);
    double err = 0.0;
    for (int i = 0; i < gy.m; ++i) {
        const double y = gy.nodes[i];
        const double exact = std::exp(0.25) * std::exp(-std::exp(1.0) * y * y / 4.0);
        err = std::max(err, std::fabs(v.field.values[i] - exact));
    }
    CHECK(err < 1e-5);
    // sup-norm homogeneity
    CHECK(max_abs(v.field) == doctest::Approx(std::pow(std::exp(1.0), 0.25) * max_abs(u))
                                  .epsilon(1e-3));
}

TEST_CASE("round trip within interpolation tolerance for s in [0, 3]") {
    const RadialGrid gy = make_grid(3, 10.0, 2048);
    const RadialGrid gx = make_grid(3, 45.0, 4096);
    const ModelParams params = ModelParams::make(3, 0.0);
    const RadialField v = sample_field(gy, [](double r) { return std::exp(-r * r / 4.0); });
    for (double s : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        const FrameMapResult u = from_selfsimilar(gy, v, s, gx, params);
        const FrameMapResult back =
            to_selfsimilar(gx, u.field, std::expm1(s), gy, params);
        CHECK(back.covered);
        double err = 0.0;
        for (int i = 0; i < gy.m; ++i)
            err = std::max(err, std::fabs(back.field.values[i] - v.values[i]));
        CHECK(err <= 1e-6);
    }
}

TEST_CASE("map commutes with scalar multiplication") {
    const RadialGrid gy = make_grid(3, 10.0, 1024);
    const RadialGrid gx = make_grid(3, 25.0, 2048);
    const ModelParams params = ModelParams::make(3, 0.0);
    const RadialField v = sample_field(gy, [](double r) { return std::exp(-r * r / 3.0); });
    RadialField v2 = v;
    for (double& x : v2.values) x *= 2.0;
    const FrameMapResult a = from_selfsimilar(gy, v, 1.0, gx, params);
    const FrameMapResult b = from_selfsimilar(gy, v2, 1.0, gx, params);
    for (int i = 0; i < gx.m; ++i)
        CHECK(b.field.values[i] == doctest::Approx(2.0 * a.field.values[i]).epsilon(1e-12));
}

TEST_CASE("coverage flag raised when the source grid is too small") {
    const RadialGrid gy = make_grid(3, 10.0, 1024);
    const RadialGrid gx = make_grid(3, 10.0, 1024);
    const ModelParams params = ModelParams::make(3, 0.0);
    const RadialField u = sample_field(gx, [](double r) { return std::exp(-r * r / 4.0); });
    // sqrt(1+t) r_max(y) > r_max(x) for t = e-1
    const FrameMapResult v = to_selfsimilar(gx, u, std::exp(1.0) - 1.0, gy, params);
    CHECK_FALSE(v.covered);
}
