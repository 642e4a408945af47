#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "hsp/hardy.hpp"
#include "hsp/variational.hpp"

using namespace hsp;

TEST_CASE("WitnessParams formula and validation") {
    const WitnessParams w = WitnessParams::make(3, 0.5);
    CHECK(w.gamma == doctest::Approx(1.0));  // (N-2+2 eps)/2
    CHECK(WitnessParams::make(4, 0.5).gamma == doctest::Approx(1.5));
    CHECK(w.gamma > 0.5 * (3 - 2));
    CHECK_THROWS_AS(WitnessParams::make(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(WitnessParams::make(2, 0.5), std::invalid_argument);
}

TEST_CASE("hardy_quotient: Gaussian value, zero rejection, C_N bound") {
    const RadialGrid g = make_grid(3, 12.0, 2048);
    const RadialField v = sample_field(g, [](double r) { return std::exp(-r * r / 4.0); });
    CHECK(hardy_quotient(g, v) == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
    CHECK_THROWS_AS(hardy_quotient(g, zero_field(g)), std::invalid_argument);
    for (int k = 0; k < 200; ++k) {
        const RadialField f = random_test_field(g, 900 + k);
        CHECK(hardy_quotient(g, f) <= 4.0 * (1.0 + 1e-3));
    }
}

TEST_CASE("support away from the origin caps the quotient pointwise") {
    const RadialGrid g = make_grid(3, 12.0, 2048);
    const RadialField bump = sample_field(g, [](double r) {
        if (r <= 4.0 || r >= 6.0) return 0.0;
        const double t = (r - 4.0) * (6.0 - r);
        return t * t;
    });
    CHECK(hardy_quotient(g, bump) <= 1.0 / 16.0 + 1e-4);
}

TEST_CASE("witness_field branches and continuity handling") {
    const RadialGrid g = make_grid(3, 12.0, 2048);
    const WitnessParams w = WitnessParams::make(3, 0.5);  // gamma = 1

    const RadialField vc = witness_field(g, w);  // continuous variant
    const RadialField vr = witness_field(g, w, /*continuous=*/false);
    for (int i = 0; i < g.m; ++i) {
        const double r = g.nodes[i];
        if (r <= 1.0) {
            CHECK(vc.values[i] == 1.0);
            CHECK(vr.values[i] == 1.0);
        } else {
            const double outer = std::pow(r, -w.gamma) * std::exp(-r * r / 4.0);
            CHECK(vr.values[i] == doctest::Approx(outer).epsilon(1e-14));
            CHECK(vc.values[i] == doctest::Approx(std::exp(0.25) * outer).epsilon(1e-14));
        }
    }
    // value just beyond r = 2 for the continuous variant: e^{1/4} 2^{-1} e^{-1}
    int i2 = int(2.0 / g.dr);
    CHECK(vc.values[i2] == doctest::Approx(std::exp(0.25) * 0.5 * std::exp(-1.0)).epsilon(1e-2));
    // continuous variant has no jump at r = 1; the raw one jumps by e^{-1/4}
    int j = 0;
    while (g.nodes[j] <= 1.0) ++j;  // first node past the branch boundary
    CHECK(std::fabs(vc.values[j] - vc.values[j - 1]) < 0.05);
    CHECK(vr.values[j] / vr.values[j - 1] == doctest::Approx(std::exp(-0.25)).epsilon(1e-2));

    const RadialGrid small = make_grid(3, 5.0, 256);
    CHECK_THROWS_AS(witness_field(small, w), std::invalid_argument);
}

TEST_CASE("witness limit eps -> infinity approaches the unit-ball indicator") {
    const RadialGrid g = make_grid(3, 12.0, 1024);
    const RadialField v = witness_field(g, WitnessParams::make(3, 200.0));
    for (int i = 0; i < g.m; ++i) {
        if (g.nodes[i] <= 1.0)
            CHECK(v.values[i] == 1.0);
        else if (g.nodes[i] > 1.05)
            CHECK(std::fabs(v.values[i]) < 1e-3);
    }
}

TEST_CASE("optimality_sweep: frozen quotients, monotonicity, sandwich") {
    const RadialGrid g = make_grid(3, 12.0, 2048);
    const std::vector<double> eps{1.0, 0.3, 0.1, 0.03, 0.01};
    const auto rows = optimality_sweep(g, eps);
    REQUIRE(rows.size() == 5);
    // frozen oracle values at N=3, r_max=12, m=2048
    const double expect[5] = {0.824613, 1.164554, 1.249102, 1.275478, 1.282673};
    for (int i = 0; i < 5; ++i) {
        CHECK(rows[i].quotient == doctest::Approx(expect[i]).epsilon(1e-5));
        CHECK(rows[i].lower_bound == doctest::Approx(1.0 / (rows[i].gamma * rows[i].gamma)));
        CHECK(rows[i].quotient <= 4.0 + 1e-6);  // never exceeds C_N
        if (i > 0) CHECK(rows[i].quotient >= rows[i - 1].quotient - 1e-12);
    }
}

TEST_CASE("sweep rejects bad inputs") {
    const RadialGrid coarse = make_grid(3, 12.0, 128);  // dr ~ 0.094
    CHECK_THROWS_AS(optimality_sweep(coarse, {1.0, 0.1}), std::invalid_argument);
    const RadialGrid g = make_grid(3, 12.0, 1024);
    CHECK_THROWS_AS(optimality_sweep(g, {0.1, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(optimality_sweep(g, {1.0, -0.1}), std::invalid_argument);
}

TEST_CASE("literal piecewise witness quotients (frozen; they recede from C_N)") {
    // The literal piecewise profile does not concentrate at the origin and its
    // quotient decreases as eps shrinks; kept as a documented negative result.
    const RadialGrid g = make_grid(3, 12.0, 2048);
    const double expect[5] = {0.524936, 0.475662, 0.437069, 0.421362, 0.416701};
    const double eps[5] = {1.0, 0.3, 0.1, 0.03, 0.01};
    for (int i = 0; i < 5; ++i) {
        const RadialField v = witness_field(g, WitnessParams::make(3, eps[i]));
        CHECK(hardy_quotient(g, v) == doctest::Approx(expect[i]).epsilon(1e-4));
    }
}

TEST_CASE("dimension-4 lower bound tends to C_4 = 1") {
    CHECK(1.0 / std::pow(WitnessParams::make(4, 1e-9).gamma, 2.0) == doctest::Approx(1.0).epsilon(1e-6));
}
