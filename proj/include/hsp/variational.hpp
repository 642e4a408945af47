#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hsp/functionals.hpp"
#include "hsp/radial.hpp"

namespace hsp {

/// Well geometry derived from an S_K estimate.  delta ranges over
/// (0, (p+1)/2); d(delta) increases on (0,1], decreases beyond, and vanishes
/// at (p+1)/2.
struct WellConstants {
    int dim = 0;
    double p = 0.0;
    double s_k = 0.0;    // estimated best quotient inf A / ||v||_{K,p+1}^2
    double depth = 0.0;  // d = (1/N) s_k^{N/2}

    double a_of(double delta) const;     // 1/2 - delta/(p+1)
    double d_of(double delta) const;     // a(delta) delta^{(N-2)/2} s_k^{N/2}
    double r_sq_of(double delta) const;  // delta^{(N-2)/2} s_k^{N/2}; the
                                         // threshold compared against A(v)
};

struct WellClassification {
    bool on_nehari = false;       // D_K = 0 (within tolerance), nonzero field
    bool in_nehari_plus = false;  // D_K > 0
    bool in_nehari_minus = false; // D_K < 0
    bool in_W_delta = false;      // D_{K,delta} > 0 and E < d(delta), or v = 0
    bool in_V_delta = false;      // D_{K,delta} < 0 and E < d(delta)
    bool in_B_delta = false;      // A < r^2(delta)
    bool below_depth = false;     // E < d
    std::optional<std::pair<double, double>> delta_roots;  // d(delta) = E, present iff 0 < E < d
};

/// s(delta) = (delta A / B)^{1/(p-1)}: the ray scale with
/// D_{K,delta}(s v) = 0.  Throws when A <= 0 or B <= 0.
double nehari_scaling(const FunctionalReport& report, const ModelParams& params,
                      double delta);

struct RayPeak {
    double s_star;  // (A/B)^{1/(p-1)}, the fibering maximum along s -> E(s v)
    double peak;    // E_K(s_star v) = (1/N) (A / B^{2/(p+1)})^{N/2}
};

/// Throws when A <= 0 or B <= 0.
RayPeak ray_peak(const FunctionalReport& report, const ModelParams& params);

struct SKDescent {
    double value = 0.0;      // best quotient found (an upper bound on the
                             // discrete infimum)
    double grad_norm = 0.0;  // K-norm of the projected quotient gradient at
                             // the minimizer, quality indicator
    bool converged = false;
    bool below_half_s0 = false;  // flags a value under S0/2, which the
                                 // quotient cannot reach; signals a
                                 // discretization problem
    RadialField minimizer;
    std::vector<RadialField> iterates;          // snapshots of the best restart
    std::vector<double> iterate_quotients;
};

/// Projected Armijo descent of A(v)/||v||_{K,p+1}^2 on the unit
/// ||.||_{K,p+1} sphere from `restarts` random Gaussian-times-polynomial
/// seeds.  Deterministic given `seed`.
SKDescent estimate_SK(const RadialGrid& grid, const ModelParams& params,
                      int restarts, std::uint64_t seed = 12345,
                      int max_iters = 2000);

/// Runs estimate_SK and assembles the well geometry.
WellConstants well_constants(const RadialGrid& grid, const ModelParams& params,
                             int restarts = 8, std::uint64_t seed = 12345);

/// Membership flags for one field.  delta_roots are found by bisection on the
/// two monotone branches of d(delta), absolute tolerance 1e-10, and omitted
/// when E_K is outside (0, d).  `zero_field` marks the |v| = 0 convention
/// (zero belongs to W_delta).
WellClassification classify(const FunctionalReport& report,
                            const WellConstants& consts,
                            const ModelParams& params, double delta,
                            bool zero_field = false);

struct LambdaBounds {
    double lambda_upper = 0.0;   // min ||.||_{K,2} over keepers: upper bound
                                 // for the level-set infimum
    double Lambda_lower = 0.0;   // max over keepers: lower bound for the sup
    int keepers = 0;
};

/// Projects `samples` random perturbations of the descent minimizer onto the
/// Nehari manifold (delta = 1) and keeps those with E_K < alpha (keepers
/// cluster near the quotient minimizer, the only region reaching low levels).
/// Requires alpha > depth; throws an empty-sample error when nothing survives.
LambdaBounds empirical_lambda_bounds(const RadialGrid& grid,
                                     const ModelParams& params,
                                     const WellConstants& consts, double alpha,
                                     int samples, std::uint64_t seed = 12345);

/// High-energy blow-up condition, squared-norm reading:
/// (8(p+1)/(p-1)) E_K(v) <= ||v||_{K,2}^2 < ((p-1)/(2(p+1))) B(v).
bool thm52_predicate(const FunctionalReport& report, const ModelParams& params);

/// Random test field P(r) e^{-c r^2} with a low-degree random polynomial P and
/// c in [0.3, 1.0]; the family used by the inequality suites.
RadialField random_test_field(const RadialGrid& grid, std::uint64_t seed);

}  // namespace hsp
