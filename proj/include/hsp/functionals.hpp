#pragma once

#include <optional>

#include "hsp/radial.hpp"

namespace hsp {

/// Model parameters tied to a dimension: p = 2*-1 is the critical reaction
/// power and beta = (N-2)/4 = 1/(p-1) the self-similar scaling exponent.
struct ModelParams {
    int dim = 0;
    double mu = 0.0;
    double beta = 0.0;
    double p = 0.0;
    double two_star = 0.0;

    /// Throws std::invalid_argument for dim < 3 or mu outside [0, (N-2)^2/8].
    static ModelParams make(int dim, double mu);
};

/// All scalar functionals of one field at one parameter set.
/// energy = a_val/2 - b_val/two_star and nehari = a_val - b_val by construction.
struct FunctionalReport {
    double l2_sq = 0.0;    // ||v||_{K,2}^2
    double lp1 = 0.0;      // ||v||_{K,p+1}
    double grad_sq = 0.0;  // ||grad v||_{K,2}^2
    double hardy_sq = 0.0; // int v^2/r^2 K
    double a_val = 0.0;    // A = grad_sq - mu*hardy_sq - beta*l2_sq
    double b_val = 0.0;    // B = ||v||_{K,p+1}^{p+1}
    double energy = 0.0;   // E_K
    double nehari = 0.0;   // D_K
    std::optional<std::pair<double, double>> nehari_delta;  // (delta, delta*A - B)
};

FunctionalReport evaluate(const RadialGrid& grid, const RadialField& v,
                          const ModelParams& params,
                          std::optional<double> delta = std::nullopt);

struct ModelConstants {
    double beta, p, two_star;
    double c_n;          // (2/(N-2))^2, Hardy constant
    double lambda_1;     // N/2, first eigenvalue of the drift operator
    double lambda_star;  // max(1, N/4)
    double s0;           // Sobolev constant, pi N (N-2) (Gamma(N/2)/Gamma(N))^{2/N}
};

/// Throws std::invalid_argument for dim < 3.
ModelConstants model_constants(int dim);

/// T v = L v - beta v - mu v / r^2, the linear part of the flow;
/// A(v) = <T v, v>_K at the discrete level.
RadialField apply_linear_part(const RadialGrid& grid, const ModelParams& params,
                              const RadialField& v);

}  // namespace hsp
