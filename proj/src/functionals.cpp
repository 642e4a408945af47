#include "hsp/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace hsp {

ModelParams ModelParams::make(int dim, double mu) {
    if (dim < 3) throw std::invalid_argument("ModelParams: dimension must be >= 3");
    const double mu_max = (dim - 2.0) * (dim - 2.0) / 8.0;
    if (mu < 0.0 || mu > mu_max)
        throw std::invalid_argument("ModelParams: mu outside [0, (N-2)^2/8]");
    ModelParams mp;
    mp.dim = dim;
    mp.mu = mu;
    mp.beta = (dim - 2.0) / 4.0;
    mp.p = (dim + 2.0) / (dim - 2.0);
    mp.two_star = 2.0 * dim / (dim - 2.0);
    return mp;
}

FunctionalReport evaluate(const RadialGrid& grid, const RadialField& v,
                          const ModelParams& params, std::optional<double> delta) {
    if (params.dim != grid.dim)
        throw std::invalid_argument("evaluate: params and grid dimensions differ");
    FunctionalReport r;
    r.l2_sq = weighted_dot(grid, v, v);
    r.lp1 = weighted_norm(grid, v, params.p + 1.0);
    r.grad_sq = gradient_norm_sq(grid, v);
    r.hardy_sq = hardy_seminorm_sq(grid, v);
    r.a_val = r.grad_sq - params.mu * r.hardy_sq - params.beta * r.l2_sq;
    r.b_val = std::pow(r.lp1, params.p + 1.0);
    r.energy = 0.5 * r.a_val - r.b_val / params.two_star;
    r.nehari = r.a_val - r.b_val;
    if (delta) r.nehari_delta = {*delta, *delta * r.a_val - r.b_val};
    return r;
}

ModelConstants model_constants(int dim) {
    if (dim < 3) throw std::invalid_argument("model_constants: dimension must be >= 3");
    ModelConstants c;
    c.beta = (dim - 2.0) / 4.0;
    c.p = (dim + 2.0) / (dim - 2.0);
    c.two_star = 2.0 * dim / (dim - 2.0);
    c.c_n = std::pow(2.0 / (dim - 2.0), 2.0);
    c.lambda_1 = dim / 2.0;
    c.lambda_star = std::max(1.0, dim / 4.0);
    c.s0 = M_PI * dim * (dim - 2.0) *
           std::exp((2.0 / dim) * (std::lgamma(0.5 * dim) - std::lgamma(double(dim))));
    return c;
}

RadialField apply_linear_part(const RadialGrid& grid, const ModelParams& params,
                              const RadialField& v) {
    RadialField out = apply_L(grid, v);
    for (int i = 0; i < grid.m; ++i) {
        const double r = grid.nodes[i];
        out.values[i] -= (params.beta + params.mu / (r * r)) * v.values[i];
    }
    return out;
}

}  // namespace hsp
