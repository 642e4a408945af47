#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace hsp {

/// Cell-centered radial discretization of R^N carrying the Gaussian-weight
/// quadrature q_i = omega_N r_i^{N-1} e^{r_i^2/4} dr.  Nodes sit at
/// r_i = (i - 1/2) dr, so the inverse-square singularity at r = 0 is never
/// sampled.  Fields on the grid are truncated with v = 0 at r_max.
struct RadialGrid {
    int dim = 0;
    double r_max = 0.0;
    int m = 0;
    double dr = 0.0;
    double sphere_measure = 0.0;       // |S^{N-1}|
    std::vector<double> nodes;         // cell centers, size m
    std::vector<double> quad_weights;  // q_i, size m
    std::vector<double> face_weights;  // omega_N r^{N-1} K(r) dr at faces r = i dr, i = 1..m
    std::uint64_t id = 0;
};

/// Values of a radial function at the grid nodes.
struct RadialField {
    std::vector<double> values;
    std::uint64_t grid_id = 0;
};

/// Builds a grid.  Throws std::invalid_argument for dim < 3, m < 16,
/// nonpositive r_max, or an r_max whose weight e^{r_max^2/4} r_max^{dim-1}
/// overflows double precision.
RadialGrid make_grid(int dim, double r_max, int m);

RadialField zero_field(const RadialGrid& grid);
RadialField sample_field(const RadialGrid& grid, const std::function<double(double)>& f);

bool field_finite(const RadialField& v);

/// Throws std::invalid_argument if the field does not live on the grid or
/// contains non-finite values.
void check_field(const RadialGrid& grid, const RadialField& v);

/// Midpoint quadrature of f against the Gaussian weight: sum_i f(r_i) q_i.
double weighted_integral(const RadialGrid& grid, const RadialField& f);

/// ||v||_{K,q} for q in [2, 2N/(N-2)].  Throws outside that range.
double weighted_norm(const RadialGrid& grid, const RadialField& v, double q);

/// ||nabla v||_{K,2}^2 via face differences, with zero flux at r = 0 and
/// v = 0 at r_max.  Coincides exactly with <L v, v>_K of apply_L.
double gradient_norm_sq(const RadialGrid& grid, const RadialField& v);

/// sum_i v_i^2 / r_i^2 q_i  (the weighted Hardy seminorm, squared).
double hardy_seminorm_sq(const RadialGrid& grid, const RadialField& v);

/// Divergence-form drift operator L v = -(1/K) div(K grad v) as a three-point
/// stencil.  Self-adjoint against weighted_integral by construction.
RadialField apply_L(const RadialGrid& grid, const RadialField& v);

/// <u, v>_K = sum_i u_i v_i q_i.
double weighted_dot(const RadialGrid& grid, const RadialField& u, const RadialField& v);

double max_abs(const RadialField& v);

}  // namespace hsp
