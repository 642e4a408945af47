#pragma once

#include <vector>

#include "hsp/radial.hpp"

namespace hsp {

/// Exponent pair for the Hardy optimality witnesses: gamma = (N-2+2 eps)/2,
/// so 1/gamma^2 -> C_N = (2/(N-2))^2 as eps -> 0.
struct WitnessParams {
    double epsilon = 0.0;
    double gamma = 0.0;

    /// Throws std::invalid_argument for eps <= 0 or dim < 3.
    static WitnessParams make(int dim, double epsilon);
};

/// Q(v) = hardy_seminorm_sq / gradient_norm_sq.  Throws on the zero field.
double hardy_quotient(const RadialGrid& grid, const RadialField& v);

/// Piecewise witness: 1 on [0,1], r^{-gamma} e^{-r^2/4} beyond.  As written the
/// two branches mismatch by e^{-1/4} at r = 1; the default variant rescales the
/// outer branch by e^{1/4} to restore continuity (a constant factor on one
/// branch does not change the asymptotics of the quotient).  Set
/// continuous = false for the raw discontinuous profile.
/// Requires grid r_max >= 6 so the tail is represented.
RadialField witness_field(const RadialGrid& grid, const WitnessParams& w,
                          bool continuous = true);

/// Origin-concentrating witness used by the sweep: r^{-theta} on (0,1] with
/// theta = (N-2)/2 - eps/4, matched continuously to r^{-gamma} e^{-(r^2-1)/4}
/// beyond.  Its quotient increases monotonically as eps decreases and
/// approaches C_N from below (logarithmically in the grid cutoff r_1).
RadialField origin_witness(const RadialGrid& grid, const WitnessParams& w);

struct SweepRow {
    double epsilon;
    double gamma;
    double lower_bound;  // 1/gamma^2
    double quotient;     // Q of the origin witness
};

/// One row per eps.  Requires eps_list positive and strictly decreasing and
/// grid.dr <= 0.05 (coarser grids turn the quotient into quadrature noise).
std::vector<SweepRow> optimality_sweep(const RadialGrid& grid,
                                       const std::vector<double>& eps_list);

}  // namespace hsp
