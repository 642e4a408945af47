#pragma once

#include "hsp/functionals.hpp"
#include "hsp/radial.hpp"

namespace hsp {

/// Time bookkeeping for the change of variables s = log(1+t), rho = 1+t = e^s.
struct FramePoint {
    double t = 0.0;
    double s = 0.0;
    double rho = 1.0;

    static FramePoint from_t(double t);
    static FramePoint from_s(double s);
};

struct FrameMapResult {
    RadialField field;
    bool covered = true;  // false when the source grid did not cover the
                          // requested radii and the tail was taken as zero
};

/// v(y) = (1+t)^beta u(sqrt(1+t) y), resampled onto grid_y by shape-preserving
/// cubic interpolation with zero extension beyond r_max(grid_x).
FrameMapResult to_selfsimilar(const RadialGrid& grid_x, const RadialField& u,
                              double t, const RadialGrid& grid_y,
                              const ModelParams& params);

/// u(x) = rho^{-beta} v(x / sqrt(rho)), rho = e^s.  Inverse of to_selfsimilar
/// up to interpolation error.
FrameMapResult from_selfsimilar(const RadialGrid& grid_y, const RadialField& v,
                                double s, const RadialGrid& grid_x,
                                const ModelParams& params);

}  // namespace hsp
