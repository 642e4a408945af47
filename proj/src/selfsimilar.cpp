#include "hsp/selfsimilar.hpp"

#include <cmath>
#include <stdexcept>

#include "hsp/interp.hpp"

namespace hsp {

FramePoint FramePoint::from_t(double t) {
    if (t < 0.0) throw std::invalid_argument("FramePoint: t must be >= 0");
    return {t, std::log1p(t), 1.0 + t};
}

FramePoint FramePoint::from_s(double s) {
    if (s < 0.0) throw std::invalid_argument("FramePoint: s must be >= 0");
    return {std::expm1(s), s, std::exp(s)};
}

FrameMapResult to_selfsimilar(const RadialGrid& grid_x, const RadialField& u,
                              double t, const RadialGrid& grid_y,
                              const ModelParams& params) {
    const FramePoint fp = FramePoint::from_t(t);
    const double amp = std::pow(fp.rho, params.beta);
    const double stretch = std::sqrt(fp.rho);
    MonotoneInterpolant interp(grid_x, u);
    FrameMapResult out;
    out.field = sample_field(grid_y, [&](double y) { return amp * interp(stretch * y); });
    out.covered = stretch * grid_y.r_max <= grid_x.r_max;
    return out;
}

FrameMapResult from_selfsimilar(const RadialGrid& grid_y, const RadialField& v,
                                double s, const RadialGrid& grid_x,
                                const ModelParams& params) {
    const FramePoint fp = FramePoint::from_s(s);
    const double amp = std::pow(fp.rho, -params.beta);
    const double shrink = 1.0 / std::sqrt(fp.rho);
    MonotoneInterpolant interp(grid_y, v);
    FrameMapResult out;
    out.field = sample_field(grid_x, [&](double x) { return amp * interp(shrink * x); });
    out.covered = shrink * grid_x.r_max <= grid_y.r_max;
    return out;
}

}  // namespace hsp
