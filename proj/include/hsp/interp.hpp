#pragma once

#include <vector>

#include "hsp/radial.hpp"

namespace hsp {

/// Shape-preserving cubic Hermite interpolant (Fritsch-Carlson slopes) of a
/// radial field.  The node set is extended by r = 0 (even-extension value: the
/// parabola with zero slope at the origin through the first two cells) and by
/// r = r_max (value 0, the truncation condition); evaluation beyond r_max
/// returns 0.
class MonotoneInterpolant {
  public:
    MonotoneInterpolant(const RadialGrid& grid, const RadialField& v);

    double operator()(double r) const;

  private:
    std::vector<double> x_, y_, d_;  // nodes, values, endpoint slopes
};

}  // namespace hsp
