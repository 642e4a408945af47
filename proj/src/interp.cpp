#include "hsp/interp.hpp"

#include <algorithm>
#include <cmath>

namespace hsp {

namespace {

// Fritsch-Carlson slope limiting: harmonic-mean interior slopes where the
// secants agree in sign, zero at local extrema, clipped one-sided formulas at
// the ends.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> h(n - 1), s(n - 1), d(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        s[i] = (y[i + 1] - y[i]) / h[i];
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (s[i - 1] * s[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
        }
    }
    auto end_slope = [](double h0, double h1, double s0, double s1) {
        double d0 = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
        if (d0 * s0 <= 0.0)
            d0 = 0.0;
        else if (s0 * s1 <= 0.0 && std::fabs(d0) > 3.0 * std::fabs(s0))
            d0 = 3.0 * s0;
        return d0;
    };
    d[0] = end_slope(h[0], h[1], s[0], s[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], s[n - 2], s[n - 3]);
    return d;
}

}  // namespace

MonotoneInterpolant::MonotoneInterpolant(const RadialGrid& grid, const RadialField& v) {
    check_field(grid, v);
    const int m = grid.m;
    x_.reserve(m + 2);
    y_.reserve(m + 2);
    // Even-extension value at r = 0: parabola a + b r^2 through the first two
    // cell centers.
    const double r1 = grid.nodes[0], r2 = grid.nodes[1];
    const double v0 =
        (v.values[0] * r2 * r2 - v.values[1] * r1 * r1) / (r2 * r2 - r1 * r1);
    x_.push_back(0.0);
    y_.push_back(v0);
    for (int i = 0; i < m; ++i) {
        x_.push_back(grid.nodes[i]);
        y_.push_back(v.values[i]);
    }
    x_.push_back(grid.r_max);
    y_.push_back(0.0);
    d_ = pchip_slopes(x_, y_);
}

double MonotoneInterpolant::operator()(double r) const {
    if (r >= x_.back()) return 0.0;
    if (r <= 0.0) return y_.front();
    const auto it = std::upper_bound(x_.begin(), x_.end(), r);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double t = (r - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

}  // namespace hsp
