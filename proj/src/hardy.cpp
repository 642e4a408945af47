#include "hsp/hardy.hpp"

#include <cmath>
#include <stdexcept>

namespace hsp {

WitnessParams WitnessParams::make(int dim, double epsilon) {
    if (dim < 3) throw std::invalid_argument("WitnessParams: dimension must be >= 3");
    if (!(epsilon > 0.0)) throw std::invalid_argument("WitnessParams: epsilon must be positive");
    WitnessParams w;
    w.epsilon = epsilon;
    w.gamma = (dim - 2.0 + 2.0 * epsilon) / 2.0;
    return w;
}

double hardy_quotient(const RadialGrid& grid, const RadialField& v) {
    const double g = gradient_norm_sq(grid, v);
    if (g == 0.0) throw std::invalid_argument("hardy_quotient: zero field");
    return hardy_seminorm_sq(grid, v) / g;
}

RadialField witness_field(const RadialGrid& grid, const WitnessParams& w,
                          bool continuous) {
    if (grid.r_max < 6.0)
        throw std::invalid_argument("witness_field: r_max must be >= 6");
    const double scale = continuous ? std::exp(0.25) : 1.0;
    return sample_field(grid, [&](double r) {
        if (r <= 1.0) return 1.0;
        return scale * std::pow(r, -w.gamma) * std::exp(-r * r / 4.0);
    });
}

RadialField origin_witness(const RadialGrid& grid, const WitnessParams& w) {
    if (grid.r_max < 6.0)
        throw std::invalid_argument("origin_witness: r_max must be >= 6");
    const double theta = (grid.dim - 2.0) / 2.0 - w.epsilon / 4.0;
    if (!(theta > 0.0))
        throw std::invalid_argument("origin_witness: epsilon too large for this dimension");
    return sample_field(grid, [&](double r) {
        if (r <= 1.0) return std::pow(r, -theta);
        return std::pow(r, -w.gamma) * std::exp(-(r * r - 1.0) / 4.0);
    });
}

std::vector<SweepRow> optimality_sweep(const RadialGrid& grid,
                                       const std::vector<double>& eps_list) {
    if (grid.dr > 0.05)
        throw std::invalid_argument("optimality_sweep: grid too coarse (dr > 0.05)");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0))
            throw std::invalid_argument("optimality_sweep: eps must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("optimality_sweep: eps list must be strictly decreasing");
    }
    std::vector<SweepRow> rows;
    rows.reserve(eps_list.size());
    for (double eps : eps_list) {
        const WitnessParams w = WitnessParams::make(grid.dim, eps);
        SweepRow row;
        row.epsilon = eps;
        row.gamma = w.gamma;
        row.lower_bound = 1.0 / (w.gamma * w.gamma);
        row.quotient = hardy_quotient(grid, origin_witness(grid, w));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hsp
