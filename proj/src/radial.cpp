#include "hsp/radial.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hsp {

namespace {

std::uint64_t next_grid_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
}

double sphere_measure_of(int dim) {
    // |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2)
    return 2.0 * std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim);
}

}  // namespace

RadialGrid make_grid(int dim, double r_max, int m) {
    if (dim < 3) throw std::invalid_argument("make_grid: dimension must be >= 3");
    if (!(r_max > 0.0)) throw std::invalid_argument("make_grid: r_max must be positive");
    if (m < 16) throw std::invalid_argument("make_grid: need at least 16 cells");

    // Largest weight appears at the outer face.
    const double log_peak =
        r_max * r_max / 4.0 + (dim - 1) * std::log(r_max);
    if (log_peak > std::log(std::numeric_limits<double>::max()) - 8.0)
        throw std::invalid_argument("make_grid: r_max overflows the Gaussian weight");

    RadialGrid g;
    g.dim = dim;
    g.r_max = r_max;
    g.m = m;
    g.dr = r_max / m;
    g.sphere_measure = sphere_measure_of(dim);
    g.id = next_grid_id();
    g.nodes.resize(m);
    g.quad_weights.resize(m);
    g.face_weights.resize(m);
    for (int i = 0; i < m; ++i) {
        const double r = (i + 0.5) * g.dr;
        g.nodes[i] = r;
        g.quad_weights[i] =
            g.sphere_measure * std::pow(r, dim - 1) * std::exp(r * r / 4.0) * g.dr;
        const double rf = (i + 1) * g.dr;
        g.face_weights[i] =
            g.sphere_measure * std::pow(rf, dim - 1) * std::exp(rf * rf / 4.0) * g.dr;
    }
    return g;
}

RadialField zero_field(const RadialGrid& grid) {
    RadialField v;
    v.values.assign(grid.m, 0.0);
    v.grid_id = grid.id;
    return v;
}

RadialField sample_field(const RadialGrid& grid, const std::function<double(double)>& f) {
    RadialField v;
    v.values.resize(grid.m);
    for (int i = 0; i < grid.m; ++i) v.values[i] = f(grid.nodes[i]);
    v.grid_id = grid.id;
    return v;
}

bool field_finite(const RadialField& v) {
    for (double x : v.values)
        if (!std::isfinite(x)) return false;
    return true;
}

void check_field(const RadialGrid& grid, const RadialField& v) {
    if (v.grid_id != grid.id || static_cast<int>(v.values.size()) != grid.m)
        throw std::invalid_argument("field does not live on this grid");
    if (!field_finite(v))
        throw std::invalid_argument("field contains non-finite values");
}

double weighted_integral(const RadialGrid& grid, const RadialField& f) {
    check_field(grid, f);
    double s = 0.0;
    for (int i = 0; i < grid.m; ++i) s += f.values[i] * grid.quad_weights[i];
    return s;
}

double weighted_norm(const RadialGrid& grid, const RadialField& v, double q) {
    check_field(grid, v);
    const double two_star = 2.0 * grid.dim / (grid.dim - 2.0);
    if (q < 2.0 - 1e-12 || q > two_star + 1e-12)
        throw std::invalid_argument("weighted_norm: exponent outside [2, 2N/(N-2)]");
    double s = 0.0;
    for (int i = 0; i < grid.m; ++i)
        s += std::pow(std::fabs(v.values[i]), q) * grid.quad_weights[i];
    return std::pow(s, 1.0 / q);
}

double gradient_norm_sq(const RadialGrid& grid, const RadialField& v) {
    check_field(grid, v);
    double s = 0.0;
    for (int i = 0; i < grid.m; ++i) {
        const double outer = (i + 1 < grid.m) ? v.values[i + 1] : 0.0;
        const double d = (outer - v.values[i]) / grid.dr;
        s += grid.face_weights[i] * d * d;
    }
    return s;
}

double hardy_seminorm_sq(const RadialGrid& grid, const RadialField& v) {
    check_field(grid, v);
    double s = 0.0;
    for (int i = 0; i < grid.m; ++i) {
        const double r = grid.nodes[i];
        s += v.values[i] * v.values[i] / (r * r) * grid.quad_weights[i];
    }
    return s;
}

RadialField apply_L(const RadialGrid& grid, const RadialField& v) {
    check_field(grid, v);
    RadialField out = zero_field(grid);
    // Flux F_{i+1/2} = r^{N-1} K (v_{i+1} - v_i) / dr, F_{1/2} = 0 (radial
    // symmetry), v_{m+1} = 0 (truncation).  The cell weight r_i^{N-1} K(r_i) dr
    // equals quad_weights[i] / (omega_N dr) up to the shared omega_N factor,
    // which cancels against the face weights.
    for (int i = 0; i < grid.m; ++i) {
        const double outer = (i + 1 < grid.m) ? v.values[i + 1] : 0.0;
        const double flux_r = grid.face_weights[i] * (outer - v.values[i]) / grid.dr;
        const double flux_l =
            (i > 0) ? grid.face_weights[i - 1] * (v.values[i] - v.values[i - 1]) / grid.dr
                    : 0.0;
        out.values[i] = -(flux_r - flux_l) / (grid.quad_weights[i] * grid.dr);
    }
    return out;
}

double weighted_dot(const RadialGrid& grid, const RadialField& u, const RadialField& v) {
    check_field(grid, u);
    check_field(grid, v);
    double s = 0.0;
    for (int i = 0; i < grid.m; ++i) s += u.values[i] * v.values[i] * grid.quad_weights[i];
    return s;
}

double max_abs(const RadialField& v) {
    double s = 0.0;
    for (double x : v.values) s = std::max(s, std::fabs(x));
    return s;
}

}  // namespace hsp
