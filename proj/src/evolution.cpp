#include "hsp/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace hsp {

const char* to_string(OutcomeLabel label) {
    switch (label) {
        case OutcomeLabel::GLOBAL_DECAY: return "GLOBAL_DECAY";
        case OutcomeLabel::BLOW_UP: return "BLOW_UP";
        case OutcomeLabel::HORIZON_REACHED: return "HORIZON_REACHED";
        case OutcomeLabel::INTEGRATOR_FAILURE: return "INTEGRATOR_FAILURE";
    }
    return "UNKNOWN";
}

RadialField imex_step(const RadialGrid& grid, const RadialField& v,
                      const ModelParams& params, double dt,
                      const RadialField* source) {
    if (!(dt > 0.0)) throw std::invalid_argument("imex_step: dt must be positive");
    check_field(grid, v);
    const int m = grid.m;

    // (I + dt (L - beta - mu/r^2)) v_new = v + dt (|v|^{p-1} v + g).
    // L stencil row i: [(fw_i + fw_{i-1}) v_i - fw_i v_{i+1} - fw_{i-1} v_{i-1}]
    // / (q_i dr^2), with fw_{-1} = 0 (zero flux at the origin) and v_m = 0.
    std::vector<double> lower(m, 0.0), diag(m, 0.0), upper(m, 0.0), rhs(m, 0.0);
    for (int i = 0; i < m; ++i) {
        const double scale = dt / (grid.quad_weights[i] * grid.dr * grid.dr);
        const double fw_r = grid.face_weights[i];
        const double fw_l = (i > 0) ? grid.face_weights[i - 1] : 0.0;
        const double r = grid.nodes[i];
        diag[i] = 1.0 + scale * (fw_r + fw_l) -
                  dt * (params.beta + params.mu / (r * r));
        if (i + 1 < m) upper[i] = -scale * fw_r;
        if (i > 0) lower[i] = -scale * fw_l;
        const double vi = v.values[i];
        rhs[i] = vi + dt * std::pow(std::fabs(vi), params.p - 1.0) * vi;
        if (source) rhs[i] += dt * source->values[i];
    }

    // Thomas elimination.  The matrix is I + dt T with T positive definite in
    // the weighted inner product, so the pivots stay positive.
    RadialField out = zero_field(grid);
    std::vector<double> cp(m, 0.0);
    double piv = diag[0];
    if (piv == 0.0) throw std::runtime_error("imex_step: singular pivot");
    cp[0] = upper[0] / piv;
    out.values[0] = rhs[0] / piv;
    for (int i = 1; i < m; ++i) {
        piv = diag[i] - lower[i] * cp[i - 1];
        if (piv == 0.0) throw std::runtime_error("imex_step: singular pivot");
        cp[i] = upper[i] / piv;
        out.values[i] = (rhs[i] - lower[i] * out.values[i - 1]) / piv;
    }
    for (int i = m - 2; i >= 0; --i) out.values[i] -= cp[i] * out.values[i + 1];
    return out;
}

EvolutionResult evolve(const RadialGrid& grid, const RadialField& v0,
                       const ModelParams& params, const EvolutionConfig& config) {
    check_field(grid, v0);
    if (!(config.dt0 > 0.0) || config.dt0 > 1e-2)
        throw std::invalid_argument("evolve: dt0 must lie in (0, 1e-2]");
    if (!(config.s_max > 0.0)) throw std::invalid_argument("evolve: s_max must be positive");
    if (config.sample_every < 1)
        throw std::invalid_argument("evolve: sample_every must be >= 1");
    const double l2_sq0 = weighted_dot(grid, v0, v0);
    const double linf0 = max_abs(v0);
    if (l2_sq0 > 0.0 &&
        (config.blowup_l2sq < 1e3 * l2_sq0 || config.blowup_linf < 1e3 * linf0))
        throw std::invalid_argument("evolve: blow-up thresholds must exceed the initial data by 1e3x");

    EvolutionResult res;
    RadialField v = v0;
    double s = 0.0, f_cum = 0.0, l2_sq = l2_sq0, vdot = 0.0;
    long step = 0;
    std::deque<double> ring;  // recent sampled l2_sq, growth witness for blow-up

    auto push_sample = [&]() {
        const FunctionalReport r = evaluate(grid, v, params);
        TraceSample t;
        t.s = s;
        t.l2_sq = r.l2_sq;
        t.a_val = r.a_val;
        t.b_val = r.b_val;
        t.energy = r.energy;
        t.nehari = r.nehari;
        t.vdot_l2sq = vdot;
        t.f_cum = f_cum;
        res.trace.push_back(t);
        ring.push_back(r.l2_sq);
        if (ring.size() > 10) ring.pop_front();
        if (config.snapshot_every_samples > 0 &&
            (res.trace.size() - 1) % config.snapshot_every_samples == 0)
            res.snapshots.push_back({s, vdot, v});
    };
    push_sample();

    auto finish = [&](OutcomeLabel label, const std::string& detail) {
        res.outcome.label = label;
        res.outcome.s_final = s;
        res.outcome.detail = detail;
        res.final_field = v;
        if (config.snapshot_every_samples > 0 &&
            (res.snapshots.empty() || res.snapshots.back().s < s))
            res.snapshots.push_back({s, vdot, v});
        return res;
    };

    while (s < config.s_max) {
        double dt = config.dt0;
        if (config.adapt) dt /= 1.0 + std::pow(max_abs(v), params.p - 1.0);
        if (dt < 1e-30) {
            std::ostringstream os;
            os << "step size underflow (dt=" << dt << ") at s=" << s;
            return finish(OutcomeLabel::INTEGRATOR_FAILURE, os.str());
        }
        RadialField v_new;
        try {
            v_new = imex_step(grid, v, params, dt);
        } catch (const std::runtime_error& e) {
            return finish(OutcomeLabel::INTEGRATOR_FAILURE, e.what());
        }
        if (!field_finite(v_new))
            return finish(OutcomeLabel::INTEGRATOR_FAILURE, "non-finite field");

        double diff_sq = 0.0;
        for (int i = 0; i < grid.m; ++i) {
            const double d = v_new.values[i] - v.values[i];
            diff_sq += d * d * grid.quad_weights[i];
        }
        vdot = diff_sq / (dt * dt);
        v = std::move(v_new);
        s += dt;
        ++step;
        const double l2_new = weighted_dot(grid, v, v);
        f_cum += 0.5 * (l2_sq + l2_new) * dt;
        l2_sq = l2_new;

        const bool crossed = l2_sq > config.blowup_l2sq || max_abs(v) > config.blowup_linf;
        if (step % config.sample_every == 0 || crossed) {
            push_sample();
            if (crossed && ring.size() >= 2 && ring.back() > ring.front()) {
                std::ostringstream os;
                os << "threshold crossed, l2_sq=" << l2_sq << " at s=" << s;
                return finish(OutcomeLabel::BLOW_UP, os.str());
            }
            if (l2_sq0 > config.decay_l2sq && l2_sq < config.decay_l2sq) {
                std::ostringstream os;
                os << "l2_sq fell below " << config.decay_l2sq << " at s=" << s;
                return finish(OutcomeLabel::GLOBAL_DECAY, os.str());
            }
        }
    }
    if (res.trace.back().s < s) push_sample();
    std::ostringstream os;
    os << "horizon s=" << s << " reached, l2_sq=" << l2_sq;
    return finish(OutcomeLabel::HORIZON_REACHED, os.str());
}

double energy_identity_defect(const std::vector<TraceSample>& trace) {
    const std::size_t n = trace.size();
    if (n < 2) throw std::invalid_argument("energy_identity_defect: need >= 2 samples");
    // inv_j = E(s_j) + sum_{i<=j} vdot_i (s_i - s_{i-1}); constant along an
    // exact trajectory (the dissipation sum matches the backward-difference
    // vdot of the scheme).
    double diss = 0.0;
    std::vector<double> inv(n);
    inv[0] = trace[0].energy;
    for (std::size_t i = 1; i < n; ++i) {
        diss += trace[i].vdot_l2sq * (trace[i].s - trace[i - 1].s);
        inv[i] = trace[i].energy + diss;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double denom = std::fabs(trace[i].energy) + 1.0;
        for (std::size_t j = i + 1; j < n; ++j)
            worst = std::max(worst, std::fabs(inv[j] - inv[i]) / denom);
    }
    return worst;
}

DecayFit fit_decay_rate(const std::vector<TraceSample>& trace,
                        const WellConstants& consts, double E0) {
    if (!(E0 > 0.0) || !(E0 < consts.depth))
        throw std::invalid_argument("fit_decay_rate: need 0 < E0 < depth");
    if (trace.size() < 4 || !(trace.back().l2_sq < trace.front().l2_sq))
        throw std::invalid_argument("fit_decay_rate: trace is not decaying");

    // delta_1: the small root of d(delta) = E0 on the increasing branch.
    double lo = 1e-14, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
        const double mid = 0.5 * (lo + hi);
        (consts.d_of(mid) < E0 ? lo : hi) = mid;
    }
    const double delta1 = 0.5 * (lo + hi);

    DecayFit fit;
    fit.predicted_rate = 0.5 * (1.0 - delta1);

    // Least-squares slope of log l2_sq over the trailing half.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int npts = 0;
    for (std::size_t i = trace.size() / 2; i < trace.size(); ++i) {
        if (!(trace[i].l2_sq > 0.0)) continue;
        const double x = trace[i].s, y = std::log(trace[i].l2_sq);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++npts;
    }
    if (npts >= 2) {
        const double denom = npts * sxx - sx * sx;
        if (denom > 0.0) fit.fitted_rate = -(npts * sxy - sx * sy) / denom;
    }

    const double l20 = trace.front().l2_sq;
    fit.satisfied = true;
    for (const TraceSample& t : trace) {
        const double envelope = l20 * std::exp(-fit.predicted_rate * t.s) * 1.05;
        if (t.l2_sq > envelope) { fit.satisfied = false; break; }
    }
    return fit;
}

BlowupMonitors blowup_monitors(const std::vector<TraceSample>& trace) {
    BlowupMonitors mon;
    int prev_sign = 0;
    for (const TraceSample& t : trace) {
        const double scale = std::max({std::fabs(t.a_val), std::fabs(t.b_val), 1.0});
        if (std::fabs(t.nehari) <= 1e-12 * scale) continue;
        const int sign = t.nehari > 0.0 ? 1 : -1;
        if (prev_sign != 0 && sign != prev_sign) ++mon.dk_sign_flips;
        prev_sign = sign;
    }

    // f'' = -2 D_K: check divided second differences of f_cum against the
    // sampled nehari values; pass when >= 90% of interior points agree.
    std::size_t checked = 0, ok = 0;
    for (std::size_t i = 1; i + 1 < trace.size(); ++i) {
        const double h0 = trace[i].s - trace[i - 1].s;
        const double h1 = trace[i + 1].s - trace[i].s;
        if (!(h0 > 0.0) || !(h1 > 0.0)) continue;
        const double fpp =
            2.0 * ((trace[i + 1].f_cum - trace[i].f_cum) / h1 -
                   (trace[i].f_cum - trace[i - 1].f_cum) / h0) / (h0 + h1);
        const double target = -2.0 * trace[i].nehari;
        const double tol = 0.05 * (std::fabs(target) + trace[i].l2_sq) + 1e-9;
        ++checked;
        if (std::fabs(fpp - target) <= tol) ++ok;
    }
    mon.f_convexity_ok = checked < 3 || ok >= (9 * checked + 9) / 10;
    return mon;
}

double stationary_residual(const RadialGrid& grid, const RadialField& v,
                           const ModelParams& params) {
    check_field(grid, v);
    RadialField res = apply_linear_part(grid, params, v);
    for (int i = 0; i < grid.m; ++i) {
        const double vi = v.values[i];
        res.values[i] -= std::pow(std::fabs(vi), params.p - 1.0) * vi;
    }
    return std::sqrt(weighted_dot(grid, res, res));
}

std::vector<StationaryCandidate> extract_stationary_candidates(
    const RadialGrid& grid, const ModelParams& params,
    const EvolutionResult& result, double tol_vdot) {
    std::vector<StationaryCandidate> out;
    for (const Snapshot& snap : result.snapshots) {
        if (snap.vdot_l2sq >= tol_vdot) continue;
        out.push_back({snap.s, snap.field,
                       stationary_residual(grid, snap.field, params)});
    }
    return out;
}

}  // namespace hsp
