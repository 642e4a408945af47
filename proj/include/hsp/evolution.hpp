#pragma once

#include <string>
#include <vector>

#include "hsp/functionals.hpp"
#include "hsp/radial.hpp"
#include "hsp/variational.hpp"

namespace hsp {

struct EvolutionConfig {
    double dt0 = 1e-3;          // base step, must be <= 1e-2
    double s_max = 40.0;        // horizon in self-similar time
    double blowup_l2sq = 1e8;   // ||v||_{K,2}^2 threshold
    double blowup_linf = 1e6;   // sup-norm threshold
    bool adapt = true;          // dt = dt0 / (1 + ||v||_inf^{p-1})
    int sample_every = 10;      // trace stride in steps
    double delta_for_wells = 1.0;
    double decay_l2sq = 1e-12;  // ||v||_{K,2}^2 below this ends the run as decay
    int snapshot_every_samples = 50;  // field snapshot stride (0 disables)
};

struct TraceSample {
    double s = 0.0;
    double l2_sq = 0.0;
    double a_val = 0.0;
    double b_val = 0.0;
    double energy = 0.0;
    double nehari = 0.0;
    double vdot_l2sq = 0.0;  // backward difference quotient ||v_s||_{K,2}^2
    double f_cum = 0.0;      // cumulative int_0^s ||v||_{K,2}^2 d tau
};

enum class OutcomeLabel { GLOBAL_DECAY, BLOW_UP, HORIZON_REACHED, INTEGRATOR_FAILURE };

const char* to_string(OutcomeLabel label);

struct EvolutionOutcome {
    OutcomeLabel label = OutcomeLabel::HORIZON_REACHED;
    double s_final = 0.0;
    std::string detail;
};

struct Snapshot {
    double s = 0.0;
    double vdot_l2sq = 0.0;
    RadialField field;
};

struct EvolutionResult {
    std::vector<TraceSample> trace;
    EvolutionOutcome outcome;
    RadialField final_field;
    std::vector<Snapshot> snapshots;
};

/// One IMEX step: (I + dt (L - beta - mu/r^2)) v_new = v + dt (|v|^{p-1} v + g)
/// with one tridiagonal solve.  `source` (optional) feeds manufactured
/// solutions.  Throws on nonpositive dt.
RadialField imex_step(const RadialGrid& grid, const RadialField& v,
                      const ModelParams& params, double dt,
                      const RadialField* source = nullptr);

/// Steps until s_max, blow-up, decay, or loss of finiteness.  Blow-up requires
/// a threshold crossing plus growing l2_sq over the last 10 samples.
EvolutionResult evolve(const RadialGrid& grid, const RadialField& v0,
                       const ModelParams& params, const EvolutionConfig& config);

/// max over sample pairs of |E(s2) + sum vdot_l2sq ds - E(s1)| / (|E(s1)|+1),
/// dissipation summed by trapezoid over trace samples.
double energy_identity_defect(const std::vector<TraceSample>& trace);

struct DecayFit {
    double fitted_rate = 0.0;     // least-squares slope of -log l2_sq, trailing half
    double predicted_rate = 0.0;  // (1 - delta_1)/2
    bool satisfied = false;       // envelope l2(s) <= l2(0) e^{-rate s} (1+5%)
};

/// Requires 0 < E0 < depth (so delta_1 exists) and a decaying trace; throws
/// otherwise.
DecayFit fit_decay_rate(const std::vector<TraceSample>& trace,
                        const WellConstants& consts, double E0);

struct BlowupMonitors {
    int dk_sign_flips = 0;     // sign changes of D_K across samples
    bool f_convexity_ok = false;  // second differences of f_cum track -2 D_K
};

BlowupMonitors blowup_monitors(const std::vector<TraceSample>& trace);

/// ||L v - beta v - mu v/r^2 - |v|^{p-1} v||_{K,2}.
double stationary_residual(const RadialGrid& grid, const RadialField& v,
                           const ModelParams& params);

struct StationaryCandidate {
    double s = 0.0;
    RadialField field;
    double residual = 0.0;
};

/// Snapshots with vdot_l2sq < tol_vdot, each with its stationary residual.
std::vector<StationaryCandidate> extract_stationary_candidates(
    const RadialGrid& grid, const ModelParams& params,
    const EvolutionResult& result, double tol_vdot);

}  // namespace hsp
