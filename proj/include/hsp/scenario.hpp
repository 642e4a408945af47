#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsp/evolution.hpp"
#include "hsp/functionals.hpp"
#include "hsp/radial.hpp"

namespace hsp {

/// Errors carrying the process exit code the CLI maps them to.
struct ConfigError : std::runtime_error {          // exit 2: unparseable config
    using std::runtime_error::runtime_error;
};
struct UnknownFamilyError : std::runtime_error {   // exit 3: bad initial family
    using std::runtime_error::runtime_error;
};

enum class InitialFamily { GAUSSIAN, GAUSSIAN_POLY, WITNESS, FILE };

struct InitialSpec {
    InitialFamily family = InitialFamily::GAUSSIAN;
    double amplitude = 1.0;
    double epsilon = 0.5;               // witness family
    std::vector<double> coeffs{1.0};    // gaussian-poly: sum c_k r^k times e^{-r^2/4}
    std::string path;                   // file family: one value per line
};

struct Scenario {
    std::string name = "unnamed";
    int dim = 3;
    double mu = 0.0;
    double r_max = 12.0;
    int m = 2048;
    InitialSpec initial;
    EvolutionConfig evolution;
    std::set<std::string> analyses;     // classify, evolve, decay-fit, hardy,
                                        // depth, lambda-bounds, stationary
    std::vector<double> sweep_lambdas;  // [sweep] section, optional
};

/// INI-style sections [scenario] [grid] [initial] [evolution] [analyses]
/// [sweep]; `key = value` lines, `#` comments.  Throws ConfigError with path
/// and line number, UnknownFamilyError for an unrecognized family name.
Scenario parse_scenario(const std::string& path);

RadialField make_initial(const RadialGrid& grid, const InitialSpec& spec);

/// Executes the requested analyses in dependency order, writes
/// <out>/<name>.trace.tsv, <out>/<name>.report.json and
/// <out>/<name>.summary.txt.  Returns the report serialized as JSON text.
/// Deterministic given the seed, apart from the "timestamp" field.
std::string run_scenario(const Scenario& sc, const std::string& out_dir,
                         std::uint64_t seed, int threads);

struct SweepRowResult {
    double lambda = 0.0;
    double energy = 0.0;
    double nehari = 0.0;
    bool below_depth = false;
    std::string predicted;  // GLOBAL_DECAY / BLOW_UP / UNDETERMINED
    std::string observed;
    bool agreement = false;  // predicted == observed, only claimed below depth
    std::string error;       // per-row failure, empty on success
};

/// One evolution run per lambda on the scenario's initial family, executed by
/// a bounded worker pool; rows come back sorted by lambda.
std::vector<SweepRowResult> amplitude_sweep(const Scenario& sc,
                                            const std::vector<double>& lambdas,
                                            std::uint64_t seed, int threads);

/// Trace serialization: tab-delimited, header row, full %.17g precision.
void write_trace_tsv(const std::string& path, const std::vector<TraceSample>& trace);

}  // namespace hsp
