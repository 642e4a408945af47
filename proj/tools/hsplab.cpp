#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hsp/hardy.hpp"
#include "hsp/scenario.hpp"
#include "hsp/variational.hpp"

namespace {

struct Common {
    std::string config;
    std::string out = "out";
    std::uint64_t seed = 12345;
    int threads = 4;
};

void add_common(CLI::App* cmd, Common& c, bool needs_config) {
    auto* opt = cmd->add_option("--config", c.config, "scenario config file");
    if (needs_config) opt->required();
    cmd->add_option("--out", c.out, "output directory");
    cmd->add_option("--seed", c.seed, "random seed");
    cmd->add_option("--threads", c.threads, "worker threads for sweeps");
}

int run_with_analyses(const Common& c, std::initializer_list<const char*> forced) {
    hsp::Scenario sc = hsp::parse_scenario(c.config);
    for (const char* a : forced) sc.analyses.insert(a);
    const std::string report = hsp::run_scenario(sc, c.out, c.seed, c.threads);
    std::fputs(report.c_str(), stdout);
    std::fputc('\n', stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the Gaussian-weighted "
                 "Hardy-Sobolev parabolic flow in self-similar variables"};
    app.require_subcommand(1);

    int dim = 3;
    double r_max = 12.0;
    int m = 8192;
    std::vector<double> eps{1.0, 0.3, 0.1, 0.03, 0.01};
    std::vector<double> lambdas;

    Common c_constants, c_hardy, c_classify, c_evolve, c_depth, c_sweep, c_stationary;

    auto* cmd_constants = app.add_subcommand("constants", "print model constants");
    cmd_constants->add_option("--dim", dim, "space dimension (>= 3)");

    auto* cmd_hardy = app.add_subcommand("hardy-sweep",
                                         "witness sweep for the weighted Hardy constant");
    cmd_hardy->add_option("--dim", dim, "space dimension");
    cmd_hardy->add_option("--r-max", r_max, "truncation radius");
    cmd_hardy->add_option("--m", m, "cell count");
    cmd_hardy->add_option("--eps", eps, "decreasing epsilon list");

    auto* cmd_classify = app.add_subcommand("classify", "well membership of the initial datum");
    add_common(cmd_classify, c_classify, true);
    auto* cmd_evolve = app.add_subcommand("evolve", "integrate the flow and report the outcome");
    add_common(cmd_evolve, c_evolve, true);
    auto* cmd_depth = app.add_subcommand("depth", "estimate the best quotient and well depth");
    add_common(cmd_depth, c_depth, true);
    auto* cmd_sweep = app.add_subcommand("sweep", "amplitude phase diagram");
    add_common(cmd_sweep, c_sweep, true);
    cmd_sweep->add_option("--lambdas", lambdas, "amplitudes (overrides [sweep] section)");
    auto* cmd_stationary = app.add_subcommand("stationary", "extract near-stationary snapshots");
    add_common(cmd_stationary, c_stationary, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_constants) {
            const hsp::ModelConstants mc = hsp::model_constants(dim);
            std::printf("dim         %d\n", dim);
            std::printf("beta        %.17g\n", mc.beta);
            std::printf("p           %.17g\n", mc.p);
            std::printf("two_star    %.17g\n", mc.two_star);
            std::printf("C_N         %.17g\n", mc.c_n);
            std::printf("lambda_1    %.17g\n", mc.lambda_1);
            std::printf("lambda_star %.17g\n", mc.lambda_star);
            std::printf("S0          %.17g\n", mc.s0);
            return 0;
        }
        if (*cmd_hardy) {
            const hsp::RadialGrid grid = hsp::make_grid(dim, r_max, m);
            std::printf("epsilon\tgamma\tlower_bound\tquotient\n");
            for (const hsp::SweepRow& r : hsp::optimality_sweep(grid, eps))
                std::printf("%.17g\t%.17g\t%.17g\t%.17g\n", r.epsilon, r.gamma,
                            r.lower_bound, r.quotient);
            return 0;
        }
        if (*cmd_classify) return run_with_analyses(c_classify, {"classify", "depth"});
        if (*cmd_evolve) return run_with_analyses(c_evolve, {"evolve"});
        if (*cmd_depth) return run_with_analyses(c_depth, {"depth"});
        if (*cmd_stationary) return run_with_analyses(c_stationary, {"evolve", "stationary"});
        if (*cmd_sweep) {
            hsp::Scenario sc = hsp::parse_scenario(c_sweep.config);
            if (lambdas.empty()) lambdas = sc.sweep_lambdas;
            std::printf("lambda\tenergy\tnehari\tbelow_depth\tpredicted\tobserved\tagreement\terror\n");
            for (const hsp::SweepRowResult& r :
                 hsp::amplitude_sweep(sc, lambdas, c_sweep.seed, c_sweep.threads))
                std::printf("%.17g\t%.17g\t%.17g\t%d\t%s\t%s\t%d\t%s\n", r.lambda,
                            r.energy, r.nehari, int(r.below_depth),
                            r.predicted.c_str(), r.observed.c_str(),
                            int(r.agreement), r.error.c_str());
            return 0;
        }
    } catch (const hsp::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const hsp::UnknownFamilyError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invariant violation: %s\n", e.what());
        return 4;
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        std::fprintf(stderr, "error: %s\n", msg.c_str());
        return msg.rfind("integrator failure", 0) == 0 ? 5 : 1;
    }
    return 0;
}
