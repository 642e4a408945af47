#include "hsp/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "hsp/hardy.hpp"
#include "hsp/variational.hpp"

namespace hsp {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct IniFile {
    // section -> key -> (value, line number)
    std::map<std::string, std::map<std::string, std::pair<std::string, int>>> data;
    std::string path;

    [[noreturn]] void fail(int line, const std::string& msg) const {
        std::ostringstream os;
        os << path << ":" << line << ": " << msg;
        throw ConfigError(os.str());
    }
};

IniFile parse_ini(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    IniFile ini;
    ini.path = path;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') ini.fail(lineno, "unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty()) ini.fail(lineno, "empty section name");
            ini.data[section];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) ini.fail(lineno, "expected key = value");
        if (section.empty()) ini.fail(lineno, "key outside any section");
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) ini.fail(lineno, "empty key");
        ini.data[section][key] = {trim(t.substr(eq + 1)), lineno};
    }
    return ini;
}

class SectionReader {
  public:
    SectionReader(const IniFile& ini, const std::string& section)
        : ini_(ini), section_(section) {
        const auto it = ini.data.find(section);
        if (it != ini.data.end()) entries_ = &it->second;
    }

    bool present() const { return entries_ != nullptr; }

    std::optional<std::string> raw(const std::string& key) {
        if (!entries_) return std::nullopt;
        const auto it = entries_->find(key);
        if (it == entries_->end()) return std::nullopt;
        seen_.insert(key);
        line_ = it->second.second;
        return it->second.first;
    }

    double get_real(const std::string& key, double fallback) {
        const auto v = raw(key);
        if (!v) return fallback;
        try {
            std::size_t pos = 0;
            const double x = std::stod(*v, &pos);
            if (pos != v->size()) throw std::invalid_argument("");
            return x;
        } catch (...) {
            ini_.fail(line_, "expected a real number for '" + key + "'");
        }
    }

    int get_int(const std::string& key, int fallback) {
        const auto v = raw(key);
        if (!v) return fallback;
        try {
            std::size_t pos = 0;
            const int x = std::stoi(*v, &pos);
            if (pos != v->size()) throw std::invalid_argument("");
            return x;
        } catch (...) {
            ini_.fail(line_, "expected an integer for '" + key + "'");
        }
    }

    bool get_bool(const std::string& key, bool fallback) {
        const auto v = raw(key);
        if (!v) return fallback;
        if (*v == "true" || *v == "1") return true;
        if (*v == "false" || *v == "0") return false;
        ini_.fail(line_, "expected true/false for '" + key + "'");
    }

    std::string get_string(const std::string& key, const std::string& fallback) {
        const auto v = raw(key);
        return v ? *v : fallback;
    }

    std::vector<double> get_reals(const std::string& key) {
        const auto v = raw(key);
        std::vector<double> out;
        if (!v) return out;
        std::istringstream is(*v);
        std::string tok;
        while (is >> tok) {
            try {
                out.push_back(std::stod(tok));
            } catch (...) {
                ini_.fail(line_, "expected a list of reals for '" + key + "'");
            }
        }
        return out;
    }

    void reject_unknown() const {
        if (!entries_) return;
        for (const auto& [key, val] : *entries_)
            if (!seen_.count(key))
                ini_.fail(val.second, "unknown key '" + key + "' in [" + section_ + "]");
    }

  private:
    const IniFile& ini_;
    std::string section_;
    const std::map<std::string, std::pair<std::string, int>>* entries_ = nullptr;
    std::set<std::string> seen_;
    int line_ = 0;
};

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return buf;
}

json report_to_json(const FunctionalReport& r) {
    json j{{"l2_sq", r.l2_sq},     {"lp1", r.lp1},       {"grad_sq", r.grad_sq},
           {"hardy_sq", r.hardy_sq}, {"a_val", r.a_val}, {"b_val", r.b_val},
           {"energy", r.energy},   {"nehari", r.nehari}};
    if (r.nehari_delta)
        j["nehari_delta"] = {{"delta", r.nehari_delta->first},
                             {"value", r.nehari_delta->second}};
    return j;
}

json classification_to_json(const WellClassification& c) {
    json j{{"on_nehari", c.on_nehari},
           {"in_nehari_plus", c.in_nehari_plus},
           {"in_nehari_minus", c.in_nehari_minus},
           {"in_W_delta", c.in_W_delta},
           {"in_V_delta", c.in_V_delta},
           {"in_B_delta", c.in_B_delta},
           {"below_depth", c.below_depth}};
    if (c.delta_roots)
        j["delta_roots"] = {c.delta_roots->first, c.delta_roots->second};
    return j;
}

std::string predicted_label(const FunctionalReport& r, const WellConstants& wc) {
    if (!(r.energy < wc.depth)) return "UNDETERMINED";
    if (r.nehari > 0.0) return "GLOBAL_DECAY";
    if (r.nehari < 0.0) return "BLOW_UP";
    return "UNDETERMINED";
}

}  // namespace

Scenario parse_scenario(const std::string& path) {
    const IniFile ini = parse_ini(path);
    for (const auto& [section, _] : ini.data) {
        if (section != "scenario" && section != "grid" && section != "initial" &&
            section != "evolution" && section != "analyses" && section != "sweep")
            throw ConfigError(path + ": unknown section [" + section + "]");
    }
    Scenario sc;

    SectionReader s(ini, "scenario");
    sc.name = s.get_string("name", sc.name);
    sc.dim = s.get_int("dim", sc.dim);
    sc.mu = s.get_real("mu", sc.mu);
    s.reject_unknown();

    SectionReader g(ini, "grid");
    sc.r_max = g.get_real("r_max", sc.r_max);
    sc.m = g.get_int("m", sc.m);
    g.reject_unknown();

    SectionReader in(ini, "initial");
    const std::string family = in.get_string("family", "gaussian");
    if (family == "gaussian")
        sc.initial.family = InitialFamily::GAUSSIAN;
    else if (family == "gaussian-poly")
        sc.initial.family = InitialFamily::GAUSSIAN_POLY;
    else if (family == "witness")
        sc.initial.family = InitialFamily::WITNESS;
    else if (family == "file")
        sc.initial.family = InitialFamily::FILE;
    else
        throw UnknownFamilyError(path + ": unknown initial family '" + family + "'");
    sc.initial.amplitude = in.get_real("amplitude", sc.initial.amplitude);
    sc.initial.epsilon = in.get_real("epsilon", sc.initial.epsilon);
    if (const auto coeffs = in.get_reals("coeffs"); !coeffs.empty())
        sc.initial.coeffs = coeffs;
    sc.initial.path = in.get_string("path", "");
    if (sc.initial.family == InitialFamily::FILE && sc.initial.path.empty())
        throw ConfigError(path + ": family 'file' requires a 'path' key");
    if (sc.initial.family == InitialFamily::FILE &&
        !std::filesystem::exists(sc.initial.path))
        throw ConfigError(path + ": initial-datum file '" + sc.initial.path +
                          "' does not exist");
    in.reject_unknown();

    SectionReader ev(ini, "evolution");
    sc.evolution.dt0 = ev.get_real("dt0", sc.evolution.dt0);
    sc.evolution.s_max = ev.get_real("s_max", sc.evolution.s_max);
    sc.evolution.blowup_l2sq = ev.get_real("blowup_l2sq", sc.evolution.blowup_l2sq);
    sc.evolution.blowup_linf = ev.get_real("blowup_linf", sc.evolution.blowup_linf);
    sc.evolution.adapt = ev.get_bool("adapt", sc.evolution.adapt);
    sc.evolution.sample_every = ev.get_int("sample_every", sc.evolution.sample_every);
    sc.evolution.delta_for_wells =
        ev.get_real("delta_for_wells", sc.evolution.delta_for_wells);
    sc.evolution.decay_l2sq = ev.get_real("decay_l2sq", sc.evolution.decay_l2sq);
    sc.evolution.snapshot_every_samples =
        ev.get_int("snapshot_every_samples", sc.evolution.snapshot_every_samples);
    ev.reject_unknown();

    SectionReader an(ini, "analyses");
    for (const char* name : {"classify", "evolve", "decay-fit", "hardy", "depth",
                             "lambda-bounds", "stationary"})
        if (an.get_bool(name, false)) sc.analyses.insert(name);
    an.reject_unknown();

    SectionReader sw(ini, "sweep");
    sc.sweep_lambdas = sw.get_reals("lambdas");
    sw.reject_unknown();

    return sc;
}

RadialField make_initial(const RadialGrid& grid, const InitialSpec& spec) {
    RadialField v;
    switch (spec.family) {
        case InitialFamily::GAUSSIAN:
            v = sample_field(grid, [](double r) { return std::exp(-r * r / 4.0); });
            break;
        case InitialFamily::GAUSSIAN_POLY:
            v = sample_field(grid, [&](double r) {
                double poly = 0.0;
                for (std::size_t k = spec.coeffs.size(); k-- > 0;)
                    poly = poly * r + spec.coeffs[k];
                return poly * std::exp(-r * r / 4.0);
            });
            break;
        case InitialFamily::WITNESS:
            v = witness_field(grid, WitnessParams::make(grid.dim, spec.epsilon));
            break;
        case InitialFamily::FILE: {
            std::ifstream in(spec.path);
            if (!in) throw ConfigError("cannot open initial-datum file " + spec.path);
            v = zero_field(grid);
            for (int i = 0; i < grid.m; ++i)
                if (!(in >> v.values[i]))
                    throw ConfigError("initial-datum file " + spec.path +
                                      " has fewer than grid-size values");
            break;
        }
    }
    for (double& x : v.values) x *= spec.amplitude;
    return v;
}

void write_trace_tsv(const std::string& path, const std::vector<TraceSample>& trace) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open trace file " + path);
    std::fputs("s\tl2_sq\ta_val\tb_val\tenergy\tnehari\tvdot_l2sq\tf_cum\n", f);
    for (const TraceSample& t : trace)
        std::fprintf(f, "%.17g\t%.17g\t%.17g\t%.17g\t%.17g\t%.17g\t%.17g\t%.17g\n",
                     t.s, t.l2_sq, t.a_val, t.b_val, t.energy, t.nehari,
                     t.vdot_l2sq, t.f_cum);
    std::fclose(f);
}

std::string run_scenario(const Scenario& sc, const std::string& out_dir,
                         std::uint64_t seed, int threads) {
    (void)threads;  // single scenarios are sequential; sweeps parallelize
    const ModelParams params = ModelParams::make(sc.dim, sc.mu);
    const RadialGrid grid = make_grid(sc.dim, sc.r_max, sc.m);
    const RadialField v0 = make_initial(grid, sc.initial);
    const double delta = sc.evolution.delta_for_wells;
    const FunctionalReport rep0 = evaluate(grid, v0, params, delta);
    const ModelConstants mc = model_constants(sc.dim);

    json out;
    out["scenario"] = {{"name", sc.name}, {"dim", sc.dim},   {"mu", sc.mu},
                       {"r_max", sc.r_max}, {"m", sc.m},
                       {"amplitude", sc.initial.amplitude}, {"seed", seed}};
    out["timestamp"] = iso_timestamp();
    out["model_constants"] = {{"beta", mc.beta},   {"p", mc.p},
                              {"two_star", mc.two_star}, {"c_n", mc.c_n},
                              {"lambda_1", mc.lambda_1},
                              {"lambda_star", mc.lambda_star}, {"s0", mc.s0}};
    out["initial_report"] = report_to_json(rep0);

    std::optional<WellConstants> wc;
    const bool needs_wells = sc.analyses.count("depth") ||
                             sc.analyses.count("classify") ||
                             sc.analyses.count("decay-fit") ||
                             sc.analyses.count("lambda-bounds");
    if (needs_wells) {
        wc = well_constants(grid, params, 8, seed);
        out["well_constants"] = {{"s_k", wc->s_k},
                                 {"depth", wc->depth},
                                 {"d_of_delta", wc->d_of(delta)},
                                 {"r_sq_of_delta", wc->r_sq_of(delta)},
                                 {"a_of_delta", wc->a_of(delta)}};
    }

    if (sc.analyses.count("classify")) {
        const bool zero = max_abs(v0) == 0.0;
        out["classification"] =
            classification_to_json(classify(rep0, *wc, params, delta, zero));
    }

    if (sc.analyses.count("hardy")) {
        json h;
        if (max_abs(v0) > 0.0) h["initial_quotient"] = hardy_quotient(grid, v0);
        if (grid.dr <= 0.05) {
            json rows = json::array();
            for (const SweepRow& r :
                 optimality_sweep(grid, {1.0, 0.3, 0.1, 0.03, 0.01}))
                rows.push_back({{"epsilon", r.epsilon},
                                {"gamma", r.gamma},
                                {"lower_bound", r.lower_bound},
                                {"quotient", r.quotient}});
            h["sweep"] = rows;
        }
        h["c_n"] = mc.c_n;
        out["hardy"] = h;
    }

    if (sc.analyses.count("lambda-bounds")) {
        const LambdaBounds lb =
            empirical_lambda_bounds(grid, params, *wc, 2.0 * wc->depth, 200, seed);
        out["lambda_bounds"] = {{"alpha", 2.0 * wc->depth},
                                {"lambda_upper", lb.lambda_upper},
                                {"Lambda_lower", lb.Lambda_lower},
                                {"keepers", lb.keepers}};
    }

    std::filesystem::create_directories(out_dir);
    const std::string base = out_dir + "/" + sc.name;

    if (sc.analyses.count("evolve") || sc.analyses.count("decay-fit") ||
        sc.analyses.count("stationary")) {
        const EvolutionResult res = evolve(grid, v0, params, sc.evolution);
        if (res.outcome.label == OutcomeLabel::INTEGRATOR_FAILURE)
            throw std::runtime_error("integrator failure: " + res.outcome.detail);
        const std::string trace_path = base + ".trace.tsv";
        write_trace_tsv(trace_path, res.trace);
        const BlowupMonitors mon = blowup_monitors(res.trace);
        out["evolution"] = {{"outcome", to_string(res.outcome.label)},
                            {"s_final", res.outcome.s_final},
                            {"detail", res.outcome.detail},
                            {"samples", res.trace.size()},
                            {"energy_identity_defect",
                             energy_identity_defect(res.trace)},
                            {"dk_sign_flips", mon.dk_sign_flips},
                            {"f_convexity_ok", mon.f_convexity_ok}};
        out["artifacts"] = {{"trace", trace_path}};

        if (sc.analyses.count("decay-fit")) {
            if (res.outcome.label == OutcomeLabel::GLOBAL_DECAY &&
                rep0.energy > 0.0 && wc && rep0.energy < wc->depth) {
                const DecayFit fit = fit_decay_rate(res.trace, *wc, rep0.energy);
                out["decay_fit"] = {{"fitted_rate", fit.fitted_rate},
                                    {"predicted_rate", fit.predicted_rate},
                                    {"satisfied", fit.satisfied}};
            } else {
                out["decay_fit"] = {{"applicable", false}};
            }
        }

        if (sc.analyses.count("stationary")) {
            json cands = json::array();
            for (const StationaryCandidate& c :
                 extract_stationary_candidates(grid, params, res, 1e-6)) {
                cands.push_back({{"s", c.s},
                                 {"residual", c.residual},
                                 {"l2", std::sqrt(weighted_dot(grid, c.field, c.field))}});
            }
            out["stationary_candidates"] = cands;
        }
    }

    const std::string report_path = base + ".report.json";
    {
        std::ofstream jf(report_path);
        jf << out.dump(2) << "\n";
    }
    {
        std::ofstream sf(base + ".summary.txt");
        sf << "scenario " << sc.name << " (N=" << sc.dim << ", mu=" << sc.mu
           << ", lambda=" << sc.initial.amplitude << ")\n";
        sf << "  E_K(v0) = " << rep0.energy << ", D_K(v0) = " << rep0.nehari << "\n";
        if (wc) sf << "  S_K ~ " << wc->s_k << ", depth d ~ " << wc->depth << "\n";
        if (out.contains("evolution"))
            sf << "  outcome: " << out["evolution"]["outcome"].get<std::string>()
               << " at s = " << out["evolution"]["s_final"].get<double>() << "\n";
        if (out.contains("decay_fit") && out["decay_fit"].contains("fitted_rate"))
            sf << "  decay rate: fitted " << out["decay_fit"]["fitted_rate"].get<double>()
               << " vs predicted " << out["decay_fit"]["predicted_rate"].get<double>()
               << "\n";
        sf << "  report: " << report_path << "\n";
    }
    return out.dump(2);
}

std::vector<SweepRowResult> amplitude_sweep(const Scenario& sc,
                                            const std::vector<double>& lambdas,
                                            std::uint64_t seed, int threads) {
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0))
            throw std::invalid_argument("amplitude_sweep: lambdas must be positive");
        if (i > 0 && lambdas[i] < lambdas[i - 1])
            throw std::invalid_argument("amplitude_sweep: lambdas must be sorted");
    }
    std::vector<SweepRowResult> rows(lambdas.size());
    if (lambdas.empty()) return rows;

    const ModelParams params = ModelParams::make(sc.dim, sc.mu);
    const RadialGrid grid = make_grid(sc.dim, sc.r_max, sc.m);
    const WellConstants wc = well_constants(grid, params, 8, seed);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= lambdas.size()) return;
            SweepRowResult& row = rows[i];
            row.lambda = lambdas[i];
            try {
                InitialSpec spec = sc.initial;
                spec.amplitude = lambdas[i];
                const RadialField v0 = make_initial(grid, spec);
                const FunctionalReport rep = evaluate(grid, v0, params);
                row.energy = rep.energy;
                row.nehari = rep.nehari;
                row.below_depth = rep.energy < wc.depth;
                row.predicted = predicted_label(rep, wc);
                const EvolutionResult res = evolve(grid, v0, params, sc.evolution);
                row.observed = to_string(res.outcome.label);
                row.agreement =
                    row.predicted == "UNDETERMINED" || row.predicted == row.observed;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    const int nw = std::max(1, std::min<int>(threads, int(lambdas.size())));
    std::vector<std::thread> pool;
    for (int t = 0; t < nw; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    return rows;  // input sorted, worker writes in place: already sorted by lambda
}

}  // namespace hsp
