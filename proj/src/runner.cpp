#include "encoderlab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

#include "json.hpp"

#include "encoderlab/dense.hpp"
#include "encoderlab/psi.hpp"
#include "encoderlab/stats.hpp"
#include "encoderlab/syndrome.hpp"
#include "encoderlab/toric.hpp"
#include "encoderlab/trajectory.hpp"
#include "encoderlab/verify.hpp"

namespace encoderlab {

namespace {

PsiSpec resolve_psi(const std::string& text) {
    try {
        return psi_preset(text);
    } catch (const std::invalid_argument&) {
        try {
            return psi_from_amplitudes(text);
        } catch (const std::exception& e) {
            throw ConfigError("psi must be a preset (00, 0+, ++, bell, magic) or amplitudes: " +
                              std::string(e.what()));
        }
    }
}

void validate_config(const RunConfig& cfg) {
    if (cfg.L < 2) throw ConfigError("L must be >= 2");
    if (cfg.backend != "exact" && cfg.backend != "trajectory" && cfg.backend != "syndrome")
        throw ConfigError("backend must be exact, trajectory or syndrome");
    if (cfg.backend == "exact" && 2 * cfg.L * cfg.L > DensityMatrix::kMaxQubits)
        throw ConfigError("exact backend requires L = 2 (n <= 12 guard)");
    if (cfg.t_max < 0) throw ConfigError("t_max must be nonnegative");
    if (cfg.ntraj < 1) throw ConfigError("ntraj must be >= 1");
    if (cfg.alpha < 1.0) throw ConfigError("alpha must be >= 1");
    if (cfg.epsilon <= 0 || cfg.epsilon > 1) throw ConfigError("epsilon must be in (0, 1]");
    if (cfg.rho_d != "mixed" && cfg.rho_d != "zero")
        throw ConfigError("rho_d must be mixed or zero");
    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("format must be csv or json");
    if (cfg.sample_count < 1) throw ConfigError("sample count must be >= 1");
    PsiSpec psi = resolve_psi(cfg.psi);
    if (cfg.backend == "trajectory" && !psi.stabilizer)
        throw ConfigError("trajectory backend requires a stabilizer psi (00, 0+, ++, bell)");
    if (cfg.backend == "syndrome" && !psi.product)
        throw ConfigError("syndrome backend requires a product psi (00, 0+, ++)");
}

}  // namespace

std::vector<double> resolve_sample_times(const RunConfig& cfg) {
    if (!cfg.sample_times.empty()) {
        std::vector<double> times = cfg.sample_times;
        for (size_t i = 0; i < times.size(); ++i) {
            if (times[i] < 0 || times[i] > cfg.t_max + 1e-12)
                throw ConfigError("sample times must lie in [0, t_max]");
            if (i > 0 && times[i] < times[i - 1])
                throw ConfigError("sample times must be sorted");
        }
        return times;
    }
    std::vector<double> times;
    if (cfg.sample_count == 1) {
        times.push_back(cfg.t_max);
        return times;
    }
    for (int i = 0; i < cfg.sample_count; ++i)
        times.push_back(cfg.t_max * i / (cfg.sample_count - 1));
    return times;
}

RunConfig config_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
    }
    RunConfig cfg;
    auto get = [&j](const char* key, auto& slot) {
        if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    };
    get("L", cfg.L);
    get("backend", cfg.backend);
    get("t_max", cfg.t_max);
    get("sample_times", cfg.sample_times);
    get("sample_count", cfg.sample_count);
    get("ntraj", cfg.ntraj);
    get("seed", cfg.master_seed);
    get("alpha", cfg.alpha);
    get("epsilon", cfg.epsilon);
    get("psi", cfg.psi);
    get("rho_d", cfg.rho_d);
    get("include_sinks", cfg.include_sinks);
    get("l_values", cfg.l_values);
    get("out", cfg.out);
    get("format", cfg.format);
    return cfg;
}

std::string config_to_canonical_json(const RunConfig& cfg) {
    nlohmann::json j;  // alphabetical key order makes this canonical
    j["L"] = cfg.L;
    j["alpha"] = cfg.alpha;
    j["backend"] = cfg.backend;
    j["epsilon"] = cfg.epsilon;
    j["include_sinks"] = cfg.include_sinks;
    j["l_values"] = cfg.l_values;
    j["ntraj"] = cfg.ntraj;
    j["psi"] = cfg.psi;
    j["rho_d"] = cfg.rho_d;
    j["sample_count"] = cfg.sample_count;
    nlohmann::json st = nlohmann::json::array();
    for (double t : cfg.sample_times) st.push_back(format_double(t));
    j["sample_times"] = std::move(st);
    j["seed"] = cfg.master_seed;
    j["t_max"] = format_double(cfg.t_max);
    return j.dump();
}

namespace {

std::vector<ResultRow> execute_exact(const RunConfig& cfg, const std::string& run_id) {
    auto [spec, lay] = build_toric(cfg.L, cfg.include_sinks);
    PsiSpec psi = resolve_psi(cfg.psi);
    DensityMatrix rho0 = make_encoder_initial_dm(spec, lay, psi, cfg.rho_d == "mixed");
    std::vector<double> times = resolve_sample_times(cfg);
    EvolutionResult res = evolve(rho0, spec, cfg.t_max, times, default_observables(spec));
    std::vector<ResultRow> rows;
    for (const auto& [name, series] : res.observables) {
        for (size_t i = 0; i < series.size(); ++i)
            rows.push_back({run_id, cfg.backend, cfg.L, cfg.master_seed, res.times[i], name,
                            series[i], 0.0, 1});
    }
    return rows;
}

std::vector<ResultRow> execute_trajectory(const RunConfig& cfg, const std::string& run_id) {
    auto [spec, lay] = build_toric(cfg.L, cfg.include_sinks);
    PsiSpec psi = resolve_psi(cfg.psi);
    StabilizerTableau init =
        make_encoder_initial_tableau(spec, lay, psi, cfg.rho_d == "mixed");
    std::vector<double> times = resolve_sample_times(cfg);
    TrajectoryOptions opts;
    opts.alphas = {cfg.alpha};
    opts.record_site_occupations = cfg.L <= 16;
    opts.record_code_overlap = cfg.L <= 16;
    EnsembleStats stats =
        run_ensemble(spec, init, cfg.t_max, times, cfg.ntraj, cfg.master_seed, opts);
    std::vector<ResultRow> rows;
    for (const auto& [name, series] : stats.values) {
        for (size_t i = 0; i < series.size(); ++i)
            rows.push_back({run_id, cfg.backend, cfg.L, cfg.master_seed, stats.times[i], name,
                            series[i].mean, series[i].stderr_, series[i].n});
    }
    return rows;
}

std::vector<ResultRow> execute_syndrome(const RunConfig& cfg, const std::string& run_id) {
    ToricLayout lay = build_toric_layout(cfg.L);
    PsiSpec psi = resolve_psi(cfg.psi);
    std::vector<QubitTag> tags = encoder_tags(lay, psi, cfg.rho_d == "mixed");
    std::vector<double> times = resolve_sample_times(cfg);
    ChainOptions opts;
    opts.alphas = {cfg.alpha};
    opts.record_sites = cfg.L <= 8;

    std::vector<TimeSeries> series(cfg.ntraj);
    std::vector<double> absorption(cfg.ntraj);
    std::vector<uint8_t> absorbed(cfg.ntraj);
    parallel_for_index(cfg.ntraj, [&](uint64_t i) {
        CounterRng rng = CounterRng::for_stream(cfg.master_seed, i);
        SyndromeConfig init = sample_initial_syndrome(lay, tags, rng);
        ChainResult r = simulate_chain(std::move(init), lay, cfg.t_max, times, rng, opts);
        series[i] = std::move(r.series);
        absorbed[i] = r.absorbed ? 1 : 0;
        absorption[i] = r.absorption_time;
    });
    EnsembleStats stats = reduce_series(series);

    std::vector<ResultRow> rows;
    for (const auto& [name, per_time] : stats.values) {
        for (size_t i = 0; i < per_time.size(); ++i)
            rows.push_back({run_id, cfg.backend, cfg.L, cfg.master_seed, stats.times[i], name,
                            per_time[i].mean, per_time[i].stderr_, per_time[i].n});
    }
    for (uint64_t i = 0; i < cfg.ntraj; ++i) {
        if (absorbed[i])
            rows.push_back({run_id, cfg.backend, cfg.L, i, absorption[i], "absorption_time",
                            absorption[i], 0.0, 1});
        else
            rows.push_back(
                {run_id, cfg.backend, cfg.L, i, cfg.t_max, "not_absorbed", 1.0, 0.0, 1});
    }
    return rows;
}

}  // namespace

std::vector<ResultRow> execute(const RunConfig& cfg) {
    validate_config(cfg);
    const std::string run_id = run_id_for(config_to_canonical_json(cfg));
    if (cfg.backend == "exact") return execute_exact(cfg, run_id);
    if (cfg.backend == "trajectory") return execute_trajectory(cfg, run_id);
    return execute_syndrome(cfg, run_id);
}

void run(const RunConfig& cfg) {
    std::vector<ResultRow> rows = execute(cfg);
    std::string payload = (cfg.format == "json") ? rows_to_json(rows) : rows_to_csv(rows);
    if (cfg.out.empty()) {
        std::cout << payload;
    } else {
        write_file(cfg.out, payload);
    }
}

}  // namespace encoderlab
