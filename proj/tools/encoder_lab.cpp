#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "encoderlab/code_spec.hpp"
#include "encoderlab/io.hpp"
#include "encoderlab/runner.hpp"
#include "encoderlab/stats.hpp"
#include "encoderlab/syndrome.hpp"
#include "encoderlab/toric.hpp"
#include "encoderlab/verify.hpp"

namespace {

using namespace encoderlab;

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stod(tok));
    return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

struct CliState {
    RunConfig cfg;
    std::string sample_times_csv;
    std::string l_list_csv;

    void apply_lists() {
        if (!sample_times_csv.empty()) cfg.sample_times = parse_double_list(sample_times_csv);
        if (!l_list_csv.empty()) cfg.l_values = parse_int_list(l_list_csv);
    }
};

void add_run_options(CLI::App* cmd, CliState& st) {
    cmd->add_option("--L", st.cfg.L, "lattice side");
    cmd->add_option("--backend", st.cfg.backend, "exact | trajectory | syndrome");
    cmd->add_option("--t-max", st.cfg.t_max, "time horizon");
    cmd->add_option("--sample-times", st.sample_times_csv, "comma list of sample times");
    cmd->add_option("--samples", st.cfg.sample_count, "uniform sample count on [0, t_max]");
    cmd->add_option("--ntraj", st.cfg.ntraj, "trajectories / chains per ensemble");
    cmd->add_option("--seed", st.cfg.master_seed, "master seed");
    cmd->add_option("--alpha", st.cfg.alpha, "potential weight base");
    cmd->add_option("--epsilon", st.cfg.epsilon, "target tail probability");
    cmd->add_option("--psi", st.cfg.psi, "input state preset or amplitudes");
    cmd->add_option("--rho-d", st.cfg.rho_d, "mixed | zero");
    cmd->add_flag("--include-sinks,!--no-include-sinks", st.cfg.include_sinks,
                  "keep the sink dephasing channels");
    cmd->add_option("--L-list", st.l_list_csv, "comma list of lattice sides (scaling)");
    cmd->add_option("--out", st.cfg.out, "output path (default: stdout)");
    cmd->add_option("--format", st.cfg.format, "csv | json");
}

int cmd_validate(const CliState& st, const std::string& code, int rep_n) {
    ValidationReport rep;
    if (code == "toric") {
        auto [spec, lay] = build_toric(st.cfg.L, st.cfg.include_sinks);
        rep = validate_code(spec);
    } else if (code == "repetition") {
        rep = validate_code(build_repetition(rep_n));
    } else {
        throw ConfigError("--code must be toric or repetition");
    }
    std::cout << rep.str() << (rep.ok() ? "" : "\n");
    if (!rep.ok()) throw VerificationFailure("validation failed");
    return 0;
}

int cmd_verify_logical(const CliState& st, int l_max) {
    bool all_ok = true;
    int hi = std::max(st.cfg.L, l_max);
    for (int L = st.cfg.L; L <= hi; ++L) {
        auto [spec, lay] = build_toric(L, st.cfg.include_sinks);
        VerificationReport rep = verify_logical_fixedpoint(spec);
        std::cout << "L=" << L << ": " << (rep.ok() ? "pass" : "FAIL") << "\n";
        for (const Check& c : rep.checks)
            if (!c.pass) std::cout << "  " << c.name << ": " << c.detail << "\n";
        all_ok &= rep.ok();
    }
    if (!all_ok) throw VerificationFailure("logical fixed point violated");
    return 0;
}

int cmd_theorem_time(const CliState& st) {
    std::cout << "theorem_time=" << format_double(theorem_time(st.cfg.L, st.cfg.epsilon))
              << "\n"
              << "lemma2_time=" << format_double(lemma2_time(st.cfg.L, st.cfg.epsilon)) << "\n";
    return 0;
}

int cmd_scaling(const CliState& st) {
    auto rows = convergence_experiment(st.cfg.l_values, st.cfg.epsilon, st.cfg.ntraj,
                                       st.cfg.master_seed, psi_preset(st.cfg.psi),
                                       st.cfg.rho_d == "mixed");
    const std::string run_id = run_id_for(config_to_canonical_json(st.cfg));
    std::vector<ResultRow> out;
    for (const auto& row : rows) {
        auto push = [&](const std::string& name, double value, double se = 0, uint64_t n = 1) {
            out.push_back({run_id, "syndrome", row.L, st.cfg.master_seed, 0.0, name, value, se,
                           n});
        };
        push("absorption_time_mean", row.time_mean.mean, row.time_mean.stderr_,
             row.time_mean.n);
        push("absorption_time_median", row.time_median);
        push("absorption_time_q", row.time_quantile);
        push("bound", row.bound);
        push("exceed_count", static_cast<double>(row.exceed_count));
        push("not_absorbed", static_cast<double>(row.not_absorbed));
        for (uint64_t s : row.exceed_streams)
            out.push_back({run_id, "syndrome", row.L, s, 0.0, "exceeded_bound", 1.0, 0.0, 1});
    }
    std::string payload =
        (st.cfg.format == "json") ? rows_to_json(out) : rows_to_csv(out);
    if (st.cfg.out.empty()) std::cout << payload;
    else write_file(st.cfg.out, payload);

    std::vector<double> xs, ys;
    for (const auto& row : rows) {
        xs.push_back(row.L);
        ys.push_back(row.time_mean.mean);
    }
    if (xs.size() >= 2) {
        LinearFit fit = linear_fit(xs, ys);
        std::cerr << "fit: slope=" << fit.slope << " intercept=" << fit.intercept
                  << " R2=" << fit.r2 << "\n";
    }
    return 0;
}

int cmd_verify_all(const CliState& st) {
    auto results = run_acceptance(st.cfg.master_seed, &std::cout);
    bool ok = true;
    for (const auto& r : results) ok &= r.pass;
    if (!ok) throw VerificationFailure("acceptance criteria failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dissipative toric-code encoder laboratory"};
    app.require_subcommand(1);

    CliState st;

    // A config file forms the base; explicit flags override it.
    std::string config_path;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    }
    try {
        if (!config_path.empty()) st.cfg = config_from_json_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    std::string config_sink;

    std::string code = "toric";
    int rep_n = 5;
    int l_max = 0;

    CLI::App* validate = app.add_subcommand("validate", "build a code and check invariants");
    add_run_options(validate, st);
    validate->add_option("--config", config_sink, "JSON config file");
    validate->add_option("--code", code, "toric | repetition");
    validate->add_option("--n", rep_n, "repetition length");

    CLI::App* verify_logical =
        app.add_subcommand("verify-logical", "symbolic logical fixed-point check");
    add_run_options(verify_logical, st);
    verify_logical->add_option("--config", config_sink, "JSON config file");
    verify_logical->add_option("--L-max", l_max, "check L..L-max");

    for (const char* name : {"exact-run", "traj-run", "syndrome-run", "run"}) {
        CLI::App* sub = app.add_subcommand(name, "run an engine and write results");
        add_run_options(sub, st);
        sub->add_option("--config", config_sink, "JSON config file");
    }

    CLI::App* scaling = app.add_subcommand("scaling", "absorption-time scaling sweep");
    add_run_options(scaling, st);
    scaling->add_option("--config", config_sink, "JSON config file");

    CLI::App* ttime = app.add_subcommand("theorem-time", "encoding-time targets");
    add_run_options(ttime, st);
    ttime->add_option("--config", config_sink, "JSON config file");

    CLI::App* verify_all = app.add_subcommand("verify-all", "full acceptance suite");
    add_run_options(verify_all, st);
    verify_all->add_option("--config", config_sink, "JSON config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        st.apply_lists();
        if (validate->parsed()) return cmd_validate(st, code, rep_n);
        if (verify_logical->parsed()) return cmd_verify_logical(st, l_max);
        if (ttime->parsed()) return cmd_theorem_time(st);
        if (scaling->parsed()) return cmd_scaling(st);
        if (verify_all->parsed()) return cmd_verify_all(st);
        // engine runs
        for (CLI::App* sub : app.get_subcommands()) {
            if (sub->get_name() == "exact-run") st.cfg.backend = "exact";
            if (sub->get_name() == "traj-run") st.cfg.backend = "trajectory";
            if (sub->get_name() == "syndrome-run") st.cfg.backend = "syndrome";
        }
        run(st.cfg);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const VerificationFailure& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
