#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "encoderlab/io.hpp"

namespace encoderlab {

/// Invalid configuration; the CLI maps it to exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Embedded verification failed; the CLI maps it to exit code 1.
struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int L = 2;
    std::string backend = "exact";  // exact | trajectory | syndrome
    double t_max = 25.0;
    std::vector<double> sample_times;  // explicit; empty -> uniform grid
    int sample_count = 26;             // used when sample_times is empty
    uint64_t ntraj = 1000;
    uint64_t master_seed = 1;
    double alpha = 2.0;
    double epsilon = 0.1;
    std::string psi = "00";         // preset name or explicit amplitudes
    std::string rho_d = "mixed";    // mixed | zero
    bool include_sinks = true;
    std::vector<int> l_values = {8, 16, 32, 64, 128};  // scaling sweep
    std::string out;                // output path; empty -> stdout
    std::string format = "csv";     // csv | json
};

RunConfig config_from_json_file(const std::string& path);

/// Canonical JSON rendering of a config; run_id is derived from it.
std::string config_to_canonical_json(const RunConfig& cfg);

/// Dispatches to the selected engine and renders rows; pure function of
/// (config, master_seed).
std::vector<ResultRow> execute(const RunConfig& cfg);

/// execute() + serialize + write (or print to stdout when out is empty).
void run(const RunConfig& cfg);

std::vector<double> resolve_sample_times(const RunConfig& cfg);

}  // namespace encoderlab
