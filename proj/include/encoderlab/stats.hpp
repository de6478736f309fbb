#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace encoderlab {

struct MeanStderr {
    double mean = 0;
    double stderr_ = 0;  // sample stddev / sqrt(n); 0 for n < 2
    uint64_t n = 0;
};

MeanStderr summarize(const std::vector<double>& values);

/// Empirical p-quantile (order statistic ceil(p*n)).
double quantile(std::vector<double> values, double p);

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
};
LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

/// Observable time series of one trajectory/evolution.
struct TimeSeries {
    std::vector<double> times;
    std::map<std::string, std::vector<double>> values;
};

/// Ensemble aggregate: per (observable, sample time) mean and stderr.
struct EnsembleStats {
    std::vector<double> times;
    std::map<std::string, std::vector<MeanStderr>> values;
    uint64_t ntraj = 0;
};

/// Reduce per-trajectory series (all on the same time grid) in index order,
/// so the result is independent of how the work was scheduled.
EnsembleStats reduce_series(const std::vector<TimeSeries>& series);

/// Compact label for alpha used in observable names, e.g. "D_a2", "D_a1.5".
std::string alpha_label(double alpha);

/// Worker count: ENCODER_LAB_THREADS if set, else hardware concurrency.
unsigned thread_cap();

/// Runs fn(i) for i in [0, count) on up to thread_cap() workers.
void parallel_for_index(uint64_t count, const std::function<void(uint64_t)>& fn);

}  // namespace encoderlab
