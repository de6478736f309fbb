#include "encoderlab/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <thread>

namespace encoderlab {

MeanStderr summarize(const std::vector<double>& values) {
    MeanStderr r;
    r.n = values.size();
    if (r.n == 0) return r;
    double sum = 0;
    for (double v : values) sum += v;
    r.mean = sum / static_cast<double>(r.n);
    if (r.n < 2) return r;
    double ss = 0;
    for (double v : values) ss += (v - r.mean) * (v - r.mean);
    double var = ss / static_cast<double>(r.n - 1);
    r.stderr_ = std::sqrt(var / static_cast<double>(r.n));
    return r;
}

double quantile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile of empty sample");
    std::sort(values.begin(), values.end());
    double rank = p * static_cast<double>(values.size());
    size_t idx = static_cast<size_t>(std::ceil(rank));
    if (idx == 0) idx = 1;
    if (idx > values.size()) idx = values.size();
    return values[idx - 1];
}

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("linear_fit needs two same-length samples");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ymean = sy / n;
    for (size_t i = 0; i < xs.size(); ++i) {
        double pred = fit.intercept + fit.slope * xs[i];
        ss_res += (ys[i] - pred) * (ys[i] - pred);
        ss_tot += (ys[i] - ymean) * (ys[i] - ymean);
    }
    fit.r2 = (ss_tot > 0) ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

EnsembleStats reduce_series(const std::vector<TimeSeries>& series) {
    EnsembleStats out;
    out.ntraj = series.size();
    if (series.empty()) return out;
    out.times = series[0].times;
    for (const auto& [name, vals] : series[0].values) {
        std::vector<MeanStderr> per_time(out.times.size());
        std::vector<double> column(series.size());
        for (size_t ti = 0; ti < out.times.size(); ++ti) {
            for (size_t s = 0; s < series.size(); ++s)
                column[s] = series[s].values.at(name).at(ti);
            per_time[ti] = summarize(column);
        }
        out.values.emplace(name, std::move(per_time));
    }
    return out;
}

std::string alpha_label(double alpha) {
    std::string s = std::to_string(alpha);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return "D_a" + s;
}

unsigned thread_cap() {
    if (const char* env = std::getenv("ENCODER_LAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void parallel_for_index(uint64_t count, const std::function<void(uint64_t)>& fn) {
    unsigned workers = std::min<uint64_t>(thread_cap(), count);
    if (workers <= 1) {
        for (uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<uint64_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                uint64_t i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(error);
}

}  // namespace encoderlab
