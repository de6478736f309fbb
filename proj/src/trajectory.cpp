#include "encoderlab/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace encoderlab {

void fire_site(Trajectory& traj, const CodeSpec& spec, int site) {
    const Site& s = spec.sites[static_cast<size_t>(site)];
    MeasureResult r = traj.tableau.measure(s.stabilizer, traj.rng);
    if (r.outcome < 0 && !s.correction.is_identity_mask())
        traj.tableau.apply_pauli(s.correction);
    ++traj.event_count;
}

double code_overlap(const StabilizerTableau& t, const CodeSpec& spec) {
    StabilizerTableau scratch = t;
    double prob = 1.0;
    for (const Site& s : spec.sites) {
        MeasureResult r = scratch.measure_forced(s.stabilizer, +1);
        if (r.deterministic) {
            if (r.outcome < 0) return 0.0;
        } else {
            prob *= 0.5;
        }
    }
    return prob;
}

namespace {

struct Recorder {
    const CodeSpec& spec;
    const TrajectoryOptions& opts;
    std::vector<LogicalProduct> logicals;
    bool has_pv = false;

    explicit Recorder(const CodeSpec& s, const TrajectoryOptions& o) : spec(s), opts(o) {
        if (opts.record_logicals) logicals = logical_products(spec);
        for (const Site& site : spec.sites)
            has_pv |= !site.name.empty() && (site.name[0] == 'p' || site.name[0] == 'v');
    }

    void operator()(TimeSeries& ts, const StabilizerTableau& tab, double t_sample) const {
        ts.times.push_back(t_sample);
        double h = 0, np = 0, nv = 0;
        std::vector<double> d(opts.alphas.size(), 0.0);
        for (const Site& site : spec.sites) {
            double occ = 0.5 * (1.0 - tab.expectation(site.stabilizer));
            if (opts.record_site_occupations) ts.values["occ_" + site.name].push_back(occ);
            h += occ;
            if (!site.name.empty() && site.name[0] == 'p') np += occ;
            if (!site.name.empty() && site.name[0] == 'v') nv += occ;
            if (!site.sink)
                for (size_t a = 0; a < opts.alphas.size(); ++a)
                    d[a] += std::pow(opts.alphas[a], site.f) * occ;
        }
        ts.values["H"].push_back(h);
        if (has_pv) {
            ts.values["Np"].push_back(np);
            ts.values["Nv"].push_back(nv);
        }
        for (size_t a = 0; a < opts.alphas.size(); ++a)
            ts.values[alpha_label(opts.alphas[a])].push_back(d[a]);
        for (const LogicalProduct& lp : logicals)
            ts.values[lp.name].push_back(tab.expectation(lp.op));
        if (opts.record_code_overlap)
            ts.values["code_overlap"].push_back(code_overlap(tab, spec));
    }
};

}  // namespace

TimeSeries run_trajectory(const CodeSpec& spec, const StabilizerTableau& init, double t_max,
                          const std::vector<double>& sample_times, CounterRng rng,
                          const TrajectoryOptions& opts) {
    for (double ts : sample_times)
        if (ts < 0 || ts > t_max)
            throw std::invalid_argument("sample times must lie in [0, t_max]");

    Trajectory traj{init, 0.0, rng, 0};
    Recorder record(spec, opts);
    TimeSeries out;

    std::vector<LogicalProduct> tracked;
    std::vector<int> tracked_value;
    if (opts.check_logical_conservation) {
        tracked = logical_products(spec);
        for (const LogicalProduct& lp : tracked)
            tracked_value.push_back(traj.tableau.expectation(lp.op));
    }

    const double rate = static_cast<double>(spec.active.size());
    size_t si = 0;
    if (rate > 0) {
        for (;;) {
            double t_next = traj.clock + traj.rng.exponential(rate);
            while (si < sample_times.size() && sample_times[si] < t_next) {
                record(out, traj.tableau, sample_times[si]);
                ++si;
            }
            if (t_next > t_max) break;
            int site = spec.active[traj.rng.uniform_index(spec.active.size())];
            fire_site(traj, spec, site);
            traj.clock = t_next;

            if (opts.check_logical_conservation) {
                for (size_t i = 0; i < tracked.size(); ++i) {
                    int now = traj.tableau.expectation(tracked[i].op);
                    if (tracked_value[i] != 0 && now != tracked_value[i])
                        throw std::logic_error("definite logical value changed: " +
                                               tracked[i].name);
                    tracked_value[i] = now;
                }
            }
        }
    }
    while (si < sample_times.size()) {
        record(out, traj.tableau, sample_times[si]);
        ++si;
    }
    out.values["event_count"] = std::vector<double>(sample_times.size(),
                                                    static_cast<double>(traj.event_count));
    return out;
}

EnsembleStats run_ensemble(const CodeSpec& spec, const StabilizerTableau& init, double t_max,
                           const std::vector<double>& sample_times, uint64_t ntraj,
                           uint64_t master_seed, const TrajectoryOptions& opts) {
    if (ntraj == 0) throw std::invalid_argument("ensemble needs ntraj >= 1");
    std::vector<TimeSeries> series(ntraj);
    parallel_for_index(ntraj, [&](uint64_t i) {
        series[i] = run_trajectory(spec, init, t_max, sample_times,
                                   CounterRng::for_stream(master_seed, i), opts);
    });
    return reduce_series(series);
}

StabilizerTableau make_encoder_initial_tableau(const CodeSpec& spec, const ToricLayout& lay,
                                               const PsiSpec& psi, bool rho_d_mixed) {
    if (!psi.stabilizer)
        throw std::invalid_argument("trajectory engine needs a stabilizer psi preset");
    const size_t n = spec.n;
    StabilizerTableau t(n);
    for (size_t q = 0; q < n; ++q) {
        switch (lay.role[q]) {
            case QubitRole::B:
            case QubitRole::Bp: t.measure_forced(pauli_single(n, q, 'X'), +1); break;
            case QubitRole::C:
            case QubitRole::Cp: t.measure_forced(pauli_single(n, q, 'Z'), +1); break;
            case QubitRole::D:
                if (!rho_d_mixed) t.measure_forced(pauli_single(n, q, 'Z'), +1);
                break;
            default: break;
        }
    }
    const size_t a1 = static_cast<size_t>(lay.a1());
    const size_t a2 = static_cast<size_t>(lay.a2());
    if (psi.name == "00") {
        t.measure_forced(pauli_single(n, a1, 'Z'), +1);
        t.measure_forced(pauli_single(n, a2, 'Z'), +1);
    } else if (psi.name == "0+") {
        t.measure_forced(pauli_single(n, a1, 'Z'), +1);
        t.measure_forced(pauli_single(n, a2, 'X'), +1);
    } else if (psi.name == "++") {
        t.measure_forced(pauli_single(n, a1, 'X'), +1);
        t.measure_forced(pauli_single(n, a2, 'X'), +1);
    } else if (psi.name == "bell") {
        t.measure_forced(pauli_mul(pauli_single(n, a1, 'X'), pauli_single(n, a2, 'X')), +1);
        t.measure_forced(pauli_mul(pauli_single(n, a1, 'Z'), pauli_single(n, a2, 'Z')), +1);
    } else {
        throw std::invalid_argument("unsupported stabilizer psi: " + psi.name);
    }
    return t;
}

}  // namespace encoderlab
