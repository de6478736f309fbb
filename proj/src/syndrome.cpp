#include "encoderlab/syndrome.hpp"

#include <cmath>
#include <stdexcept>

namespace encoderlab {

namespace {

std::string site_label(const ToricLayout& lay, int site) {
    bool is_vert = site >= lay.L * lay.L;
    int cell = is_vert ? site - lay.L * lay.L : site;
    int x = cell % lay.L, y = cell / lay.L;
    return std::string(is_vert ? "v_" : "p_") + std::to_string(x) + "_" + std::to_string(y);
}

}  // namespace

int SyndromeConfig::total() const {
    int c = 0;
    for (uint8_t b : plaq) c += b;
    for (uint8_t b : vert) c += b;
    return c;
}

std::vector<QubitTag> encoder_tags(const ToricLayout& lay, const PsiSpec& psi,
                                   bool rho_d_mixed) {
    if (!psi.product)
        throw std::invalid_argument("syndrome sampling needs a product psi preset");
    std::vector<QubitTag> tags(static_cast<size_t>(lay.num_qubits()), QubitTag::Mixed);
    for (size_t q = 0; q < tags.size(); ++q) {
        switch (lay.role[q]) {
            case QubitRole::B:
            case QubitRole::Bp: tags[q] = QubitTag::XPlus; break;
            case QubitRole::C:
            case QubitRole::Cp: tags[q] = QubitTag::ZPlus; break;
            case QubitRole::D: tags[q] = rho_d_mixed ? QubitTag::Mixed : QubitTag::ZPlus; break;
            default: break;
        }
    }
    QubitTag a1, a2;
    if (psi.name == "00") {
        a1 = a2 = QubitTag::ZPlus;
    } else if (psi.name == "0+") {
        a1 = QubitTag::ZPlus;
        a2 = QubitTag::XPlus;
    } else if (psi.name == "++") {
        a1 = a2 = QubitTag::XPlus;
    } else {
        throw std::invalid_argument("unsupported product psi: " + psi.name);
    }
    tags[static_cast<size_t>(lay.a1())] = a1;
    tags[static_cast<size_t>(lay.a2())] = a2;
    return tags;
}

SyndromeConfig sample_initial_syndrome(const ToricLayout& lay,
                                       const std::vector<QubitTag>& tags, CounterRng& rng) {
    const size_t nq = static_cast<size_t>(lay.num_qubits());
    if (tags.size() != nq) throw std::invalid_argument("one tag per edge qubit required");
    const int L = lay.L;

    // Bit 1 means measured value -1 in the respective basis.
    std::vector<uint8_t> zbit(nq), xbit(nq);
    for (size_t q = 0; q < nq; ++q) {
        switch (tags[q]) {
            case QubitTag::ZPlus: zbit[q] = 0; break;
            case QubitTag::ZMinus: zbit[q] = 1; break;
            default: zbit[q] = static_cast<uint8_t>(rng.next_u64() & 1); break;
        }
    }
    for (size_t q = 0; q < nq; ++q) {
        switch (tags[q]) {
            case QubitTag::XPlus: xbit[q] = 0; break;
            case QubitTag::XMinus: xbit[q] = 1; break;
            default: xbit[q] = static_cast<uint8_t>(rng.next_u64() & 1); break;
        }
    }

    SyndromeConfig cfg;
    cfg.L = L;
    cfg.plaq.assign(static_cast<size_t>(L * L), 0);
    cfg.vert.assign(static_cast<size_t>(L * L), 0);
    for (int y = 0; y < L; ++y) {
        for (int x = 0; x < L; ++x) {
            cfg.plaq[static_cast<size_t>(lay.plaq(x, y))] =
                zbit[static_cast<size_t>(lay.eh(x, y))] ^
                zbit[static_cast<size_t>(lay.eh(x, y + 1))] ^
                zbit[static_cast<size_t>(lay.ev(x, y))] ^
                zbit[static_cast<size_t>(lay.ev(x + 1, y))];
            cfg.vert[static_cast<size_t>(lay.vert(x, y)) - static_cast<size_t>(L * L)] =
                xbit[static_cast<size_t>(lay.eh(x, y))] ^
                xbit[static_cast<size_t>(lay.eh(x - 1, y))] ^
                xbit[static_cast<size_t>(lay.ev(x, y))] ^
                xbit[static_cast<size_t>(lay.ev(x, y - 1))];
        }
    }
    return cfg;
}

ChainResult simulate_chain(SyndromeConfig config, const ToricLayout& lay, double t_max,
                           const std::vector<double>& sample_times, CounterRng rng,
                           const ChainOptions& opts) {
    for (double ts : sample_times)
        if (ts < 0 || ts > t_max)
            throw std::invalid_argument("sample times must lie in [0, t_max]");
    const int L = lay.L;
    const int nsites = lay.num_sites();
    const int nplaq = L * L;

    std::vector<uint8_t> occ(static_cast<size_t>(nsites), 0);
    for (int i = 0; i < nplaq; ++i) occ[static_cast<size_t>(i)] = config.plaq[static_cast<size_t>(i)];
    for (int i = 0; i < nplaq; ++i)
        occ[static_cast<size_t>(nplaq + i)] = config.vert[static_cast<size_t>(i)];

    // Occupied non-sink sites, with a reverse index for O(1) removal.
    std::vector<int> active;
    std::vector<int> pos(static_cast<size_t>(nsites), -1);
    auto activate = [&](int site) {
        pos[static_cast<size_t>(site)] = static_cast<int>(active.size());
        active.push_back(site);
    };
    auto deactivate = [&](int site) {
        int p = pos[static_cast<size_t>(site)];
        int last = active.back();
        active[static_cast<size_t>(p)] = last;
        pos[static_cast<size_t>(last)] = p;
        active.pop_back();
        pos[static_cast<size_t>(site)] = -1;
    };

    int count_p = 0, count_v = 0;
    for (int s = 0; s < nsites; ++s) {
        if (!occ[static_cast<size_t>(s)]) continue;
        (s < nplaq ? count_p : count_v) += 1;
        if (lay.successor[static_cast<size_t>(s)] >= 0) activate(s);
    }

    ChainResult result;
    result.absorbed = (count_p + count_v == 0);
    if (result.absorbed) result.absorption_time = 0.0;

    TimeSeries& out = result.series;
    auto record = [&](double ts) {
        out.times.push_back(ts);
        out.values["Np"].push_back(count_p);
        out.values["Nv"].push_back(count_v);
        out.values["H"].push_back(count_p + count_v);
        for (double alpha : opts.alphas) {
            double d = 0;
            for (int s : active) d += std::pow(alpha, lay.f[static_cast<size_t>(s)]);
            out.values[alpha_label(alpha)].push_back(d);
        }
        out.values["empty"].push_back(count_p + count_v == 0 ? 1.0 : 0.0);
        if (opts.record_sites)
            for (int s = 0; s < nsites; ++s)
                out.values["occ_" + site_label(lay, s)].push_back(occ[static_cast<size_t>(s)]);
    };

    double clock = 0;
    size_t si = 0;
    while (!active.empty()) {
        double t_next = clock + rng.exponential(static_cast<double>(active.size()));
        while (si < sample_times.size() && sample_times[si] < t_next) {
            record(sample_times[si]);
            ++si;
        }
        if (t_next > t_max) {
            clock = t_next;
            break;
        }
        int site = active[rng.uniform_index(active.size())];
        int succ = lay.successor[static_cast<size_t>(site)];
        occ[static_cast<size_t>(site)] = 0;
        deactivate(site);
        (site < nplaq ? count_p : count_v) -= 1;
        if (occ[static_cast<size_t>(succ)]) {
            // Collision: the pair annihilates.
            occ[static_cast<size_t>(succ)] = 0;
            if (lay.successor[static_cast<size_t>(succ)] >= 0) deactivate(succ);
            (succ < nplaq ? count_p : count_v) -= 1;
        } else {
            occ[static_cast<size_t>(succ)] = 1;
            if (lay.successor[static_cast<size_t>(succ)] >= 0) activate(succ);
            (succ < nplaq ? count_p : count_v) += 1;
        }
        clock = t_next;
        if (active.empty() && count_p + count_v == 0) {
            result.absorbed = true;
            result.absorption_time = clock;
        }
    }
    while (si < sample_times.size()) {
        record(sample_times[si]);
        ++si;
    }
    return result;
}

EnsembleStats run_chain_ensemble(const ToricLayout& lay, const std::vector<QubitTag>& tags,
                                 double t_max, const std::vector<double>& sample_times,
                                 uint64_t ntraj, uint64_t master_seed,
                                 const ChainOptions& opts) {
    if (ntraj == 0) throw std::invalid_argument("ensemble needs ntraj >= 1");
    std::vector<TimeSeries> series(ntraj);
    parallel_for_index(ntraj, [&](uint64_t i) {
        CounterRng rng = CounterRng::for_stream(master_seed, i);
        SyndromeConfig cfg = sample_initial_syndrome(lay, tags, rng);
        series[i] = simulate_chain(std::move(cfg), lay, t_max, sample_times, rng, opts).series;
    });
    return reduce_series(series);
}

std::vector<ConvergenceRow> convergence_experiment(const std::vector<int>& l_values,
                                                   double epsilon, uint64_t ntraj,
                                                   uint64_t master_seed, const PsiSpec& psi,
                                                   bool rho_d_mixed) {
    if (ntraj == 0) throw std::invalid_argument("ensemble needs ntraj >= 1");
    if (epsilon <= 0 || epsilon > 1) throw std::invalid_argument("epsilon must be in (0, 1]");
    std::vector<ConvergenceRow> rows;
    for (int L : l_values) {
        ToricLayout lay = build_toric_layout(L);
        std::vector<QubitTag> tags = encoder_tags(lay, psi, rho_d_mixed);
        const double bound = 4.0 * std::log(2.0) * L + 2.0 * std::log(1.0 / epsilon);
        const double horizon = 4.0 * bound + 50.0;

        std::vector<double> times(ntraj, 0.0);
        std::vector<uint8_t> absorbed(ntraj, 0);
        parallel_for_index(ntraj, [&](uint64_t i) {
            CounterRng rng = CounterRng::for_stream(master_seed ^ (0x10001ULL * L), i);
            SyndromeConfig cfg = sample_initial_syndrome(lay, tags, rng);
            ChainResult r = simulate_chain(std::move(cfg), lay, horizon, {}, rng, {});
            absorbed[i] = r.absorbed ? 1 : 0;
            times[i] = r.absorbed ? r.absorption_time : horizon;
        });

        ConvergenceRow row;
        row.L = L;
        row.bound = bound;
        row.time_mean = summarize(times);
        row.time_median = quantile(times, 0.5);
        row.time_quantile = quantile(times, 1.0 - epsilon);
        for (uint64_t i = 0; i < ntraj; ++i) {
            if (!absorbed[i]) row.not_absorbed += 1;
            if (times[i] > bound) {
                row.exceed_count += 1;
                if (row.exceed_streams.size() < 16) row.exceed_streams.push_back(i);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace encoderlab
