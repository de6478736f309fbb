#include "encoderlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>
#include <set>
#include <stdexcept>

#include "encoderlab/dense.hpp"
#include "encoderlab/rng.hpp"
#include "encoderlab/stats.hpp"
#include "encoderlab/syndrome.hpp"
#include "encoderlab/toric.hpp"
#include "encoderlab/trajectory.hpp"

namespace encoderlab {

double theorem_time(int L, double epsilon) {
    if (L < 2 || epsilon <= 0 || epsilon > 1)
        throw std::invalid_argument("theorem_time needs L >= 2 and epsilon in (0, 1]");
    return 4.0 * std::log(2.0) * L + 2.0 * std::log(16.0 / (epsilon * epsilon));
}

double lemma2_time(int L, double epsilon) {
    if (L < 2 || epsilon <= 0 || epsilon > 1)
        throw std::invalid_argument("lemma2_time needs L >= 2 and epsilon in (0, 1]");
    return 4.0 * std::log(2.0) * L + 2.0 * std::log(1.0 / epsilon);
}

VerificationReport verify_logical_fixedpoint(const CodeSpec& spec) {
    VerificationReport rep;
    for (const LogicalProduct& lp : logical_products(spec)) {
        bool pass = true;
        std::string detail;
        for (const Site& site : spec.sites) {
            if (!commutes(lp.op, site.stabilizer)) {
                pass = false;
                detail = "anticommutes with stabilizer at " + site.name;
                break;
            }
            if (!commutes(lp.op, site.correction)) {
                pass = false;
                detail = "anticommutes with correction at " + site.name;
                break;
            }
        }
        rep.checks.push_back({"fixedpoint " + lp.name, pass, pass ? 1.0 : 0.0, 1.0, detail});
    }
    return rep;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

CriterionResult make_criterion(int id, std::string name) {
    CriterionResult cr;
    cr.id = id;
    cr.name = std::move(name);
    return cr;
}

void add_check(CriterionResult& cr, const std::string& name, bool pass, double measured,
               double bound, const std::string& detail = "") {
    cr.checks.push_back({name, pass, measured, bound, detail});
}

void finish(CriterionResult& cr, Clock::time_point t0, std::ostream* progress) {
    cr.pass = true;
    for (const Check& c : cr.checks) cr.pass &= c.pass;
    cr.seconds = elapsed(t0);
    if (progress) {
        *progress << (cr.pass ? "[PASS] " : "[FAIL] ") << "criterion " << cr.id << ": "
                  << cr.name << " (" << cr.checks.size() << " checks, " << cr.seconds << " s)\n";
        if (!cr.pass) {
            for (const Check& c : cr.checks)
                if (!c.pass)
                    *progress << "       failed: " << c.name << " measured=" << c.measured
                              << " bound=" << c.bound << " " << c.detail << "\n";
        }
        progress->flush();
    }
}

DensityMatrix random_density(int n, CounterRng& rng) {
    const int dim = 1 << n;
    // Box–Muller keeps the draw sequence platform-independent.
    auto gauss = [&rng]() {
        double u1 = rng.uniform(), u2 = rng.uniform();
        u1 = std::max(u1, 1e-300);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    };
    Eigen::MatrixXcd a(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) a(i, j) = std::complex<double>(gauss(), gauss());
    Eigen::MatrixXcd rho = a * a.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(n, std::move(rho));
}

double site_occupation(const Eigen::MatrixXcd& rho, const Site& site) {
    return 0.5 * (1.0 - pauli_expectation_dense(site.stabilizer, rho).real());
}

// Criterion 1: dynamic preservation of every logical expectation under the
// exact semigroup, for stabilizer and non-stabilizer inputs.
CriterionResult criterion_logical_preservation(uint64_t, std::ostream* progress) {
    auto t0 = Clock::now();
    CriterionResult cr = make_criterion(1, "logical preservation (exact engine, L=2)");
    auto [spec, lay] = build_toric(2);
    const std::vector<double> times = {0, 2, 5, 10, 20};
    auto logicals = logical_products(spec);

    ObservableSet obs;
    for (const auto& lp : logicals) {
        PauliOp op = lp.op;
        obs.emplace_back(lp.name, [op](const Eigen::MatrixXcd& rho) {
            return pauli_expectation_dense(op, rho).real();
        });
    }

    struct Job {
        std::string psi;
        bool mixed;
    };
    std::vector<Job> jobs;
    for (const char* psi : {"00", "++", "bell", "magic"})
        for (bool mixed : {false, true}) jobs.push_back({psi, mixed});

    std::vector<double> worst(jobs.size(), 0.0);
    parallel_for_index(jobs.size(), [&](uint64_t ji) {
        const Job& job = jobs[ji];
        PsiSpec psi = psi_preset(job.psi);
        DensityMatrix rho0 = make_encoder_initial_dm(spec, lay, psi, job.mixed);
        EvolutionResult res = evolve(rho0, spec, times.back(), times, obs, {1e-9, false});
        double w = 0;
        for (const auto& lp : logicals) {
            double target = unencoded_expectation(psi, lp.factors);
            for (double v : res.observables.at(lp.name)) w = std::max(w, std::abs(v - target));
        }
        worst[ji] = w;
    });
    for (size_t ji = 0; ji < jobs.size(); ++ji) {
        add_check(cr,
                  "psi=" + jobs[ji].psi + " rhoD=" + (jobs[ji].mixed ? "mixed" : "zero") +
                      " max|<P>_t - <P>_0|",
                  worst[ji] <= 1e-6, worst[ji], 1e-6);
    }
    finish(cr, t0, progress);
    return cr;
}

// Criterion 2: symbolic fixed point across sizes, plus a mutated fixture
// that must fail.
CriterionResult criterion_fixedpoint(uint64_t, std::ostream* progress) {
    auto t0 = Clock::now();
    CriterionResult cr = make_criterion(2, "logical fixed point (symbolic, L=2..16)");
    for (int L = 2; L <= 16; ++L) {
        auto [spec, lay] = build_toric(L);
        bool ok = verify_logical_fixedpoint(spec).ok();
        add_check(cr, "toric L=" + std::to_string(L), ok, ok ? 1 : 0, 1);
    }
    {
        auto [spec, lay] = build_toric(3);
        // Relocate one bulk correction onto the support of Z̄_1.
        Site& site = spec.sites[static_cast<size_t>(lay.plaq(1, 1))];
        site.correction = pauli_single(spec.n, static_cast<size_t>(lay.eh(1, 0)), 'X');
        bool detected = !verify_logical_fixedpoint(spec).ok();
        add_check(cr, "mutated correction detected", detected, detected ? 1 : 0, 1);
    }
    finish(cr, t0, progress);
    return cr;
}

// Criterion 3: every channel lowers its own excitation weight.
CriterionResult criterion_energy_lowering(uint64_t master_seed, std::ostream* progress) {
    auto t0 = Clock::now();
    CriterionResult cr = make_criterion(3, "energy lowering (200 random states, L=2)");
    auto [spec, lay] = build_toric(2);
    CounterRng rng = CounterRng::for_stream(master_seed, 3);
    double worst = -1e300;
    for (int trial = 0; trial < 200; ++trial) {
        DensityMatrix rho = random_density(static_cast<int>(spec.n), rng);
        for (size_t j = 0; j < spec.sites.size(); ++j) {
            DensityMatrix out = apply_channel_T(rho, spec, static_cast<int>(j));
            double before = site_occupation(rho.mat, spec.sites[j]);
            double after = site_occupation(out.mat, spec.sites[j]);
            worst = std::max(worst, after - before);
        }
    }
    add_check(cr, "max tr(T(rho)P-) - tr(rho P-)", worst <= 1e-10, worst, 1e-10);
    finish(cr, t0, progress);
    return cr;
}

struct ExactRun {
    std::vector<double> times;
    EvolutionResult res;
    DensityMatrix target;  // encoded bell state
    CodeSpec spec;
    ToricLayout lay;
};

// One shared exact evolution (bell, mixed D) feeding criteria 4, 5, 6a, 7a.
ExactRun shared_exact_run() {
    ExactRun run;
    auto built = build_toric(2);
    run.spec = std::move(built.first);
    run.lay = std::move(built.second);
    std::set<double> grid;
    for (double t = 0; t <= 25.0 + 1e-9; t += 0.5) grid.insert(t);
    grid.insert(lemma2_time(2, 0.1));
    grid.insert(lemma2_time(2, 0.01));
    grid.insert(theorem_time(2, 0.25));
    run.times.assign(grid.begin(), grid.end());

    PsiSpec bell = psi_preset("bell");
    DensityMatrix rho0 = make_encoder_initial_dm(run.spec, run.lay, bell, true);

    ObservableSet obs;
    {
        CodeSpec spec = run.spec;
        obs.emplace_back("qperp", [spec](const Eigen::MatrixXcd& rho) {
            return 1.0 - ground_overlap(DensityMatrix(static_cast<int>(spec.n), rho), spec);
        });
        obs.emplace_back("D_a2", [spec](const Eigen::MatrixXcd& rho) {
            double d = 0;
            for (const Site& s : spec.sites)
                if (!s.sink) d += std::pow(2.0, s.f) * site_occupation(rho, s);
            return d;
        });
        obs.emplace_back("H", [spec](const Eigen::MatrixXcd& rho) {
            double h = 0;
            for (const Site& s : spec.sites) h += site_occupation(rho, s);
            return h;
        });
    }
    run.res = evolve(rho0, run.spec, 25.0, run.times, obs, {1e-9, true});
    run.target = encoded_state(bell, run.spec, run.lay);
    return run;
}

// Criterion 4: convergence envelope 2^{2L} e^{-t/2} plus the spot bounds at
// the convergence-time targets.
CriterionResult criterion_envelope(const ExactRun& run, std::ostream* progress) {
    auto t0 = Clock::now();
    CriterionResult cr = make_criterion(4, "convergence envelope (exact engine, L=2)");
    const auto& qperp = run.res.observables.at("qperp");
    double worst_ratio = 0;
    for (size_t i = 0; i < run.times.size(); ++i) {
        double bound = 16.0 * std::exp(-run.times[i] / 2.0);
        worst_ratio = std::max(worst_ratio, qperp[i] / bound);
    }
    add_check(cr, "max tr(Qperp rho_t) / (16 e^{-t/2})", worst_ratio <= 1.0, worst_ratio, 1.0);
    for (double eps : {0.1, 0.01}) {
        double tt = lemma2_time(2, eps);
        size_t idx = static_cast<size_t>(
            std::lower_bound(run.times.begin(), run.times.end(), tt - 1e-9) -
            run.times.begin());
        add_check(cr, "tr(Qperp) <= eps at lemma2_time(2, " + std::to_string(eps) + ")",
                  qperp[idx] <= eps, qperp[idx], eps);
    }
    finish(cr, t0, progress);
    return cr;
}

// Criterion 5: end-to-end encoding in trace norm.
CriterionResult criterion_end_to_end(const ExactRun& run, std::ostream* progress) {
    auto t0 = Clock::now();
    CriterionResult cr = make_criterion(5, "end-to-end encoding (exact engine, psi=bell)");
    auto state_at = [&](double tt) -> const DensityMatrix& {
        size_t idx = static_cast<size_t>(
            std::lower_bound(run.times.begin(), run.times.end(), tt - 1e-9) -
            run.times.begin());
        return run.res.states.at(idx);
    };
    {
        double tt = theorem_time(2, 0.25);
        double d = trace_distance(state_at(tt), run.target);
        add_check(cr, "trace distance at theorem_time(2, 0.25)", d <= 0.25, d, 0.25);
    }
    {
        double eps = 0.01;
        double tt = lemma2_time(2, eps);
        double d = trace_distance(state_at(tt), run.target);
        double bound = 4.0 * std::sqrt(eps);
        add_check(cr, "trace distance <= 4 sqrt(eps) at lemma2_time(2, 0.01)", d <= bound, d,
                  bound);
    }
    finish(cr, t0, progress);
    return cr;
}

// Criterion 6: potential decay, exact and trajectory-ensemble.
CriterionResult criterion_potential_decay(const ExactRun& run, uint64_t master_seed,
                                          std::ostream* progress) {
    auto t0 = Clock::now();
    CriterionResult cr = make_criterion(6, "potential decay (exact L=2, trajectory L=4)");
    {
        const auto& d = run.res.observables.at("D_a2");
        double d0 = d[0];
        double worst = -1e300;
        for (size_t i = 0; i < run.times.size(); ++i)
            worst = std::max(worst, d[i] - d0 * std::exp(-run.times[i] / 2.0));
        add_check(cr, "exact: max <D>_t - <D>_0 e^{-t/2}", worst <= 1e-6, worst, 1e-6);
    }
    {
        auto [spec, lay] = build_toric(4);
        StabilizerTableau init =
            make_encoder_initial_tableau(spec, lay, psi_preset("00"), true);
        TrajectoryOptions opts;
        opts.record_site_occupations = false;
        opts.record_logicals = false;
        opts.record_code_overlap = false;
        std::vector<double> times = {0, 0.5, 1, 2, 3, 4, 6, 8, 10};
        EnsembleStats stats =
            run_ensemble(spec, init, times.back(), times, 2000, master_seed ^ 0x6001, opts);
        const auto& d = stats.values.at("D_a2");
        double d0 = d[0].mean;
        double worst = -1e300;
        for (size_t i = 0; i < times.size(); ++i) {
            double slack = 4.0 * d[i].stderr_;
            worst = std::max(worst, d[i].mean - (d0 * std::exp(-times[i] / 2.0) + slack));
        }
        add_check(cr, "trajectory: max <D>_t - (<D>_0 e^{-t/2} + 4 se)", worst <= 0, worst, 0);
    }
    finish(cr, t0, progress);
    return cr;
}

// Criterion 7: cross-engine agreement.
CriterionResult criterion_cross_engine(const ExactRun& run, uint64_t master_seed,
                                       std::ostream* progress) {
    auto t0 = Clock::now();
    CriterionResult cr = make_criterion(7, "cross-engine oracles (exact/trajectory/syndrome)");
    {
        // (a) exact vs trajectory <H>(t) at L=2, same bell/mixed initial state.
        std::vector<double> times = {1, 2, 4, 6, 10};
        StabilizerTableau init =
            make_encoder_initial_tableau(run.spec, run.lay, psi_preset("bell"), true);
        TrajectoryOptions opts;
        opts.record_site_occupations = false;
        opts.record_logicals = false;
        opts.record_code_overlap = false;
        EnsembleStats stats = run_ensemble(run.spec, init, times.back(), times, 10000,
                                           master_seed ^ 0x7001, opts);
        double worst = 0;
        for (size_t i = 0; i < times.size(); ++i) {
            size_t idx = static_cast<size_t>(
                std::lower_bound(run.times.begin(), run.times.end(), times[i] - 1e-9) -
                run.times.begin());
            double exact_h = run.res.observables.at("H")[idx];
            const MeanStderr& ms = stats.values.at("H")[i];
            double sigmas = std::abs(ms.mean - exact_h) / std::max(ms.stderr_, 1e-12);
            worst = std::max(worst, sigmas);
        }
        add_check(cr, "exact vs trajectory <H>: max |diff|/se", worst <= 4.0, worst, 4.0);
    }
    {
        // (b) trajectory vs syndrome chain at L=4.
        std::vector<double> times = {0, 1, 2, 4, 8};
        auto [spec, lay] = build_toric(4);
        StabilizerTableau init =
            make_encoder_initial_tableau(spec, lay, psi_preset("00"), true);
        TrajectoryOptions topts;
        topts.record_site_occupations = false;
        topts.record_logicals = false;
        topts.record_code_overlap = false;
        EnsembleStats tstats =
            run_ensemble(spec, init, times.back(), times, 10000, master_seed ^ 0x7002, topts);
        EnsembleStats cstats =
            run_chain_ensemble(lay, encoder_tags(lay, psi_preset("00"), true), times.back(),
                               times, 10000, master_seed ^ 0x7003, {});
        for (const char* name : {"Np", "Nv"}) {
            double worst = 0;
            for (size_t i = 0; i < times.size(); ++i) {
                const MeanStderr& a = tstats.values.at(name)[i];
                const MeanStderr& b = cstats.values.at(name)[i];
                double se = std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
                double sigmas = std::abs(a.mean - b.mean) / std::max(se, 1e-12);
                worst = std::max(worst, sigmas);
            }
            add_check(cr, std::string("trajectory vs chain <") + name + ">: max |diff|/se",
                      worst <= 4.0, worst, 4.0);
        }
    }
    finish(cr, t0, progress);
    return cr;
}

// Criterion 8: linear-in-L convergence of the absorption time.
CriterionResult criterion_scaling(uint64_t master_seed, std::ostream* progress) {
    auto t0 = Clock::now();
    CriterionResult cr = make_criterion(8, "linear scaling of the absorption time (syndrome chain)");
    std::vector<int> ls = {8, 16, 32, 64, 128};
    auto rows = convergence_experiment(ls, 0.01, 200, master_seed ^ 0x8001, psi_preset("00"),
                                       true);
    std::vector<double> xs, means;
    for (const auto& row : rows) {
        add_check(cr, "q99 absorption time, L=" + std::to_string(row.L),
                  row.time_quantile <= row.bound && row.not_absorbed == 0, row.time_quantile,
                  row.bound);
        xs.push_back(row.L);
        means.push_back(row.time_mean.mean);
    }
    LinearFit fit = linear_fit(xs, means);
    add_check(cr, "linear fit R^2", fit.r2 >= 0.99, fit.r2, 0.99,
              "slope=" + std::to_string(fit.slope));
    add_check(cr, "linear fit slope > 0", fit.slope > 0, fit.slope, 0);
    finish(cr, t0, progress);
    return cr;
}

// Criterion 9: the generic-framework regression on the repetition chain.
CriterionResult criterion_repetition(uint64_t master_seed, std::ostream* progress) {
    auto t0 = Clock::now();
    CriterionResult cr = make_criterion(9, "generic-framework regression (repetition fixture)");
    CodeSpec spec = build_repetition(8);
    bool valid = validate_code(spec).ok();
    add_check(cr, "validate_code(rep 8)", valid, valid ? 1 : 0, 1);
    bool fixed = verify_logical_fixedpoint(spec).ok();
    add_check(cr, "verify_logical_fixedpoint(rep 8)", fixed, fixed ? 1 : 0, 1);
    add_check(cr, "m == 1", spec.m == 1, spec.m, 1);

    StabilizerTableau init(spec.n);  // maximally mixed input
    TrajectoryOptions opts;
    opts.record_site_occupations = false;
    opts.record_logicals = false;
    std::vector<double> times = {0, 0.5, 1, 2, 3, 4, 6, 8};
    EnsembleStats stats =
        run_ensemble(spec, init, times.back(), times, 2000, master_seed ^ 0x9001, opts);
    const double ws = weight_sum(spec, 2.0);
    double worst = -1e300;
    for (size_t i = 0; i < times.size(); ++i) {
        const MeanStderr& ov = stats.values.at("code_overlap")[i];
        double qperp = 1.0 - ov.mean;
        double bound = ws * std::exp(-times[i] / 2.0) + 4.0 * ov.stderr_;
        worst = std::max(worst, qperp - bound);
    }
    add_check(cr, "ensemble tr(Qperp) within envelope", worst <= 0, worst, 0,
              "weight_sum=" + std::to_string(ws));
    finish(cr, t0, progress);
    return cr;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(uint64_t master_seed, std::ostream* progress) {
    std::vector<CriterionResult> results;
    results.push_back(criterion_logical_preservation(master_seed, progress));
    results.push_back(criterion_fixedpoint(master_seed, progress));
    results.push_back(criterion_energy_lowering(master_seed, progress));
    ExactRun run = shared_exact_run();
    results.push_back(criterion_envelope(run, progress));
    results.push_back(criterion_end_to_end(run, progress));
    results.push_back(criterion_potential_decay(run, master_seed, progress));
    results.push_back(criterion_cross_engine(run, master_seed, progress));
    results.push_back(criterion_scaling(master_seed, progress));
    results.push_back(criterion_repetition(master_seed, progress));
    std::sort(results.begin(), results.end(),
              [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });
    return results;
}

}  // namespace encoderlab
