#pragma once

#include <vector>

#include "encoderlab/code_spec.hpp"
#include "encoderlab/psi.hpp"
#include "encoderlab/rng.hpp"
#include "encoderlab/stats.hpp"
#include "encoderlab/tableau.hpp"
#include "encoderlab/toric.hpp"

namespace encoderlab {

/// One unraveled trajectory: Poisson-clocked site firings on a tableau.
struct Trajectory {
    StabilizerTableau tableau;
    double clock = 0;  // rate-1-per-site time units
    CounterRng rng;
    uint64_t event_count = 0;
};

struct TrajectoryOptions {
    std::vector<double> alphas = {2.0};
    bool record_site_occupations = true;
    bool record_logicals = true;
    bool record_code_overlap = true;
    // Re-derive every definite logical value after each event and throw on
    // any change. Expensive; meant for tests.
    bool check_logical_conservation = false;
};

/// Measure the site's stabilizer; on outcome -1 apply its correction.
void fire_site(Trajectory& traj, const CodeSpec& spec, int site);

/// tr(Q rho) for the tableau state, computed exactly by forced measurement
/// of every generator on a scratch copy.
double code_overlap(const StabilizerTableau& t, const CodeSpec& spec);

TimeSeries run_trajectory(const CodeSpec& spec, const StabilizerTableau& init, double t_max,
                          const std::vector<double>& sample_times, CounterRng rng,
                          const TrajectoryOptions& opts = {});

/// Independent trajectories on streams (master_seed, 0..ntraj-1), reduced
/// in index order; bit-identical for a fixed seed regardless of scheduling.
EnsembleStats run_ensemble(const CodeSpec& spec, const StabilizerTableau& init, double t_max,
                           const std::vector<double>& sample_times, uint64_t ntraj,
                           uint64_t master_seed, const TrajectoryOptions& opts = {});

/// Tableau for |psi> on (A1,A2), |+> on B,B', |0> on C,C', and D either
/// maximally mixed or |0..0>. psi must be a stabilizer preset
/// (00, 0+, ++, bell).
StabilizerTableau make_encoder_initial_tableau(const CodeSpec& spec, const ToricLayout& lay,
                                               const PsiSpec& psi, bool rho_d_mixed);

}  // namespace encoderlab
