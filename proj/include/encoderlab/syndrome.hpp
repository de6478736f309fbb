#pragma once

#include <limits>
#include <vector>

#include "encoderlab/psi.hpp"
#include "encoderlab/rng.hpp"
#include "encoderlab/stats.hpp"
#include "encoderlab/tableau.hpp"
#include "encoderlab/toric.hpp"

namespace encoderlab {

/// Binary occupancy of the plaquette and vertex excitation grids.
struct SyndromeConfig {
    int L = 0;
    std::vector<uint8_t> plaq;  // L*L, row-major, 1 = excited
    std::vector<uint8_t> vert;

    int total() const;
};

/// Encoder initialization tags per edge qubit; psi must be a product
/// preset (00, 0+, ++).
std::vector<QubitTag> encoder_tags(const ToricLayout& lay, const PsiSpec& psi,
                                   bool rho_d_mixed);

/// Z-basis values are sampled per qubit from the tag marginal and plaquette
/// occupancies read off the products; X-basis values likewise for the
/// vertices. Parity (even excitation count per sector) holds by
/// construction.
SyndromeConfig sample_initial_syndrome(const ToricLayout& lay,
                                       const std::vector<QubitTag>& tags, CounterRng& rng);

struct ChainOptions {
    std::vector<double> alphas = {2.0};
    bool record_sites = false;  // per-site occ_ columns (small L only)
};

/// Observables of one chain run plus its absorption time.
struct ChainResult {
    TimeSeries series;  // Np, Nv, H, D_a*, empty, optional occ_*
    bool absorbed = false;
    double absorption_time = std::numeric_limits<double>::infinity();
};

/// Drift-and-annihilate dynamics: every occupied non-sink site fires at
/// rate 1 and pushes its excitation to the successor, annihilating on
/// collision. Unoccupied and sink firings are no-ops in the full process,
/// so skipping their clocks leaves the law of the state path unchanged.
ChainResult simulate_chain(SyndromeConfig config, const ToricLayout& lay, double t_max,
                           const std::vector<double>& sample_times, CounterRng rng,
                           const ChainOptions& opts = {});

/// Fresh initial sample + chain per stream; reduced in index order.
EnsembleStats run_chain_ensemble(const ToricLayout& lay, const std::vector<QubitTag>& tags,
                                 double t_max, const std::vector<double>& sample_times,
                                 uint64_t ntraj, uint64_t master_seed,
                                 const ChainOptions& opts = {});

struct ConvergenceRow {
    int L = 0;
    MeanStderr time_mean;
    double time_median = 0;
    double time_quantile = 0;  // (1 - epsilon) quantile
    double bound = 0;          // 4 ln2 · L + 2 ln(1/epsilon)
    uint64_t exceed_count = 0;
    std::vector<uint64_t> exceed_streams;  // stream indices past the bound
    uint64_t not_absorbed = 0;
};

/// Absorption-time statistics across lattice sizes.
std::vector<ConvergenceRow> convergence_experiment(const std::vector<int>& l_values,
                                                   double epsilon, uint64_t ntraj,
                                                   uint64_t master_seed, const PsiSpec& psi,
                                                   bool rho_d_mixed);

}  // namespace encoderlab
