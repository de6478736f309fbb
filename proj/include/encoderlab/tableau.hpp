#pragma once

#include <vector>

#include "encoderlab/pauli.hpp"
#include "encoderlab/rng.hpp"

namespace encoderlab {

enum class QubitTag { ZPlus, ZMinus, XPlus, XMinus, YPlus, YMinus, Mixed };

struct MeasureResult {
    int outcome = 0;  // ±1
    bool deterministic = false;
};

/// Stabilizer/destabilizer tableau for pure and mixed stabilizer states.
///
/// The state is rho = 2^{-n} * prod_{i<s} (I + R_i) where R_0..R_{s-1} are
/// the stabilizer rows; with s < n the state is maximally mixed over the
/// unconstrained degrees of freedom. Internally the rows are completed to a
/// full symplectic frame: positions [s, n) hold sign-free "gauge" rows that
/// commute with everything, and destabilizer i anticommutes with row i only.
/// Measuring an operator outside the stabilizer group promotes a gauge
/// position, so s grows by one without any global re-elimination.
class StabilizerTableau {
  public:
    explicit StabilizerTableau(size_t n_qubits);  // s = 0, maximally mixed

    size_t num_qubits() const { return n_; }
    size_t num_stabilizers() const { return s_; }

    const PauliOp& stabilizer(size_t i) const { return rows_[i]; }
    const PauliOp& destabilizer(size_t i) const { return destab_[i]; }

    /// Measure a Hermitian Pauli, sampling indefinite outcomes from rng.
    MeasureResult measure(const PauliOp& p, CounterRng& rng);

    /// Measurement with a forced outcome for indefinite observables
    /// (state preparation by postselection). Deterministic outcomes are
    /// returned as-is, even when they contradict forced_sign.
    MeasureResult measure_forced(const PauliOp& p, int forced_sign);

    /// Conjugate the state by a Pauli: flips the sign of every
    /// anticommuting row.
    void apply_pauli(const PauliOp& c);

    /// Expectation of a Hermitian Pauli: ±1 if ±p is a product of
    /// stabilizer rows, 0 otherwise.
    int expectation(const PauliOp& p) const;

    /// Throws std::logic_error if the frame invariants are violated.
    void check_invariants() const;

  private:
    MeasureResult measure_impl(const PauliOp& p, CounterRng* rng, int forced_sign);
    void swap_positions(size_t a, size_t b);

    size_t n_ = 0;
    size_t s_ = 0;
    std::vector<PauliOp> rows_;    // [0,s) stabilizers, [s,n) gauge rows
    std::vector<PauliOp> destab_;  // destab_[i] pairs with rows_[i]
};

/// Tableau for a product state, one stabilizer row per non-Mixed qubit.
StabilizerTableau tableau_from_product(const std::vector<QubitTag>& tags);

}  // namespace encoderlab
