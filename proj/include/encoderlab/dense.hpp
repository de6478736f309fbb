#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "encoderlab/code_spec.hpp"
#include "encoderlab/psi.hpp"
#include "encoderlab/toric.hpp"

namespace encoderlab {

/// Dense 2^n × 2^n state for the exact engine. Qubit q is bit q of the
/// basis index.
struct DensityMatrix {
    static constexpr int kMaxQubits = 12;

    int n = 0;
    Eigen::MatrixXcd mat;

    DensityMatrix() = default;
    DensityMatrix(int n_qubits, Eigen::MatrixXcd m) : n(n_qubits), mat(std::move(m)) {}

    int dim() const { return 1 << n; }

    /// Throws if the matrix is not Hermitian/unit-trace/positive within the
    /// stated slacks.
    void validate(double herm_tol = 1e-12, double trace_tol = 1e-12,
                  double eig_floor = -1e-10) const;
};

/// One factor of a product state; `qubits` lists the qubit positions it
/// occupies, first qubit = most significant bit of the factor index.
struct ProductFactor {
    std::vector<int> qubits;
    Eigen::MatrixXcd mat;  // 2^k × 2^k density matrix
};

DensityMatrix dm_from_product(int n, const std::vector<ProductFactor>& factors);

/// Pure-state analogue used for building target encoded states.
struct VectorFactor {
    std::vector<int> qubits;
    Eigen::VectorXcd amps;
};
Eigen::VectorXcd statevector_from_factors(int n, const std::vector<VectorFactor>& factors);

/// tr(P rho): exploits the one-nonzero-per-column structure of Pauli
/// matrices, O(4^n) not O(8^n).
std::complex<double> pauli_expectation_dense(const PauliOp& p, const Eigen::MatrixXcd& rho);

/// T_j(rho) = P_j^+ rho P_j^+ + C_j P_j^- rho P_j^- C_j^†.
DensityMatrix apply_channel_T(const DensityMatrix& rho, const CodeSpec& spec, int site);

/// Sum over active sites of (T_j(rho) - rho); traceless.
Eigen::MatrixXcd liouvillian_apply(const DensityMatrix& rho, const CodeSpec& spec);

using Observable = std::function<double(const Eigen::MatrixXcd&)>;
using ObservableSet = std::vector<std::pair<std::string, Observable>>;

/// Logical Paulis, per-site occupations, H, Np, Nv, ground_overlap and
/// D(alpha) for alpha in {1.5, 2, 3}.
ObservableSet default_observables(const CodeSpec& spec);

struct EvolveOptions {
    double tol = 1e-9;        // local error tolerance per step
    bool keep_states = false; // retain a DensityMatrix per sample time
};

struct EvolutionResult {
    std::vector<double> times;
    std::vector<DensityMatrix> states;  // empty unless keep_states
    std::map<std::string, std::vector<double>> observables;
};

/// Integrates d rho/dt = L(rho) with an embedded Dormand–Prince 5(4) pair,
/// recording the observables at each sample time. Throws on step-size
/// underflow.
EvolutionResult evolve(const DensityMatrix& rho0, const CodeSpec& spec, double t_max,
                       std::vector<double> sample_times, const ObservableSet& observables,
                       const EvolveOptions& opts = {});

/// tr(Q rho) with Q the joint +1 projector of all generators.
double ground_overlap(const DensityMatrix& rho, const CodeSpec& spec);

/// Normalized projection of the unencoded product state onto the code
/// space; throws if the projection is numerically null.
DensityMatrix encoded_state(const PsiSpec& psi, const CodeSpec& spec, const ToricLayout& lay);

/// ||a - b||_1 = sum of absolute eigenvalues of the Hermitian difference.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// (eps, dist) with eps = tr(Q^⊥ rho) and dist = ||rho - Q rho Q / tr(Q rho)||_1;
/// dist <= 2 sqrt(eps) is asserted (gentle measurement).
std::pair<double, double> code_projection_distance(const DensityMatrix& rho,
                                                   const CodeSpec& spec);

/// rho_0 = |psi><psi| on (A1,A2) ⊗ |+><+| on B,B' ⊗ |0><0| on C,C' ⊗ rho_D,
/// with rho_D maximally mixed or |0..0>.
DensityMatrix make_encoder_initial_dm(const CodeSpec& spec, const ToricLayout& lay,
                                      const PsiSpec& psi, bool rho_d_mixed);

/// <psi|P1⊗P2⊗...|psi> for the unencoded state; factors indexed 0=I..3=Z.
double unencoded_expectation(const PsiSpec& psi, const std::vector<int>& factors);

}  // namespace encoderlab
