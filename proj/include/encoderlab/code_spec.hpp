#pragma once

#include <string>
#include <utility>
#include <vector>

#include "encoderlab/pauli.hpp"

namespace encoderlab {

/// One stabilizer generator with its correction operator and flow data.
struct Site {
    std::string name;
    PauliOp stabilizer;  // Hermitian
    PauliOp correction;  // identity, or anticommutes with stabilizer
    int successor = -1;  // site index the excitation moves to; -1 at sinks
    int f = 0;           // hops-to-sink minus one; -1 at sinks
    bool sink = false;   // no successor
};

/// Stabilizer code plus the measurement-and-correction channel layout.
struct CodeSpec {
    size_t n = 0;
    std::vector<Site> sites;

    // Logical Pauli generators as (X̄_i, Z̄_i) pairs, flattened
    // [X̄_1, Z̄_1, X̄_2, Z̄_2, ...].
    std::vector<PauliOp> logicals;

    // pred[j] = sites whose correction anticommutes with stabilizer j.
    std::vector<std::vector<int>> pred;
    // Max number of foreign stabilizers a single correction can excite.
    int m = 0;

    // Sites whose channels enter the Liouvillian (all of them, or all but
    // the sinks when sink dephasing is switched off).
    std::vector<int> active;

    size_t num_logical_qubits() const { return logicals.size() / 2; }
    const PauliOp& logical_x(size_t i) const { return logicals[2 * i]; }
    const PauliOp& logical_z(size_t i) const { return logicals[2 * i + 1]; }
};

/// f(j) = (successor hops from j to its sink) - 1; sinks get -1.
/// Throws std::invalid_argument if a successor chain never reaches a sink.
std::vector<int> compute_f(const CodeSpec& spec);

/// Brute-force anticommutation scan; returns (pred, m).
std::pair<std::vector<std::vector<int>>, int> compute_pred_and_m(const CodeSpec& spec);

/// Sum of alpha^{f(j)} over every site, sink terms alpha^{-1} included.
double weight_sum(const CodeSpec& spec, double alpha);

struct ValidationIssue {
    std::string check;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string str() const;
};

/// Checks every CodeSpec invariant; failures become report entries.
ValidationReport validate_code(const CodeSpec& spec);

/// Chain of Z_i Z_{i+1} generators with X_{i+1} corrections; excitations
/// drift toward the open end where the last correction removes them.
CodeSpec build_repetition(int n_qubits);

/// All nontrivial products of the logical generators (4^k - 1 of them).
struct LogicalProduct {
    std::string name;            // e.g. "X1", "Y1Z2"
    PauliOp op;                  // encoded operator
    std::vector<int> factors;    // per logical qubit: 0=I, 1=X, 2=Y, 3=Z
};
std::vector<LogicalProduct> logical_products(const CodeSpec& spec);

std::string code_to_json(const CodeSpec& spec);
CodeSpec code_from_json(const std::string& text);

}  // namespace encoderlab
