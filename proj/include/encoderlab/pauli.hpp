#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace encoderlab {

/// n-qubit Pauli operator in binary-symplectic form.
///
/// The operator equals i^phase * prod_q X_q^{x_q} Z_q^{z_q}, with the X
/// factor to the left of the Z factor on every qubit. Bit q of word q/64
/// of the x/z vectors carries qubit q. Under this convention Y = i*X*Z is
/// stored as (x=1, z=1, phase=1).
struct PauliOp {
    size_t n = 0;
    uint8_t phase = 0;  // exponent of i, mod 4
    std::vector<uint64_t> x;
    std::vector<uint64_t> z;

    PauliOp() = default;
    explicit PauliOp(size_t n_qubits)
        : n(n_qubits), x((n_qubits + 63) / 64, 0), z((n_qubits + 63) / 64, 0) {}

    size_t num_words() const { return x.size(); }

    bool get_x(size_t q) const { return (x[q >> 6] >> (q & 63)) & 1; }
    bool get_z(size_t q) const { return (z[q >> 6] >> (q & 63)) & 1; }
    void set_x(size_t q, bool v) {
        uint64_t m = uint64_t{1} << (q & 63);
        x[q >> 6] = v ? (x[q >> 6] | m) : (x[q >> 6] & ~m);
    }
    void set_z(size_t q, bool v) {
        uint64_t m = uint64_t{1} << (q & 63);
        z[q >> 6] = v ? (z[q >> 6] | m) : (z[q >> 6] & ~m);
    }

    /// Number of qubits with a non-identity factor.
    size_t weight() const;

    bool is_identity_mask() const;

    /// True iff the operator squares to +I, i.e. phase + #Y is even.
    bool is_hermitian() const;

    void negate() { phase = (phase + 2) & 3; }
    PauliOp negated() const {
        PauliOp r = *this;
        r.negate();
        return r;
    }

    /// Rendering like "+XZ_Y" or "-iX_Z" (scalar prefix in {+, +i, -, -i}).
    std::string str() const;

    bool operator==(const PauliOp& o) const = default;
};

PauliOp pauli_identity(size_t n);

/// Single-qubit Pauli embedded in n qubits; kind in {'X','Y','Z'}, sign ±1.
PauliOp pauli_single(size_t n, size_t q, char kind, int sign = +1);

/// Operator composition a∘b with exact phase tracking.
PauliOp pauli_mul(const PauliOp& a, const PauliOp& b);

/// target <- left ∘ target, without reallocating.
void mul_left_inplace(PauliOp& target, const PauliOp& left);

/// True iff the symplectic form <a.x,b.z> + <a.z,b.x> is even.
bool commutes(const PauliOp& a, const PauliOp& b);

/// Word indices where p has support; lets commutation scans against a
/// low-weight operator touch O(weight) words per row instead of O(n/64).
std::vector<uint32_t> support_words(const PauliOp& p);
bool commutes_sparse(const PauliOp& row, const PauliOp& p,
                     const std::vector<uint32_t>& p_words);

/// True iff a == ±b as operators; sign_out receives the relative sign.
bool equal_up_to_sign(const PauliOp& a, const PauliOp& b, int* sign_out = nullptr);

}  // namespace encoderlab
