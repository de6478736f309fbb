#include "encoderlab/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace encoderlab {

namespace {

size_t popcount_and(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    size_t c = 0;
    for (size_t w = 0; w < a.size(); ++w) c += std::popcount(a[w] & b[w]);
    return c;
}

void require_same_size(const PauliOp& a, const PauliOp& b) {
    if (a.n != b.n) throw std::invalid_argument("PauliOp size mismatch");
}

}  // namespace

size_t PauliOp::weight() const {
    size_t c = 0;
    for (size_t w = 0; w < x.size(); ++w) c += std::popcount(x[w] | z[w]);
    return c;
}

bool PauliOp::is_identity_mask() const {
    for (size_t w = 0; w < x.size(); ++w)
        if (x[w] | z[w]) return false;
    return true;
}

bool PauliOp::is_hermitian() const {
    return ((phase + popcount_and(x, z)) & 1) == 0;
}

std::string PauliOp::str() const {
    static const char* prefix[4] = {"+", "+i", "-", "-i"};
    size_t ys = popcount_and(x, z);
    int k = static_cast<int>((phase + 4 - (ys & 3)) & 3);
    std::string s = prefix[k];
    for (size_t q = 0; q < n; ++q) {
        bool xb = get_x(q), zb = get_z(q);
        s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : '_');
    }
    return s;
}

PauliOp pauli_identity(size_t n) { return PauliOp(n); }

PauliOp pauli_single(size_t n, size_t q, char kind, int sign) {
    if (q >= n) throw std::invalid_argument("qubit index out of range");
    PauliOp p(n);
    switch (kind) {
        case 'X': p.set_x(q, true); break;
        case 'Z': p.set_z(q, true); break;
        case 'Y':
            p.set_x(q, true);
            p.set_z(q, true);
            p.phase = 1;  // Y = i*X*Z
            break;
        default: throw std::invalid_argument("pauli kind must be X, Y or Z");
    }
    if (sign < 0) p.negate();
    return p;
}

PauliOp pauli_mul(const PauliOp& a, const PauliOp& b) {
    require_same_size(a, b);
    PauliOp r(a.n);
    // Commuting b's X factors left through a's Z factors picks up (-1) each.
    r.phase = static_cast<uint8_t>((a.phase + b.phase + 2 * popcount_and(a.z, b.x)) & 3);
    for (size_t w = 0; w < r.x.size(); ++w) {
        r.x[w] = a.x[w] ^ b.x[w];
        r.z[w] = a.z[w] ^ b.z[w];
    }
    return r;
}

void mul_left_inplace(PauliOp& target, const PauliOp& left) {
    require_same_size(target, left);
    // left ∘ target: commuting X of target through Z of left gives the sign.
    target.phase = static_cast<uint8_t>(
        (left.phase + target.phase + 2 * popcount_and(left.z, target.x)) & 3);
    for (size_t w = 0; w < target.x.size(); ++w) {
        target.x[w] ^= left.x[w];
        target.z[w] ^= left.z[w];
    }
}

bool commutes(const PauliOp& a, const PauliOp& b) {
    require_same_size(a, b);
    return ((popcount_and(a.x, b.z) + popcount_and(a.z, b.x)) & 1) == 0;
}

std::vector<uint32_t> support_words(const PauliOp& p) {
    std::vector<uint32_t> w;
    for (size_t i = 0; i < p.x.size(); ++i)
        if (p.x[i] | p.z[i]) w.push_back(static_cast<uint32_t>(i));
    return w;
}

bool commutes_sparse(const PauliOp& row, const PauliOp& p,
                     const std::vector<uint32_t>& p_words) {
    size_t c = 0;
    for (uint32_t w : p_words)
        c += std::popcount(row.x[w] & p.z[w]) + std::popcount(row.z[w] & p.x[w]);
    return (c & 1) == 0;
}

bool equal_up_to_sign(const PauliOp& a, const PauliOp& b, int* sign_out) {
    require_same_size(a, b);
    if (a.x != b.x || a.z != b.z) return false;
    int d = (a.phase - b.phase + 4) & 3;
    if (d == 1 || d == 3) return false;  // differ by ±i, not a sign
    if (sign_out) *sign_out = (d == 0) ? +1 : -1;
    return true;
}

}  // namespace encoderlab
