#include "encoderlab/tableau.hpp"

#include <cassert>
#include <stdexcept>

namespace encoderlab {

namespace {

// Frame checks are quadratic in n; keep debug trajectories usable above
// a few hundred qubits by skipping the automatic per-operation check there.
constexpr size_t kAutoCheckLimit = 256;

void require_hermitian(const PauliOp& p) {
    if (!p.is_hermitian()) throw std::invalid_argument("measured Pauli must be Hermitian");
}

}  // namespace

StabilizerTableau::StabilizerTableau(size_t n_qubits) : n_(n_qubits), s_(0) {
    rows_.reserve(n_);
    destab_.reserve(n_);
    for (size_t q = 0; q < n_; ++q) {
        rows_.push_back(pauli_single(n_, q, 'Z'));
        destab_.push_back(pauli_single(n_, q, 'X'));
    }
}

void StabilizerTableau::swap_positions(size_t a, size_t b) {
    if (a == b) return;
    std::swap(rows_[a], rows_[b]);
    std::swap(destab_[a], destab_[b]);
}

MeasureResult StabilizerTableau::measure(const PauliOp& p, CounterRng& rng) {
    return measure_impl(p, &rng, 0);
}

MeasureResult StabilizerTableau::measure_forced(const PauliOp& p, int forced_sign) {
    return measure_impl(p, nullptr, forced_sign);
}

MeasureResult StabilizerTableau::measure_impl(const PauliOp& p, CounterRng* rng,
                                              int forced_sign) {
    require_hermitian(p);
    if (p.n != n_) throw std::invalid_argument("measured Pauli size mismatch");

    auto sample = [&]() { return rng ? rng->coin_sign() : forced_sign; };
    const std::vector<uint32_t> pw = support_words(p);

    // A stabilizer row anticommuting with p wins over a gauge row: only a
    // signed stabilizer may be multiplied into other signed rows.
    size_t pivot_idx = n_;
    for (size_t i = 0; i < n_ && pivot_idx == n_; ++i)
        if (!commutes_sparse(rows_[i], p, pw)) pivot_idx = i;

    if (pivot_idx < n_) {
        const PauliOp pivot = rows_[pivot_idx];
        for (size_t i = 0; i < n_; ++i) {
            if (i != pivot_idx && !commutes_sparse(rows_[i], p, pw))
                mul_left_inplace(rows_[i], pivot);
            if (i != pivot_idx && !commutes_sparse(destab_[i], p, pw))
                mul_left_inplace(destab_[i], pivot);
        }
        int outcome = sample();
        rows_[pivot_idx] = (outcome > 0) ? p : p.negated();
        destab_[pivot_idx] = pivot;
        if (pivot_idx >= s_) {
            // Promoted a gauge position: the observable was indefinite and
            // is definite now.
            swap_positions(pivot_idx, s_);
            ++s_;
        }
#ifndef NDEBUG
        if (n_ <= kAutoCheckLimit) check_invariants();
#endif
        return {outcome, false};
    }

    // p commutes with the whole frame, so it is ± a product of rows; the
    // factors are exactly the positions whose destabilizer anticommutes.
    std::vector<size_t> factors;
    size_t gauge_factor = n_;
    for (size_t i = 0; i < n_; ++i) {
        if (!commutes_sparse(destab_[i], p, pw)) {
            factors.push_back(i);
            if (i >= s_ && gauge_factor == n_) gauge_factor = i;
        }
    }

    if (gauge_factor == n_) {
        // Product of signed stabilizer rows: deterministic outcome.
        PauliOp prod = pauli_identity(n_);
        for (size_t i : factors) mul_left_inplace(prod, rows_[i]);
        int sign = 0;
        bool ok = equal_up_to_sign(prod, p, &sign);
        assert(ok);
        (void)ok;
        return {sign, true};
    }

    // Indefinite but commuting: replace one participating gauge row by ±p.
    int outcome = sample();
    for (size_t i : factors) {
        if (i != gauge_factor) mul_left_inplace(destab_[i], destab_[gauge_factor]);
    }
    rows_[gauge_factor] = (outcome > 0) ? p : p.negated();
    swap_positions(gauge_factor, s_);
    ++s_;
#ifndef NDEBUG
    if (n_ <= kAutoCheckLimit) check_invariants();
#endif
    return {outcome, false};
}

void StabilizerTableau::apply_pauli(const PauliOp& c) {
    if (c.n != n_) throw std::invalid_argument("applied Pauli size mismatch");
    const std::vector<uint32_t> cw = support_words(c);
    for (size_t i = 0; i < n_; ++i) {
        if (!commutes_sparse(rows_[i], c, cw)) rows_[i].negate();
        if (!commutes_sparse(destab_[i], c, cw)) destab_[i].negate();
    }
}

int StabilizerTableau::expectation(const PauliOp& p) const {
    require_hermitian(p);
    if (p.n != n_) throw std::invalid_argument("Pauli size mismatch");
    const std::vector<uint32_t> pw = support_words(p);
    for (size_t i = 0; i < n_; ++i)
        if (!commutes_sparse(rows_[i], p, pw)) return 0;
    std::vector<size_t> factors;
    for (size_t i = 0; i < n_; ++i) {
        if (!commutes_sparse(destab_[i], p, pw)) {
            if (i >= s_) return 0;  // involves a sign-free gauge row
            factors.push_back(i);
        }
    }
    PauliOp prod = pauli_identity(n_);
    for (size_t i : factors) mul_left_inplace(prod, rows_[i]);
    int sign = 0;
    bool ok = equal_up_to_sign(prod, p, &sign);
    assert(ok);
    (void)ok;
    return sign;
}

void StabilizerTableau::check_invariants() const {
    auto fail = [](const char* what) { throw std::logic_error(what); };
    if (rows_.size() != n_ || destab_.size() != n_ || s_ > n_) fail("tableau shape");
    for (size_t i = 0; i < n_; ++i) {
        if (rows_[i].is_identity_mask()) fail("identity row");
        if (!rows_[i].is_hermitian()) fail("non-Hermitian row");
        for (size_t j = i + 1; j < n_; ++j) {
            if (!commutes(rows_[i], rows_[j])) fail("rows must commute pairwise");
            if (!commutes(destab_[i], destab_[j])) fail("destabilizers must commute pairwise");
        }
        for (size_t j = 0; j < n_; ++j) {
            bool anti = !commutes(destab_[i], rows_[j]);
            if (anti != (i == j)) fail("destabilizer pairing broken");
        }
    }
}

StabilizerTableau tableau_from_product(const std::vector<QubitTag>& tags) {
    const size_t n = tags.size();
    StabilizerTableau t(n);
    // The fresh tableau has gauge row Z_q / destabilizer X_q on every qubit;
    // forcing the tagged single-qubit operators to +1/−1 turns exactly the
    // non-Mixed positions into stabilizer rows.
    for (size_t q = 0; q < n; ++q) {
        char kind = 'Z';
        int sign = +1;
        switch (tags[q]) {
            case QubitTag::ZPlus: kind = 'Z'; sign = +1; break;
            case QubitTag::ZMinus: kind = 'Z'; sign = -1; break;
            case QubitTag::XPlus: kind = 'X'; sign = +1; break;
            case QubitTag::XMinus: kind = 'X'; sign = -1; break;
            case QubitTag::YPlus: kind = 'Y'; sign = +1; break;
            case QubitTag::YMinus: kind = 'Y'; sign = -1; break;
            case QubitTag::Mixed: continue;
        }
        t.measure_forced(pauli_single(n, q, kind), sign);
    }
    return t;
}

}  // namespace encoderlab
