// Test-only dense oracle: Pauli operators and tableau states as explicit
// matrices, built from 2x2 kroneckers with no shared code path with the
// library kernels.
#pragma once

#include <Eigen/Dense>
#include <complex>

#include "encoderlab/pauli.hpp"
#include "encoderlab/rng.hpp"
#include "encoderlab/tableau.hpp"

namespace oracle {

using cd = std::complex<double>;

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Qubit q sits at bit q of the basis index, so qubit n-1 is the leftmost
// kronecker factor.
inline Eigen::MatrixXcd matrix(const encoderlab::PauliOp& p) {
    static const cd iphase[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
    Eigen::Matrix2cd x2, z2, i2;
    x2 << 0, 1, 1, 0;
    z2 << 1, 0, 0, -1;
    i2.setIdentity();
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Ones(1, 1);
    for (size_t qi = p.n; qi-- > 0;) {
        Eigen::Matrix2cd m = i2;
        if (p.get_x(qi)) m = x2;
        if (p.get_z(qi)) m = m * z2;  // X to the left of Z
        full = kron(full, m);
    }
    return iphase[p.phase] * full;
}

// rho = 2^{-n} prod_i (I + R_i) over the stabilizer rows.
inline Eigen::MatrixXcd state(const encoderlab::StabilizerTableau& t) {
    const int dim = 1 << t.num_qubits();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim);
    for (size_t i = 0; i < t.num_stabilizers(); ++i) {
        Eigen::MatrixXcd r = matrix(t.stabilizer(i));
        rho = 0.5 * (rho + r * rho);
    }
    rho /= rho.trace();
    return rho;
}

inline encoderlab::PauliOp random_pauli(size_t n, encoderlab::CounterRng& rng,
                                        bool hermitian = false) {
    encoderlab::PauliOp p(n);
    for (size_t q = 0; q < n; ++q) {
        p.set_x(q, rng.next_u64() & 1);
        p.set_z(q, rng.next_u64() & 1);
    }
    p.phase = static_cast<uint8_t>(rng.next_u64() & 3);
    if (hermitian) {
        size_t ys = 0;
        for (size_t q = 0; q < n; ++q) ys += p.get_x(q) && p.get_z(q);
        p.phase = static_cast<uint8_t>((ys & 1) ? ((rng.next_u64() & 1) ? 1 : 3)
                                                : ((rng.next_u64() & 1) ? 0 : 2));
    }
    return p;
}

}  // namespace oracle
