#include "encoderlab/dense.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "encoderlab/stats.hpp"

namespace encoderlab {

namespace {

using cd = std::complex<double>;

constexpr cd kPhase[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};

void require_dense_size(const PauliOp& p) {
    if (p.n > DensityMatrix::kMaxQubits)
        throw std::invalid_argument("dense engine supports at most 12 qubits");
}

struct DensePauli {
    uint32_t x = 0;
    uint32_t z = 0;
    int phase = 0;
    bool identity = false;

    explicit DensePauli(const PauliOp& p) {
        require_dense_size(p);
        x = p.x.empty() ? 0u : static_cast<uint32_t>(p.x[0]);
        z = p.z.empty() ? 0u : static_cast<uint32_t>(p.z[0]);
        phase = p.phase;
        identity = (x == 0 && z == 0 && phase == 0);
    }

    // Coefficient of the single nonzero entry in row i: P[i, i^x].
    cd left_coef(uint32_t i) const {
        cd c = kPhase[phase];
        return (std::popcount(z & (i ^ x)) & 1) ? -c : c;
    }
    // Coefficient of the single nonzero entry in column j: P[j^x, j].
    cd right_coef(uint32_t j) const {
        cd c = kPhase[phase];
        return (std::popcount(z & j) & 1) ? -c : c;
    }
};

// Per-site data for the channel kernels, with coefficient tables so the
// inner loops are pure loads, xors and multiplies.
struct SiteKernel {
    uint32_t xs = 0;
    std::vector<cd> sl;  // left coefficients of S
    std::vector<cd> sr;  // right coefficients of S
    bool c_identity = true;
    uint32_t xc = 0;
    std::vector<cd> cl;  // left coefficients of C

    SiteKernel(const Site& site, int dim) {
        DensePauli s(site.stabilizer);
        xs = s.x;
        sl.resize(static_cast<size_t>(dim));
        sr.resize(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            sl[static_cast<size_t>(i)] = s.left_coef(static_cast<uint32_t>(i));
            sr[static_cast<size_t>(i)] = s.right_coef(static_cast<uint32_t>(i));
        }
        if (!site.correction.is_identity_mask()) {
            DensePauli c(site.correction);
            c_identity = false;
            xc = c.x;
            cl.resize(static_cast<size_t>(dim));
            for (int i = 0; i < dim; ++i)
                cl[static_cast<size_t>(i)] = c.left_coef(static_cast<uint32_t>(i));
        }
    }

    // out += T_site(rho) - rho.
    void accumulate(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const {
        const int dim = static_cast<int>(rho.rows());
        const uint32_t X = xs;
        for (int j = 0; j < dim; ++j) {
            const uint32_t ju = static_cast<uint32_t>(j);
            const cd bj = sr[static_cast<size_t>(j)];
            const int jx = static_cast<int>(ju ^ X);
            for (int i = 0; i < dim; ++i) {
                const uint32_t iu = static_cast<uint32_t>(i);
                const cd ai = sl[static_cast<size_t>(i)];
                const int ix = static_cast<int>(iu ^ X);
                const cd a = rho(i, j);
                const cd u = ai * rho(ix, j);
                const cd w = bj * rho(i, jx);
                const cd v = ai * bj * rho(ix, jx);
                const cd plus = 0.25 * (a + u + w + v);
                cd corrected;
                if (c_identity) {
                    corrected = 0.25 * (a - u - w + v);
                } else {
                    const uint32_t ii = iu ^ xc;
                    const uint32_t jj = ju ^ xc;
                    const int iix = static_cast<int>(ii ^ X);
                    const int jjx = static_cast<int>(jj ^ X);
                    const cd aii = sl[ii];
                    const cd bjj = sr[jj];
                    const cd ma = rho(static_cast<int>(ii), static_cast<int>(jj));
                    const cd mu = aii * rho(iix, static_cast<int>(jj));
                    const cd mw = bjj * rho(static_cast<int>(ii), jjx);
                    const cd mv = aii * bjj * rho(iix, jjx);
                    corrected = cl[iu] * std::conj(cl[ju]) * 0.25 * (ma - mu - mw + mv);
                }
                out(i, j) += plus + corrected - a;
            }
        }
    }
};

struct LiouvillianKernel {
    std::vector<SiteKernel> sites;

    LiouvillianKernel(const CodeSpec& spec, int dim) {
        sites.reserve(spec.active.size());
        for (int j : spec.active) sites.emplace_back(spec.sites[static_cast<size_t>(j)], dim);
    }

    void apply(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const {
        out.setZero();
        for (const SiteKernel& k : sites) k.accumulate(rho, out);
    }
};

int qubit_count_check(const CodeSpec& spec) {
    if (spec.n > DensityMatrix::kMaxQubits)
        throw std::invalid_argument("dense engine supports at most 12 qubits");
    return 1 << spec.n;
}

}  // namespace

void DensityMatrix::validate(double herm_tol, double trace_tol, double eig_floor) const {
    if (mat.rows() != dim() || mat.cols() != dim())
        throw std::invalid_argument("density matrix has wrong dimension");
    double herm = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
    if (herm > herm_tol) throw std::invalid_argument("density matrix not Hermitian");
    if (std::abs(mat.trace().real() - 1.0) > trace_tol || std::abs(mat.trace().imag()) > trace_tol)
        throw std::invalid_argument("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < eig_floor)
        throw std::invalid_argument("density matrix has a negative eigenvalue");
}

DensityMatrix dm_from_product(int n, const std::vector<ProductFactor>& factors) {
    if (n > DensityMatrix::kMaxQubits) throw std::invalid_argument("dimension overflow: n > 12");
    std::vector<int> owner(static_cast<size_t>(n), -1);
    for (size_t fi = 0; fi < factors.size(); ++fi) {
        const auto& f = factors[fi];
        const int k = static_cast<int>(f.qubits.size());
        if (f.mat.rows() != (1 << k) || f.mat.cols() != (1 << k))
            throw std::invalid_argument("factor dimension mismatch");
        double herm = (f.mat - f.mat.adjoint()).cwiseAbs().maxCoeff();
        if (herm > 1e-10 || std::abs(f.mat.trace().real() - 1.0) > 1e-10)
            throw std::invalid_argument("factor is not a density matrix");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(f.mat, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-10)
            throw std::invalid_argument("factor is not positive semidefinite");
        for (int q : f.qubits) {
            if (q < 0 || q >= n || owner[static_cast<size_t>(q)] >= 0)
                throw std::invalid_argument("factors must cover each qubit exactly once");
            owner[static_cast<size_t>(q)] = static_cast<int>(fi);
        }
    }
    for (int q = 0; q < n; ++q)
        if (owner[static_cast<size_t>(q)] < 0)
            throw std::invalid_argument("factors must cover each qubit exactly once");

    const int dim = 1 << n;
    Eigen::MatrixXcd rho(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) {
            cd val(1, 0);
            for (const auto& f : factors) {
                int si = 0, sj = 0;
                for (int q : f.qubits) {
                    si = (si << 1) | ((i >> q) & 1);
                    sj = (sj << 1) | ((j >> q) & 1);
                }
                val *= f.mat(si, sj);
                if (val == cd(0, 0)) break;
            }
            rho(i, j) = val;
        }
    }
    return DensityMatrix(n, std::move(rho));
}

Eigen::VectorXcd statevector_from_factors(int n, const std::vector<VectorFactor>& factors) {
    const int dim = 1 << n;
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) {
        cd val(1, 0);
        for (const auto& f : factors) {
            int si = 0;
            for (int q : f.qubits) si = (si << 1) | ((i >> q) & 1);
            val *= f.amps(si);
            if (val == cd(0, 0)) break;
        }
        v(i) = val;
    }
    return v;
}

std::complex<double> pauli_expectation_dense(const PauliOp& p, const Eigen::MatrixXcd& rho) {
    DensePauli dp(p);
    const int dim = static_cast<int>(rho.rows());
    cd sum(0, 0);
    for (int b = 0; b < dim; ++b) {
        const uint32_t bu = static_cast<uint32_t>(b);
        sum += dp.left_coef(bu) * rho(static_cast<int>(bu ^ dp.x), b);
    }
    return sum;
}

DensityMatrix apply_channel_T(const DensityMatrix& rho, const CodeSpec& spec, int site) {
    const int dim = qubit_count_check(spec);
    if (rho.mat.rows() != dim) throw std::invalid_argument("dimension mismatch");
    if (site < 0 || static_cast<size_t>(site) >= spec.sites.size())
        throw std::invalid_argument("bad site index");
    SiteKernel kern(spec.sites[static_cast<size_t>(site)], dim);
    Eigen::MatrixXcd out = rho.mat;
    kern.accumulate(rho.mat, out);
    return DensityMatrix(rho.n, std::move(out));
}

Eigen::MatrixXcd liouvillian_apply(const DensityMatrix& rho, const CodeSpec& spec) {
    const int dim = qubit_count_check(spec);
    if (rho.mat.rows() != dim) throw std::invalid_argument("dimension mismatch");
    LiouvillianKernel kern(spec, dim);
    Eigen::MatrixXcd out(dim, dim);
    kern.apply(rho.mat, out);
    return out;
}

ObservableSet default_observables(const CodeSpec& spec) {
    ObservableSet obs;

    for (const LogicalProduct& lp : logical_products(spec)) {
        PauliOp op = lp.op;
        obs.emplace_back(lp.name, [op](const Eigen::MatrixXcd& rho) {
            return pauli_expectation_dense(op, rho).real();
        });
    }

    std::vector<PauliOp> stabs;
    std::vector<int> fvals;
    std::vector<bool> sinks;
    std::vector<char> kind;
    for (const Site& s : spec.sites) {
        stabs.push_back(s.stabilizer);
        fvals.push_back(s.f);
        sinks.push_back(s.sink);
        kind.push_back(s.name.empty() ? '?' : s.name[0]);
    }

    auto occ_of = [](const PauliOp& s, const Eigen::MatrixXcd& rho) {
        return 0.5 * (1.0 - pauli_expectation_dense(s, rho).real());
    };

    for (size_t j = 0; j < stabs.size(); ++j) {
        PauliOp s = stabs[j];
        obs.emplace_back("occ_" + spec.sites[j].name,
                         [s, occ_of](const Eigen::MatrixXcd& rho) { return occ_of(s, rho); });
    }

    obs.emplace_back("H", [stabs, occ_of](const Eigen::MatrixXcd& rho) {
        double h = 0;
        for (const auto& s : stabs) h += occ_of(s, rho);
        return h;
    });
    bool has_pv = false;
    for (char k : kind) has_pv |= (k == 'p' || k == 'v');
    if (has_pv) {
        for (char want : {'p', 'v'}) {
            std::string name = want == 'p' ? "Np" : "Nv";
            obs.emplace_back(name, [stabs, kind, occ_of, want](const Eigen::MatrixXcd& rho) {
                double c = 0;
                for (size_t j = 0; j < stabs.size(); ++j)
                    if (kind[j] == want) c += occ_of(stabs[j], rho);
                return c;
            });
        }
    }

    for (double alpha : {1.5, 2.0, 3.0}) {
        obs.emplace_back(alpha_label(alpha),
                         [stabs, fvals, sinks, occ_of, alpha](const Eigen::MatrixXcd& rho) {
            double d = 0;
            for (size_t j = 0; j < stabs.size(); ++j)
                if (!sinks[j]) d += std::pow(alpha, fvals[j]) * occ_of(stabs[j], rho);
            return d;
        });
    }

    {
        std::vector<PauliOp> all = stabs;
        obs.emplace_back("ground_overlap", [all](const Eigen::MatrixXcd& rho) {
            Eigen::MatrixXcd a = rho;
            Eigen::MatrixXcd tmp(rho.rows(), rho.cols());
            for (const PauliOp& s : all) {
                DensePauli dp(s);
                const int dim = static_cast<int>(a.rows());
                for (int j = 0; j < dim; ++j)
                    for (int i = 0; i < dim; ++i)
                        tmp(i, j) = 0.5 * (a(i, j) + dp.left_coef(static_cast<uint32_t>(i)) *
                                                         a(static_cast<int>(
                                                               static_cast<uint32_t>(i) ^ dp.x),
                                                           j));
                a.swap(tmp);
            }
            return a.trace().real();
        });
    }

    return obs;
}

EvolutionResult evolve(const DensityMatrix& rho0, const CodeSpec& spec, double t_max,
                       std::vector<double> sample_times, const ObservableSet& observables,
                       const EvolveOptions& opts) {
    const int dim = qubit_count_check(spec);
    if (rho0.mat.rows() != dim) throw std::invalid_argument("dimension mismatch");
    for (size_t i = 0; i < sample_times.size(); ++i) {
        if (sample_times[i] < 0 || sample_times[i] > t_max + 1e-12)
            throw std::invalid_argument("sample times must lie in [0, t_max]");
        if (i > 0 && sample_times[i] < sample_times[i - 1])
            throw std::invalid_argument("sample times must be sorted");
    }

    LiouvillianKernel kern(spec, dim);

    // Dormand–Prince 5(4) coefficients.
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    Eigen::MatrixXcd y = rho0.mat;
    Eigen::MatrixXcd k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), k5(dim, dim),
        k6(dim, dim), k7(dim, dim), ytmp(dim, dim), ynew(dim, dim), err(dim, dim);

    double t = 0;
    double h = 0.05;
    bool have_k1 = false;

    EvolutionResult result;
    for (const auto& [name, fn] : observables) result.observables[name] = {};

    auto record = [&](double ts) {
        result.times.push_back(ts);
        for (const auto& [name, fn] : observables) result.observables[name].push_back(fn(y));
        if (opts.keep_states) {
            Eigen::MatrixXcd sym = 0.5 * (y + y.adjoint());
            result.states.emplace_back(rho0.n, std::move(sym));
        }
    };

    auto advance_to = [&](double t_end) {
        while (t < t_end - 1e-14) {
            double hs = std::min(h, t_end - t);
            if (!have_k1) {
                kern.apply(y, k1);
                have_k1 = true;
            }
            ytmp = y + hs * a21 * k1;
            kern.apply(ytmp, k2);
            ytmp = y + hs * (a31 * k1 + a32 * k2);
            kern.apply(ytmp, k3);
            ytmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
            kern.apply(ytmp, k4);
            ytmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
            kern.apply(ytmp, k5);
            ytmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
            kern.apply(ytmp, k6);
            ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            kern.apply(ynew, k7);
            err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            double scale = opts.tol * (1.0 + std::max(y.cwiseAbs().maxCoeff(),
                                                      ynew.cwiseAbs().maxCoeff()));
            double errnorm = err.cwiseAbs().maxCoeff() / scale;
            if (errnorm <= 1.0) {
                t += hs;
                y.swap(ynew);
                k1.swap(k7);  // first-same-as-last
            }
            // On rejection k1 is untouched and stays valid for the retry.
            double factor = 0.9 * std::pow(std::max(errnorm, 1e-10), -0.2);
            h = hs * std::min(5.0, std::max(0.2, factor));
            if (h < 1e-12 * std::max(1.0, t_end))
                throw std::runtime_error("integrator step size underflow (divergence)");
        }
        t = t_end;
    };

    for (double ts : sample_times) {
        advance_to(ts);
        record(ts);
    }
    advance_to(t_max);

    // Positivity is monitored, not enforced: a violation beyond the floor
    // means the step error was too large, so tighten and redo.
    Eigen::MatrixXcd sym = 0.5 * (y + y.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-7 && opts.tol > 1e-13) {
        EvolveOptions tighter = opts;
        tighter.tol = opts.tol * 0.1;
        return evolve(rho0, spec, t_max, sample_times, observables, tighter);
    }

    return result;
}

double ground_overlap(const DensityMatrix& rho, const CodeSpec& spec) {
    qubit_count_check(spec);
    Eigen::MatrixXcd a = rho.mat;
    const int dim = static_cast<int>(a.rows());
    Eigen::MatrixXcd tmp(dim, dim);
    for (const Site& site : spec.sites) {
        DensePauli dp(site.stabilizer);
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i)
                tmp(i, j) =
                    0.5 * (a(i, j) + dp.left_coef(static_cast<uint32_t>(i)) *
                                         a(static_cast<int>(static_cast<uint32_t>(i) ^ dp.x), j));
        a.swap(tmp);
    }
    return a.trace().real();
}

DensityMatrix encoded_state(const PsiSpec& psi, const CodeSpec& spec, const ToricLayout& lay) {
    const int n = static_cast<int>(spec.n);
    const int dim = qubit_count_check(spec);

    std::vector<VectorFactor> factors;
    Eigen::VectorXcd amps(4);
    for (int i = 0; i < 4; ++i) amps(i) = psi.amps[static_cast<size_t>(i)];
    factors.push_back({{lay.a1(), lay.a2()}, amps});
    Eigen::VectorXcd plus(2), zero(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    zero << 1.0, 0.0;
    for (int q = 0; q < n; ++q) {
        switch (lay.role[static_cast<size_t>(q)]) {
            case QubitRole::A1:
            case QubitRole::A2: break;
            case QubitRole::B:
            case QubitRole::Bp: factors.push_back({{q}, plus}); break;
            default: factors.push_back({{q}, zero}); break;
        }
    }
    Eigen::VectorXcd v = statevector_from_factors(n, factors);

    for (const Site& site : spec.sites) {
        DensePauli dp(site.stabilizer);
        Eigen::VectorXcd sv(dim);
        for (int i = 0; i < dim; ++i)
            sv(i) = dp.left_coef(static_cast<uint32_t>(i)) *
                    v(static_cast<int>(static_cast<uint32_t>(i) ^ dp.x));
        v = 0.5 * (v + sv);
    }
    double norm2 = v.squaredNorm();
    if (norm2 < 1e-12) throw std::runtime_error("encoded state projection is null");
    v /= std::sqrt(norm2);
    return DensityMatrix(static_cast<int>(spec.n), v * v.adjoint());
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.mat.rows() != b.mat.rows()) throw std::invalid_argument("dimension mismatch");
    Eigen::MatrixXcd diff = a.mat - b.mat;
    diff = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

std::pair<double, double> code_projection_distance(const DensityMatrix& rho,
                                                   const CodeSpec& spec) {
    const int dim = qubit_count_check(spec);
    Eigen::MatrixXcd m = rho.mat;
    Eigen::MatrixXcd tmp(dim, dim);
    for (const Site& site : spec.sites) {
        DensePauli dp(site.stabilizer);
        // m <- P+ m P+ for this generator.
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i)
                tmp(i, j) =
                    0.5 * (m(i, j) + dp.left_coef(static_cast<uint32_t>(i)) *
                                         m(static_cast<int>(static_cast<uint32_t>(i) ^ dp.x), j));
        m.swap(tmp);
        for (int j = 0; j < dim; ++j) {
            const uint32_t ju = static_cast<uint32_t>(j);
            const cd cj = dp.right_coef(ju);
            for (int i = 0; i < dim; ++i)
                tmp(i, j) = 0.5 * (m(i, j) + cj * m(i, static_cast<int>(ju ^ dp.x)));
        }
        m.swap(tmp);
    }
    double tq = m.trace().real();
    double eps = 1.0 - tq;
    if (tq <= 1e-15) throw std::runtime_error("state has no code-space overlap");
    DensityMatrix projected(rho.n, m / tq);
    double dist = trace_distance(rho, projected);
    if (dist > 2.0 * std::sqrt(std::max(eps, 0.0)) + 1e-9)
        throw std::logic_error("gentle-measurement contract violated");
    return {eps, dist};
}

DensityMatrix make_encoder_initial_dm(const CodeSpec& spec, const ToricLayout& lay,
                                      const PsiSpec& psi, bool rho_d_mixed) {
    const int n = static_cast<int>(spec.n);
    std::vector<ProductFactor> factors;

    Eigen::VectorXcd amps(4);
    for (int i = 0; i < 4; ++i) amps(i) = psi.amps[static_cast<size_t>(i)];
    factors.push_back({{lay.a1(), lay.a2()}, amps * amps.adjoint()});

    Eigen::MatrixXcd plus(2, 2), zero(2, 2), mixed(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    zero << 1, 0, 0, 0;
    mixed << 0.5, 0, 0, 0.5;
    for (int q = 0; q < n; ++q) {
        switch (lay.role[static_cast<size_t>(q)]) {
            case QubitRole::A1:
            case QubitRole::A2: break;
            case QubitRole::B:
            case QubitRole::Bp: factors.push_back({{q}, plus}); break;
            case QubitRole::C:
            case QubitRole::Cp: factors.push_back({{q}, zero}); break;
            case QubitRole::D: factors.push_back({{q}, rho_d_mixed ? mixed : zero}); break;
        }
    }
    return dm_from_product(n, factors);
}

double unencoded_expectation(const PsiSpec& psi, const std::vector<int>& factors) {
    static const Eigen::Matrix2cd paulis[4] = {
        (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),
        (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
        (Eigen::Matrix2cd() << 0, cd(0, -1), cd(0, 1), 0).finished(),
        (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
    };
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Ones(1, 1);
    for (int f : factors) {
        Eigen::MatrixXcd next(op.rows() * 2, op.cols() * 2);
        for (int i = 0; i < op.rows(); ++i)
            for (int j = 0; j < op.cols(); ++j)
                next.block(2 * i, 2 * j, 2, 2) = op(i, j) * paulis[f];
        op = std::move(next);
    }
    Eigen::VectorXcd v(static_cast<int>(psi.amps.size()));
    for (int i = 0; i < v.size(); ++i) v(i) = psi.amps[static_cast<size_t>(i)];
    return (v.adjoint() * op * v)(0, 0).real();
}

}  // namespace encoderlab
