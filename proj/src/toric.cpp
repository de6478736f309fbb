#include "encoderlab/toric.hpp"

#include <stdexcept>

namespace encoderlab {

namespace {

std::string coord_name(const char* prefix, int x, int y) {
    // Comma-free so the names can serve as CSV observable labels.
    return std::string(prefix) + "_" + std::to_string(x) + "_" + std::to_string(y);
}

// Full validation is quadratic in the site count; past this size the
// builder trusts the construction (pinned by tests at small L).
constexpr int kValidateLimit = 16;

}  // namespace

ToricLayout build_toric_layout(int L) {
    if (L < 2) throw std::invalid_argument("toric code needs L >= 2");

    ToricLayout lay;
    lay.L = L;
    const int nq = lay.num_qubits();
    const int nsites = lay.num_sites();
    lay.successor.assign(static_cast<size_t>(nsites), -1);
    lay.f.assign(static_cast<size_t>(nsites), -1);
    lay.sector.assign(static_cast<size_t>(nsites), SectorTag::Bulk);
    lay.role.assign(static_cast<size_t>(nq), QubitRole::D);

    lay.role[static_cast<size_t>(lay.eh(0, 0))] = QubitRole::A1;
    lay.role[static_cast<size_t>(lay.ev(0, 0))] = QubitRole::A2;
    for (int y = 1; y < L; ++y) {
        lay.role[static_cast<size_t>(lay.eh(0, y))] = QubitRole::B;   // supp X̄_1
        lay.role[static_cast<size_t>(lay.ev(0, y))] = QubitRole::Cp;  // supp Z̄_2
    }
    for (int x = 1; x < L; ++x) {
        lay.role[static_cast<size_t>(lay.eh(x, 0))] = QubitRole::C;   // supp Z̄_1
        lay.role[static_cast<size_t>(lay.ev(x, 0))] = QubitRole::Bp;  // supp X̄_2
    }

    for (int y = 0; y < L; ++y) {
        for (int x = 0; x < L; ++x) {
            const int p = lay.plaq(x, y);
            const int v = lay.vert(x, y);
            // Plaquette excitations drift down to the equator row, then
            // left into the sink; f counts the hops minus one.
            if (x == 0 && y == 0) {
                lay.sector[static_cast<size_t>(p)] = SectorTag::Sink;
            } else if (y == 0) {
                lay.successor[static_cast<size_t>(p)] = lay.plaq(x - 1, 0);
                lay.sector[static_cast<size_t>(p)] = SectorTag::Equator;
                lay.f[static_cast<size_t>(p)] = x - 1;
            } else {
                lay.successor[static_cast<size_t>(p)] = lay.plaq(x, y - 1);
                lay.f[static_cast<size_t>(p)] = x + y - 1;
            }
            // Vertex excitations drift right (wrapping) to the column x=0,
            // then up (wrapping) into the sink.
            if (x == 0 && y == 0) {
                lay.sector[static_cast<size_t>(v)] = SectorTag::Sink;
            } else if (x == 0) {
                lay.successor[static_cast<size_t>(v)] = lay.vert(0, y + 1);
                lay.sector[static_cast<size_t>(v)] = SectorTag::Equator;
                lay.f[static_cast<size_t>(v)] = (L - y) - 1;
            } else {
                lay.successor[static_cast<size_t>(v)] = lay.vert(x + 1, y);
                lay.f[static_cast<size_t>(v)] = (L - x) + (y == 0 ? 0 : L - y) - 1;
            }
        }
    }
    return lay;
}

std::pair<CodeSpec, ToricLayout> build_toric(int L, bool include_sinks) {
    ToricLayout lay = build_toric_layout(L);
    const size_t n = static_cast<size_t>(lay.num_qubits());
    const int nsites = lay.num_sites();

    CodeSpec spec;
    spec.n = n;
    spec.sites.resize(static_cast<size_t>(nsites));

    for (int y = 0; y < L; ++y) {
        for (int x = 0; x < L; ++x) {
            // Plaquette P(x,y): Z on the four boundary edges.
            Site p;
            p.name = coord_name("p", x, y);
            p.stabilizer = PauliOp(n);
            p.stabilizer.set_z(static_cast<size_t>(lay.eh(x, y)), true);
            p.stabilizer.set_z(static_cast<size_t>(lay.eh(x, y + 1)), true);
            p.stabilizer.set_z(static_cast<size_t>(lay.ev(x, y)), true);
            p.stabilizer.set_z(static_cast<size_t>(lay.ev(x + 1, y)), true);
            p.correction = PauliOp(n);
            if (x == 0 && y == 0) {
                p.sink = true;
            } else if (y == 0) {
                // X on the left edge hops the excitation to P(x-1,0).
                p.correction = pauli_single(n, static_cast<size_t>(lay.ev(x, 0)), 'X');
            } else {
                // X on the bottom edge hops the excitation to P(x,y-1).
                p.correction = pauli_single(n, static_cast<size_t>(lay.eh(x, y)), 'X');
            }
            p.successor = lay.successor[static_cast<size_t>(lay.plaq(x, y))];
            p.f = lay.f[static_cast<size_t>(lay.plaq(x, y))];
            spec.sites[static_cast<size_t>(lay.plaq(x, y))] = std::move(p);

            // Vertex V(x,y): X on the four incident edges.
            Site v;
            v.name = coord_name("v", x, y);
            v.stabilizer = PauliOp(n);
            v.stabilizer.set_x(static_cast<size_t>(lay.eh(x, y)), true);
            v.stabilizer.set_x(static_cast<size_t>(lay.eh(x - 1, y)), true);
            v.stabilizer.set_x(static_cast<size_t>(lay.ev(x, y)), true);
            v.stabilizer.set_x(static_cast<size_t>(lay.ev(x, y - 1)), true);
            v.correction = PauliOp(n);
            if (x == 0 && y == 0) {
                v.sink = true;
            } else if (x == 0) {
                // Z on the upward edge hops the excitation to V(0,y+1).
                v.correction = pauli_single(n, static_cast<size_t>(lay.ev(0, y)), 'Z');
            } else {
                // Z on the rightward edge hops the excitation to V(x+1,y).
                v.correction = pauli_single(n, static_cast<size_t>(lay.eh(x, y)), 'Z');
            }
            v.successor = lay.successor[static_cast<size_t>(lay.vert(x, y))];
            v.f = lay.f[static_cast<size_t>(lay.vert(x, y))];
            spec.sites[static_cast<size_t>(lay.vert(x, y))] = std::move(v);
        }
    }

    // Hop counts from the successor chains must agree with the closed-form
    // f filled in by the layout.
    std::vector<int> f = compute_f(spec);
    for (int j = 0; j < nsites; ++j) {
        if (f[static_cast<size_t>(j)] != spec.sites[static_cast<size_t>(j)].f)
            throw std::logic_error("toric f mismatch at " +
                                   spec.sites[static_cast<size_t>(j)].name);
    }

    // Logical strings: X̄_1 and Z̄_2 run along the column x=0, Z̄_1 and X̄_2
    // along the row y=0; they pairwise overlap only on the unencoded qubits.
    PauliOp x1(n), z1(n), x2(n), z2(n);
    for (int y = 0; y < L; ++y) {
        x1.set_x(static_cast<size_t>(lay.eh(0, y)), true);
        z2.set_z(static_cast<size_t>(lay.ev(0, y)), true);
    }
    for (int x = 0; x < L; ++x) {
        z1.set_z(static_cast<size_t>(lay.eh(x, 0)), true);
        x2.set_x(static_cast<size_t>(lay.ev(x, 0)), true);
    }
    spec.logicals = {x1, z1, x2, z2};

    if (L <= kValidateLimit) {
        auto [pred, m] = compute_pred_and_m(spec);
        spec.pred = std::move(pred);
        spec.m = m;
        for (int j = 0; j < nsites; ++j)
            for (int k : spec.pred[static_cast<size_t>(j)])
                if (spec.sites[static_cast<size_t>(k)].successor != j)
                    throw std::logic_error("pred is not the successor preimage");
        ValidationReport rep = validate_code(spec);
        if (!rep.ok()) throw std::logic_error("toric construction invalid: " + rep.str());
    } else {
        // pred is the successor preimage for this construction (checked
        // against the brute-force scan at small L).
        spec.pred.resize(static_cast<size_t>(nsites));
        for (int k = 0; k < nsites; ++k) {
            int succ = spec.sites[static_cast<size_t>(k)].successor;
            if (succ >= 0) spec.pred[static_cast<size_t>(succ)].push_back(k);
        }
        spec.m = 1;
    }

    for (int j = 0; j < nsites; ++j) {
        if (spec.sites[static_cast<size_t>(j)].sink && !include_sinks) continue;
        spec.active.push_back(j);
    }

    return {std::move(spec), std::move(lay)};
}

}  // namespace encoderlab
