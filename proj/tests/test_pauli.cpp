#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "encoderlab/pauli.hpp"
#include "encoderlab/rng.hpp"
#include "encoderlab/tableau.hpp"
#include "encoderlab/toric.hpp"
#include "oracle.hpp"

using namespace encoderlab;

namespace {

PauliOp make(size_t n, std::initializer_list<size_t> xs, std::initializer_list<size_t> zs,
             int phase = 0) {
    PauliOp p(n);
    for (size_t q : xs) p.set_x(q, true);
    for (size_t q : zs) p.set_z(q, true);
    p.phase = static_cast<uint8_t>(phase & 3);
    return p;
}

}  // namespace

TEST_CASE("single-qubit products") {
    PauliOp x = pauli_single(1, 0, 'X');
    PauliOp y = pauli_single(1, 0, 'Y');
    PauliOp z = pauli_single(1, 0, 'Z');

    // X*Z = -iY, stored as (x=1, z=1, phase 0) under the X-then-Z encoding.
    PauliOp minus_i_y = y;
    minus_i_y.phase = static_cast<uint8_t>((minus_i_y.phase + 3) & 3);
    CHECK(pauli_mul(x, z) == minus_i_y);
    CHECK(pauli_mul(x, z) == make(1, {0}, {0}, 0));

    CHECK(pauli_mul(x, x) == pauli_identity(1));
    CHECK(pauli_mul(y, y) == pauli_identity(1));
    CHECK(pauli_mul(z, z) == pauli_identity(1));

    // Cyclic products: XY = iZ, YZ = iX, ZX = iY.
    PauliOp iz = z;
    iz.phase = 1;
    CHECK(pauli_mul(x, y) == iz);
    PauliOp ix = x;
    ix.phase = 1;
    CHECK(pauli_mul(y, z) == ix);
    PauliOp iy = y;
    iy.phase = static_cast<uint8_t>((iy.phase + 1) & 3);
    CHECK(pauli_mul(z, x) == iy);
}

TEST_CASE("two-qubit product example") {
    PauliOp a = make(2, {0}, {});      // X ⊗ I
    PauliOp b = make(2, {}, {0, 1});   // Z ⊗ Z
    // (X ⊗ I)(Z ⊗ Z) = (-iY) ⊗ Z.
    PauliOp expected = pauli_mul(pauli_single(2, 0, 'Y'), pauli_single(2, 1, 'Z'));
    expected.phase = static_cast<uint8_t>((expected.phase + 3) & 3);
    CHECK(pauli_mul(a, b) == expected);
    CHECK(pauli_mul(a, b) == make(2, {0}, {0, 1}, 0));
}

TEST_CASE("product agrees with the matrix oracle") {
    CounterRng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        size_t n = 1 + rng.uniform_index(4);
        PauliOp a = oracle::random_pauli(n, rng);
        PauliOp b = oracle::random_pauli(n, rng);
        Eigen::MatrixXcd lhs = oracle::matrix(pauli_mul(a, b));
        Eigen::MatrixXcd rhs = oracle::matrix(a) * oracle::matrix(b);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("associativity with exact phases") {
    CounterRng rng(12);
    for (int trial = 0; trial < 1000; ++trial) {
        size_t n = 1 + rng.uniform_index(8);
        PauliOp a = oracle::random_pauli(n, rng);
        PauliOp b = oracle::random_pauli(n, rng);
        PauliOp c = oracle::random_pauli(n, rng);
        CHECK(pauli_mul(pauli_mul(a, b), c) == pauli_mul(a, pauli_mul(b, c)));
    }
}

TEST_CASE("commutation predicate") {
    CHECK_FALSE(commutes(pauli_single(1, 0, 'X'), pauli_single(1, 0, 'Z')));
    CHECK(commutes(pauli_single(2, 0, 'X'), pauli_single(2, 1, 'Z')));

    // commutes(a,b) iff ab and ba carry the same phase.
    CounterRng rng(13);
    for (int trial = 0; trial < 500; ++trial) {
        size_t n = 1 + rng.uniform_index(6);
        PauliOp a = oracle::random_pauli(n, rng);
        PauliOp b = oracle::random_pauli(n, rng);
        int d = (pauli_mul(a, b).phase - pauli_mul(b, a).phase + 4) & 3;
        CHECK(d % 2 == 0);
        CHECK(commutes(a, b) == (d == 0));
    }
}

TEST_CASE("toric stabilizers commute; corrections anticommute with their own site") {
    auto [spec, lay] = build_toric(3);
    for (size_t j = 0; j < spec.sites.size(); ++j) {
        for (size_t k = j + 1; k < spec.sites.size(); ++k)
            CHECK(commutes(spec.sites[j].stabilizer, spec.sites[k].stabilizer));
        if (!spec.sites[j].correction.is_identity_mask())
            CHECK_FALSE(commutes(spec.sites[j].correction, spec.sites[j].stabilizer));
    }
}

TEST_CASE("hermiticity flag") {
    CHECK(pauli_single(1, 0, 'Y').is_hermitian());
    CHECK_FALSE(make(1, {0}, {0}, 0).is_hermitian());  // XZ = -iY
    CHECK(make(2, {0, 1}, {1}, 1).is_hermitian());     // X ⊗ Y
}

TEST_CASE("tableau_from_product") {
    {
        StabilizerTableau t = tableau_from_product(
            {QubitTag::ZPlus, QubitTag::ZPlus, QubitTag::ZPlus});
        CHECK(t.num_stabilizers() == 3);
        for (size_t q = 0; q < 3; ++q) CHECK(t.expectation(pauli_single(3, q, 'Z')) == 1);
    }
    {
        StabilizerTableau t = tableau_from_product({QubitTag::XPlus, QubitTag::Mixed});
        CHECK(t.num_stabilizers() == 1);
        CHECK(t.expectation(pauli_single(2, 0, 'X')) == 1);
        CHECK(t.expectation(pauli_single(2, 1, 'Z')) == 0);
        CHECK(t.expectation(pauli_single(2, 1, 'X')) == 0);
    }
    {
        // Encoder layout at L=2: A in |++>, B/B' X+, C/C' Z+, D mixed.
        auto [spec, lay] = build_toric(2);
        std::vector<QubitTag> tags(8, QubitTag::Mixed);
        for (size_t q = 0; q < 8; ++q) {
            switch (lay.role[q]) {
                case QubitRole::A1:
                case QubitRole::A2:
                case QubitRole::B:
                case QubitRole::Bp: tags[q] = QubitTag::XPlus; break;
                case QubitRole::C:
                case QubitRole::Cp: tags[q] = QubitTag::ZPlus; break;
                case QubitRole::D: break;
            }
        }
        StabilizerTableau t = tableau_from_product(tags);
        CHECK(t.num_stabilizers() == 6);
        CHECK(t.num_qubits() == 8);
        // X̄_1 is the product of the X+ rows on A_1 and B.
        CHECK(t.expectation(spec.logical_x(0)) == 1);
        CHECK(t.expectation(spec.logical_x(1)) == 1);
        CHECK(t.expectation(spec.logical_z(0)) == 0);
    }
}

TEST_CASE("measurement basics") {
    CounterRng rng(21);
    {
        StabilizerTableau t = tableau_from_product({QubitTag::ZPlus, QubitTag::ZPlus});
        MeasureResult r = t.measure(pauli_single(2, 0, 'Z'), rng);
        CHECK(r.deterministic);
        CHECK(r.outcome == 1);
    }
    {
        StabilizerTableau t = tableau_from_product({QubitTag::XPlus, QubitTag::XPlus});
        MeasureResult r = t.measure(pauli_single(2, 0, 'Z'), rng);
        CHECK_FALSE(r.deterministic);
        CHECK(t.expectation(pauli_single(2, 0, 'Z')) == r.outcome);
        // Immediate remeasurement is deterministic with the same outcome.
        MeasureResult r2 = t.measure(pauli_single(2, 0, 'Z'), rng);
        CHECK(r2.deterministic);
        CHECK(r2.outcome == r.outcome);
    }
    {
        auto [spec, lay] = build_toric(2);
        StabilizerTableau t =
            tableau_from_product(std::vector<QubitTag>(8, QubitTag::ZPlus));
        for (const Site& s : spec.sites) {
            if (s.name[0] != 'p') continue;
            MeasureResult r = t.measure(s.stabilizer, rng);
            CHECK(r.deterministic);
            CHECK(r.outcome == 1);
        }
    }
    CHECK_THROWS_AS((void)StabilizerTableau(2).measure(make(2, {0}, {0}, 0), rng),
                    std::invalid_argument);
}

TEST_CASE("apply_pauli flips anticommuting rows") {
    {
        StabilizerTableau t = tableau_from_product({QubitTag::ZPlus});
        t.apply_pauli(pauli_single(1, 0, 'X'));
        CHECK(t.expectation(pauli_single(1, 0, 'Z')) == -1);
    }
    {
        StabilizerTableau t = tableau_from_product({QubitTag::ZPlus, QubitTag::XPlus});
        StabilizerTableau before = t;
        t.apply_pauli(pauli_mul(pauli_single(2, 0, 'Z'), pauli_single(2, 1, 'X')));
        for (size_t q = 0; q < 2; ++q) {
            CHECK(t.expectation(pauli_single(2, q, 'Z')) ==
                  before.expectation(pauli_single(2, q, 'Z')));
            CHECK(t.expectation(pauli_single(2, q, 'X')) ==
                  before.expectation(pauli_single(2, q, 'X')));
        }
    }
    {
        // A single X error flips exactly the two plaquettes bordering the edge.
        auto [spec, lay] = build_toric(2);
        CounterRng rng(31);
        StabilizerTableau t(8);
        for (const Site& s : spec.sites) t.measure_forced(s.stabilizer, +1);
        const int edge = lay.eh(1, 1);
        t.apply_pauli(pauli_single(8, static_cast<size_t>(edge), 'X'));
        for (const Site& s : spec.sites) {
            bool adjacent = !commutes(pauli_single(8, static_cast<size_t>(edge), 'X'),
                                      s.stabilizer);
            CHECK(t.expectation(s.stabilizer) == (adjacent ? -1 : 1));
        }
    }
}

TEST_CASE("expectation values against the dense oracle") {
    CounterRng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const size_t n = 2 + rng.uniform_index(3);  // 2..4 qubits
        std::vector<QubitTag> tags;
        for (size_t q = 0; q < n; ++q) {
            static const QubitTag all[] = {QubitTag::ZPlus, QubitTag::ZMinus, QubitTag::XPlus,
                                           QubitTag::XMinus, QubitTag::YPlus, QubitTag::YMinus,
                                           QubitTag::Mixed};
            tags.push_back(all[rng.uniform_index(7)]);
        }
        StabilizerTableau t = tableau_from_product(tags);
        // Scramble with a few random measurements and Pauli kicks.
        for (int k = 0; k < 6; ++k) {
            PauliOp p = oracle::random_pauli(n, rng, true);
            if (p.is_identity_mask()) continue;
            if (rng.next_u64() & 1) t.measure(p, rng);
            else t.apply_pauli(p);
        }
        t.check_invariants();
        Eigen::MatrixXcd rho = oracle::state(t);
        for (int k = 0; k < 10; ++k) {
            PauliOp p = oracle::random_pauli(n, rng, true);
            double expect = (oracle::matrix(p) * rho).trace().real();
            CHECK(t.expectation(p) == doctest::Approx(expect).epsilon(1e-10));
        }
    }
}

TEST_CASE("measurement update against the dense oracle") {
    CounterRng rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        const size_t n = 2 + rng.uniform_index(2);
        std::vector<QubitTag> tags;
        for (size_t q = 0; q < n; ++q)
            tags.push_back(rng.next_u64() & 1 ? QubitTag::Mixed : QubitTag::ZPlus);
        StabilizerTableau t = tableau_from_product(tags);
        for (int k = 0; k < 4; ++k) {
            PauliOp p = oracle::random_pauli(n, rng, true);
            if (p.is_identity_mask()) continue;
            t.measure(p, rng);
        }
        Eigen::MatrixXcd rho = oracle::state(t);

        PauliOp p = oracle::random_pauli(n, rng, true);
        if (p.is_identity_mask()) continue;
        Eigen::MatrixXcd pm = oracle::matrix(p);
        const int dim = static_cast<int>(rho.rows());
        Eigen::MatrixXcd proj_plus =
            0.5 * (Eigen::MatrixXcd::Identity(dim, dim) + pm);
        double prob_plus = (proj_plus * rho).trace().real();
        int forced = prob_plus > 1e-9 ? +1 : -1;
        Eigen::MatrixXcd proj =
            0.5 * (Eigen::MatrixXcd::Identity(dim, dim) + double(forced) * pm);
        Eigen::MatrixXcd post = proj * rho * proj;
        post /= post.trace();

        MeasureResult r = t.measure_forced(p, forced);
        CHECK(r.outcome == forced);
        t.check_invariants();
        Eigen::MatrixXcd tab_state = oracle::state(t);
        CHECK((tab_state - post).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("expectation flips under anticommuting frames") {
    CounterRng rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        size_t n = 2 + rng.uniform_index(3);
        std::vector<QubitTag> tags;
        for (size_t q = 0; q < n; ++q)
            tags.push_back(rng.next_u64() & 1 ? QubitTag::XPlus : QubitTag::ZPlus);
        StabilizerTableau t = tableau_from_product(tags);
        PauliOp c = oracle::random_pauli(n, rng, true);
        PauliOp p = oracle::random_pauli(n, rng, true);
        int before = t.expectation(p);
        t.apply_pauli(c);
        int after = t.expectation(p);
        CHECK(after == (commutes(c, p) ? before : -before));
    }
}

TEST_CASE("measure rejects non-hermitian and mismatched operators") {
    StabilizerTableau t(2);
    CounterRng rng(44);
    CHECK_THROWS_AS((void)t.measure(pauli_single(3, 0, 'Z'), rng), std::invalid_argument);
    CHECK_THROWS_AS((void)t.expectation(make(2, {0}, {0}, 0)), std::invalid_argument);
    CHECK_THROWS_AS(pauli_mul(pauli_single(1, 0, 'X'), pauli_single(2, 0, 'X')),
                    std::invalid_argument);
}
