#include <random>

#include "doctest.h"
#include "qcs/errors.hpp"
#include "qcs/matrix.hpp"
#include "qcs/reference.hpp"
#include "support.hpp"

using namespace qcs;
using S = RingScalar;

namespace {

RingMatrix gate(GateCode g) { return single_gate_matrix(g); }

RingMatrix cnot01() {
    // control wire 0, target wire 1
    RingMatrix m(2);
    for (std::size_t x = 0; x < 4; ++x) m((x & 1U) ? x ^ 2U : x, x) = S::one();
    return m;
}

RingMatrix cnot10() {
    RingMatrix m(2);
    for (std::size_t x = 0; x < 4; ++x) m((x & 2U) ? x ^ 1U : x, x) = S::one();
    return m;
}

}  // namespace

TEST_CASE("matrix: gate identities") {
    const RingMatrix h = gate(GateCode::H), pdg = gate(GateCode::PDG), t = gate(GateCode::T);
    CHECK(matmul(h, h).is_identity());
    RingMatrix t8 = RingMatrix::identity(1);
    for (int i = 0; i < 8; ++i) t8 = matmul(t, t8);
    CHECK(t8.is_identity());
    const RingMatrix hp = matmul(h, pdg);
    const RingMatrix hp3 = matmul(hp, matmul(hp, hp));
    CHECK(hp3 == scale(RingMatrix::identity(1), S::make(0, 0, 0, -1)));
    CHECK(hp3 == scale_phase(RingMatrix::identity(1), 7));
}

TEST_CASE("matrix: adjoint") {
    CHECK(adjoint(gate(GateCode::T)) == gate(GateCode::TDG));
    CHECK(adjoint(cnot01()) == cnot01());
    std::mt19937_64 rng(21);
    for (int i = 0; i < 50; ++i) {
        const RingMatrix u = evaluate(test::random_circuit(rng, 2, 6));
        CHECK(adjoint(adjoint(u)) == u);
        CHECK(matmul(u, adjoint(u)).is_identity());
        CHECK(is_unitary(u));
    }
}

TEST_CASE("matrix: tensor") {
    CHECK(tensor(RingMatrix::identity(1), RingMatrix::identity(1)) == RingMatrix::identity(2));
    const RingMatrix ti = tensor(gate(GateCode::T), RingMatrix::identity(1));
    const RingMatrix it = tensor(RingMatrix::identity(1), gate(GateCode::T));
    CHECK(ti != it);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            if (r != c) CHECK((ti(r, c).is_zero() && it(r, c).is_zero()));
    const RingMatrix hh = tensor(gate(GateCode::H), gate(GateCode::H));
    CHECK(matmul(hh, hh).is_identity());
    std::mt19937_64 rng(22);
    for (int i = 0; i < 20; ++i) {
        const RingMatrix a = evaluate(test::random_circuit(rng, 1, 3)), b = evaluate(test::random_circuit(rng, 1, 3)),
                         c = evaluate(test::random_circuit(rng, 1, 3));
        CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
    }
}

TEST_CASE("matrix: qubit permutation") {
    const QubitPermutation id = QubitPermutation::identity(2), swap({1, 0});
    CHECK(permute_qubits(cnot01(), id) == cnot01());
    CHECK(permute_qubits(cnot01(), swap) == cnot10());
    std::mt19937_64 rng(23);
    const auto perms = QubitPermutation::all(3);
    CHECK(perms.size() == 6);
    CHECK(perms.front().is_identity());
    for (int i = 0; i < 30; ++i) {
        const RingMatrix u = evaluate(test::random_circuit(rng, 3, 3));
        const auto& s = perms[static_cast<std::size_t>(i) % 6];
        const auto& t = perms[static_cast<std::size_t>(i * 5 + 1) % 6];
        CHECK(permute_qubits(permute_qubits(u, s), s.inverse()) == u);
        CHECK(permute_qubits(permute_qubits(u, s), t) == permute_qubits(u, t.after(s)));
    }
}

TEST_CASE("matrix: phase scaling") {
    const RingMatrix u = cnot01();
    CHECK(scale_phase(u, 0) == u);
    RingMatrix neg = u;
    for (auto& e : neg.entries()) e = -e;
    CHECK(scale_phase(u, 4) == neg);
    CHECK(scale_phase(scale_phase(u, 3), 5) == u);
    CHECK(phase_between(scale_phase(u, 3), u) == 3);
    CHECK(!phase_between(u, cnot10()));
}

TEST_CASE("matrix: lexicographic order") {
    const RingMatrix u = cnot01();
    CHECK(lex_cmp(u, u) == 0);
    CHECK(lex_cmp(RingMatrix(2), RingMatrix::identity(2)) < 0);
    std::mt19937_64 rng(24);
    for (int i = 0; i < 50; ++i) {
        const RingMatrix a = evaluate(test::random_circuit(rng, 2, 3)), b = evaluate(test::random_circuit(rng, 2, 3));
        CHECK((lex_cmp(a, b) < 0) == (lex_cmp(b, a) > 0));
    }
}

TEST_CASE("matrix: fingerprint") {
    CHECK(fingerprint(cnot01()) == fingerprint(cnot01()));
    CHECK(fingerprint(RingMatrix::identity(2)) != fingerprint(cnot01()));
    CHECK(fingerprint(RingMatrix::identity(1)) != fingerprint(RingMatrix::identity(2)));
    const RingMatrix back = matrix_from_json(matrix_to_json(cnot01()));
    CHECK(fingerprint(back) == fingerprint(cnot01()));
}

TEST_CASE("matrix: fast product agrees with schoolbook") {
    std::mt19937_64 rng(25);
    for (int i = 0; i < 100; ++i) {
        RingMatrix a(2), b(2);
        for (auto& e : a.entries()) e = test::random_scalar(rng, 50, 5);
        for (auto& e : b.entries()) e = test::random_scalar(rng, 50, 5);
        CHECK(matmul(a, b) == reference::matmul(a, b));
    }
}

TEST_CASE("matrix: json") {
    std::mt19937_64 rng(26);
    const RingMatrix w = evaluate(test::random_circuit(rng, 2, 4));
    CHECK(matrix_from_json(matrix_to_json(w)) == w);
    CHECK_THROWS_AS(matrix_from_json("{\"n\": 1, \"entries\": [[1,0,0,0,0]]}"), FormatError);
    CHECK_THROWS_AS(matrix_from_json("not json"), FormatError);
}
