#include <bit>
#include <random>

#include "doctest.h"
#include "qcs/phasepoly.hpp"
#include "qcs/search.hpp"
#include "support.hpp"

using namespace qcs;

namespace {

int parity(std::uint32_t x) { return std::popcount(x) & 1; }

Circuit random_cnot_t(std::mt19937_64& rng, int n, int n_gates) {
    std::vector<Gate> gates;
    std::uniform_int_distribution<int> wire(0, n - 1), coin(0, 2);
    for (int i = 0; i < n_gates; ++i) {
        const int w = wire(rng);
        int t = wire(rng);
        if (n > 1 && coin(rng) != 0) {
            while (t == w) t = wire(rng);
            gates.push_back({GateKind::CNOT, w, t});
        } else {
            gates.push_back({GateKind::T, w, -1});
        }
    }
    return schedule(n, gates);
}

// One T on the parity f: fold f onto its lowest wire, apply T, unfold.
std::vector<Gate> t_on_parity(LinearFn f) {
    const int t = std::countr_zero(f);
    std::vector<Gate> fold;
    for (int w = t + 1; w < 32; ++w)
        if (f >> w & 1U) fold.push_back({GateKind::CNOT, w, t});
    std::vector<Gate> out = fold;
    out.push_back({GateKind::T, t, -1});
    out.insert(out.end(), fold.rbegin(), fold.rend());
    return out;
}

Circuit parity_circuit(int n, const std::vector<LinearFn>& fs) {
    std::vector<Gate> gates;
    for (LinearFn f : fs) {
        const auto g = t_on_parity(f);
        gates.insert(gates.end(), g.begin(), g.end());
    }
    return schedule(n, gates);
}

int count_t(const Circuit& c) { return static_cast<int>(cost_vector(c).x_t); }

}  // namespace

TEST_CASE("phasepoly: GF(2) algebra") {
    const Gf2Matrix id = Gf2Matrix::identity(3);
    const Gf2Matrix a{3, {0b011, 0b010, 0b101}};
    CHECK(gf2_mul(a, id) == a);
    const auto inv = gf2_inverse(a);
    REQUIRE(inv);
    CHECK(gf2_mul(a, *inv) == id);
    CHECK(!gf2_inverse(Gf2Matrix{2, {0b01, 0b01}}));
    CHECK(gf2_rank({0b01, 0b10, 0b11}) == 2);
    CHECK(gf2_rank({}) == 0);
    CHECK(a.apply(0b001) == 0b101);
}

TEST_CASE("phasepoly: extraction") {
    Circuit t = schedule(2, std::vector<Gate>{{GateKind::T, 0, -1}});
    PhasePolynomial p = extract(t);
    CHECK(p.terms == std::vector<LinearFn>{0b01});
    CHECK(p.g == Gf2Matrix::identity(2));

    Circuit ct = schedule(2, std::vector<Gate>{{GateKind::CNOT, 0, 1}, {GateKind::T, 1, -1}});
    p = extract(ct);
    CHECK(p.terms == std::vector<LinearFn>{0b11});
    CHECK(p.g == Gf2Matrix{2, {0b01, 0b11}});

    CHECK_THROWS_AS(extract(schedule(1, std::vector<Gate>{{GateKind::H, 0, -1}})), std::invalid_argument);
}

TEST_CASE("phasepoly: sum-over-terms formula matches the unitary") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + i % 4;
        const Circuit c = random_cnot_t(rng, n, 1 + i % 20);
        const PhasePolynomial p = extract(c);
        const RingMatrix u = evaluate(c);
        for (std::uint32_t a = 0; a < (1U << n); ++a) {
            int k = 0;
            for (LinearFn f : p.terms) k += parity(f & a);
            std::uint32_t out = 0;
            for (int w = 0; w < n; ++w) out |= static_cast<std::uint32_t>(parity(p.g.rows[static_cast<std::size_t>(w)] & a)) << w;
            CHECK(u(out, a) == RingScalar::omega(k % 8));
        }
    }
}

TEST_CASE("phasepoly: partition") {
    const std::vector<LinearFn> terms{0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111};
    auto parts = partition(terms, 4, 3);
    CHECK(parts.size() == 1);
    parts = partition(terms, 0, 3);
    for (const auto& part : parts) CHECK(gf2_rank(part) == static_cast<int>(part.size()));
    parts = partition(terms, 1, 3);
    std::size_t total = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& part = parts[i];
        total += part.size();
        CHECK(static_cast<int>(part.size()) <= 1 + gf2_rank(part));
        if (i + 1 < parts.size()) CHECK(part.size() >= 2);
    }
    CHECK(total == terms.size());
    CHECK(partition({}, 2, 3).empty());
}

TEST_CASE("phasepoly: CNOT synthesis") {
    std::mt19937_64 rng(62);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + i % 5;
        const Gf2Matrix l = extract(random_cnot_t(rng, n, 12)).g;
        const Circuit c = cnot_synth(l);
        const PhasePolynomial p = extract(c);
        CHECK(p.g == l);
        CHECK(count_t(c) == 0);
    }
    CHECK_THROWS_AS(cnot_synth(Gf2Matrix{2, {0b11, 0b11}}), std::invalid_argument);
}

TEST_CASE("phasepoly: parallelization preserves the unitary and meets the T-depth bound") {
    std::mt19937_64 rng(63);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + i % 4, m = i % 4;
        const Circuit c = random_cnot_t(rng, n, 1 + i % 25);
        const int k = count_t(c);
        const Circuit out = parallelize(c, m);
        CHECK(out.n_qubits() == n + m);
        CHECK(out.n_ancillas() == m);
        CHECK(ancilla_phase(out, evaluate(c)) == 0);
        CHECK(t_depth(out) <= (k + m) / (m + 1));
        ParallelizeOptions merge;
        merge.merge_duplicates = true;
        const Circuit merged = parallelize(c, m, merge);
        CHECK(ancilla_phase(merged, evaluate(c)) == 0);
        CHECK(t_depth(merged) <= t_depth(out));
    }
}

TEST_CASE("phasepoly: seven parities with four ancillas in one T stage") {
    const Circuit c = parity_circuit(3, {0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111});
    CHECK(count_t(c) == 7);
    const Circuit out = parallelize(c, 4);
    CHECK(t_depth(out) == 1);
    CHECK(ancilla_phase(out, evaluate(c)) == 0);
}

TEST_CASE("phasepoly: eight parities of four wires with four ancillas") {
    const Circuit c =
        parity_circuit(4, {0b0001, 0b0010, 0b0100, 0b1000, 0b0011, 0b0110, 0b1100, 0b1111});
    const Circuit out = parallelize(c, 4);
    CHECK(t_depth(out) == 1);
    CHECK(ancilla_phase(out, evaluate(c)) == 0);
}

TEST_CASE("phasepoly: mixed circuits by region") {
    std::vector<Gate> gates{{GateKind::T, 0, -1}, {GateKind::T, 1, -1}, {GateKind::CNOT, 0, 1}, {GateKind::T, 1, -1},
                            {GateKind::H, 0, -1}, {GateKind::T, 0, -1}, {GateKind::CNOT, 1, 0}, {GateKind::T, 0, -1}};
    const Circuit c = schedule(2, gates);
    const Circuit out = parallelize_regions(c, 2);
    CHECK(ancilla_phase(out, evaluate(c)) == 0);
    CHECK(t_depth(out) <= t_depth(c));
}
