// Acceptance suite: one PASS/FAIL line per criterion.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "qcs/db.hpp"
#include "qcs/phasepoly.hpp"
#include "qcs/reference.hpp"
#include "qcs/search.hpp"
#include "qcs/targets.hpp"
#include "support.hpp"

using namespace qcs;

namespace {

constexpr double kHomomorphismTol = 1e-9;
constexpr double kDb2Seconds = 600;
constexpr double kDb3Seconds = 7200;
constexpr double kSearch3Seconds = 3600;
constexpr double kAncillaSeconds = 3600;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
    std::printf("%s %2d %s: %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string sizes_str(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
}

void criterion1() {
    const RingMatrix h = single_gate_matrix(GateCode::H), pdg = single_gate_matrix(GateCode::PDG),
                     t = single_gate_matrix(GateCode::T);
    const RingMatrix hp = matmul(h, pdg);
    const bool cube = matmul(hp, matmul(hp, hp)) == scale_phase(RingMatrix::identity(1), 7);
    const bool h2 = matmul(h, h).is_identity();
    RingMatrix t8 = RingMatrix::identity(1);
    for (int i = 0; i < 8; ++i) t8 = matmul(t, t8);
    const bool t8i = t8.is_identity();

    std::mt19937_64 rng(1);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const RingScalar x = test::random_scalar(rng), y = test::random_scalar(rng);
        const auto cx = x.to_complex(), cy = y.to_complex();
        worst = std::max(worst, std::abs((x + y).to_complex() - (cx + cy)));
        worst = std::max(worst, std::abs((x * y).to_complex() - cx * cy));
        worst = std::max(worst, std::abs(x.conj().to_complex() - std::conj(cx)));
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "(HP^dg)^3 = w^7 I %s, H^2 = I %s, T^8 = I %s, homomorphism max error %.2e",
                  cube ? "yes" : "no", h2 ? "yes" : "no", t8i ? "yes" : "no", worst);
    report(1, "ring and matrix exactness", cube && h2 && t8i && worst <= kHomomorphismTol, buf);
}

void criterion2() {
    std::vector<std::size_t> got;
    for (int n = 1; n <= 4; ++n) got.push_back(enumerate_layers(n, gate_set(GateSetId::CliffordT)).size());
    report(2, "layer counts", got == std::vector<std::size_t>{6, 38, 252, 1740}, sizes_str(got));
}

CircuitDatabase criterion3() {
    const auto t0 = Clock::now();
    CircuitDatabase db = generate(2, GateSetId::CliffordT, 5, DbMode::Classed);
    const double s = since(t0);
    const auto sizes = db.level_sizes();
    const bool ok = sizes == std::vector<std::size_t>{14, 104, 901, 6180, 37878} && s <= kDb2Seconds;
    report(3, "two-qubit database", ok, "per-depth " + sizes_str(sizes) + " in " + std::to_string(s) + " s");
    return db;
}

CircuitDatabase criterion4() {
    const auto t0 = Clock::now();
    GenerateOptions o;
    o.tie_break = TieBreak::TDepth;
    CircuitDatabase db = generate(3, GateSetId::CliffordT, 4, DbMode::Classed, o);
    const double s = since(t0);
    const auto sizes = db.level_sizes();
    const bool ok = sizes == std::vector<std::size_t>{36, 1110, 41338, 1316882} && s <= kDb3Seconds;
    report(4, "three-qubit database", ok, "per-depth " + sizes_str(sizes) + " in " + std::to_string(s) + " s");
    return db;
}

void criterion5(const CircuitDatabase& db2) {
    const auto levels = reference::brute_force_levels(2, GateSetId::CliffordT, 3);
    std::size_t mismatches = 0, total = 0;
    for (int d = 1; d <= 3; ++d) {
        std::set<Key128> keys;
        for (std::size_t i = 0; i < db2.level(d).size(); ++i) keys.insert(db2.level(d).key(i));
        const auto& want = levels[static_cast<std::size_t>(d - 1)];
        total += want.size();
        for (const auto& k : keys) mismatches += want.contains(k) ? 0 : 1;
        for (const auto& k : want) mismatches += keys.contains(k) ? 0 : 1;
    }
    report(5, "brute-force oracle equivalence", mismatches == 0,
           std::to_string(total) + " classes to depth 3, " + std::to_string(mismatches) + " discrepancies");
}

struct Expect {
    const char* name;
    int depth;
    int t_depth;
};

// Both databases keep, per class, a circuit of fewest T layers; searches then report the minimal
// T-depth among minimal-depth circuits.
void criterion6(const CircuitDatabase& db3) {
    GenerateOptions o;
    o.tie_break = TieBreak::TDepth;
    const CircuitDatabase db2 = generate(2, GateSetId::CliffordT, 5, DbMode::Classed, o);
    bool ok = true;
    std::string detail;
    auto note = [&](const std::string& name, bool good, const std::string& what) {
        ok = ok && good;
        detail += (detail.empty() ? "" : "; ") + name + " " + what + (good ? "" : " (mismatch)");
    };
    auto depth_str = [](int d, int td) { return "depth " + std::to_string(d) + "/T-depth " + std::to_string(td); };

    for (const Expect& e : {Expect{"cx", 1, 0}, Expect{"cy", 3, 0}, Expect{"cz", 3, 0}, Expect{"ch", 7, 2},
                            Expect{"cp", 4, 2}, Expect{"cv", 5, 2}, Expect{"w", 9, 1}}) {
        const RingMatrix u = build_target(e.name);
        const SearchResult r = mitm_search(u, db2, 10);
        const bool verified = r.found && phase_between(evaluate(r.circuit), u).has_value();
        note(e.name, verified && r.depth == e.depth && r.t_depth == e.t_depth,
             r.found ? depth_str(r.depth, r.t_depth) : "not found");
    }

    Circuit toffoli;
    for (const Expect& e : {Expect{"toffoli", 8, 4}, Expect{"toffoli-neg", 8, 4}, Expect{"qor", 8, 4},
                            Expect{"peres", 8, 4}}) {
        const RingMatrix u = build_target(e.name);
        const auto t0 = Clock::now();
        const SearchResult r = mitm_search(u, db3, 8);
        const double s = since(t0);
        const bool verified = r.found && phase_between(evaluate(r.circuit), u).has_value();
        char secs[32];
        std::snprintf(secs, sizeof secs, " in %.0f s", s);
        note(e.name, verified && r.depth == e.depth && r.t_depth == e.t_depth && s <= kSearch3Seconds,
             (r.found ? depth_str(r.depth, r.t_depth) : std::string("not found")) + secs);
        if (std::string(e.name) == "toffoli" && r.found) toffoli = r.circuit;
    }

    // Controlled swap of wires 0 and 1: CNOT(0->1), Toffoli onto wire 0, CNOT(0->1).
    if (toffoli.n_qubits() == 3) {
        Circuit f(3);
        Layer cx;
        cx.set_cnot(0, 1);
        f.push_back(cx);
        f.append(toffoli);
        f.push_back(cx);
        const bool verified = phase_between(evaluate(f), build_target("fredkin")).has_value();
        note("fredkin", verified && f.depth() <= 10 && t_depth(f) == 4,
             "depth " + std::to_string(f.depth()) + " (bound 10)/T-depth " + std::to_string(t_depth(f)));
    } else {
        note("fredkin", false, "no Toffoli circuit to build from");
    }
    report(6, "depth-optimal syntheses", ok, detail);
}

void criterion7() {
    const auto t0 = Clock::now();
    const CliffordSet c1 = clifford_generate(1);
    const CliffordSet c2 = clifford_generate(2);
    const SearchResult ch = mitm_search_tdepth(build_target("ch"), c2, 3);
    const SearchResult cz = mitm_search_tdepth(build_target("cz"), c2, 3);
    const bool ch_ok = ch.found && phase_between(evaluate(ch.circuit), build_target("ch")) && ch.t_depth == 1;
    const bool cz_ok = cz.found && phase_between(evaluate(cz.circuit), build_target("cz")) && cz.t_depth == 0;
    char buf[200];
    std::snprintf(buf, sizeof buf, "|C1| = %zu, |C2| = %zu, controlled-H T-depth %d, controlled-Z T-depth %d, %.1f s",
                  c1.size(), c2.size(), ch.found ? ch.t_depth : -1, cz.found ? cz.t_depth : -1, since(t0));
    report(7, "T-depth engine", c1.size() == 24 && c2.size() == 11520 && ch_ok && cz_ok, buf);
}

void criterion8() {
    const auto t0 = Clock::now();
    const CircuitDatabase full = generate(3, GateSetId::CliffordT, 3, DbMode::Full);
    bool ok = true;
    std::string detail;
    SearchOptions o;
    o.objective = Objective::TDepth;
    for (const char* name : {"cp", "cv"}) {
        const RingMatrix u = build_target(name);
        const auto ts = Clock::now();
        const SearchResult r = ancilla_search(u, 1, full, 6, o);
        const double s = since(ts);
        const bool good = r.found && ancilla_phase(r.circuit, u).has_value() && r.t_depth == 1 && r.depth == 5 &&
                          s <= kAncillaSeconds;
        ok = ok && good;
        char buf[120];
        std::snprintf(buf, sizeof buf, "%s%s T-depth %d depth %d in %.0f s", detail.empty() ? "" : "; ", name,
                      r.found ? r.t_depth : -1, r.found ? r.depth : -1, s);
        detail += buf;
    }
    detail += "; total " + std::to_string(static_cast<int>(since(t0))) + " s";
    report(8, "ancilla searches", ok, detail);
}

Circuit random_cnot_t(std::mt19937_64& rng, int n, int n_gates) {
    std::vector<Gate> gates;
    std::uniform_int_distribution<int> wire(0, n - 1), coin(0, 1);
    for (int i = 0; i < n_gates; ++i) {
        const int w = wire(rng);
        if (n > 1 && coin(rng)) {
            int t = wire(rng);
            while (t == w) t = wire(rng);
            gates.push_back({GateKind::CNOT, w, t});
        } else {
            gates.push_back({GateKind::T, w, -1});
        }
    }
    return schedule(n, gates);
}

void criterion9() {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> nq(1, 4), ng(0, 25), na(0, 3);
    int unitary_bad = 0, depth_bad = 0;
    for (int i = 0; i < 500; ++i) {
        const int n = nq(rng), m = na(rng);
        const Circuit c = random_cnot_t(rng, n, ng(rng));
        const int k = static_cast<int>(cost_vector(c).x_t);
        const Circuit out = parallelize(c, m);
        if (ancilla_phase(out, evaluate(c)) != 0) ++unitary_bad;
        if (t_depth(out) > (k + m) / (m + 1)) ++depth_bad;
    }
    // Seven distinct parities of three wires, one T each.
    std::vector<Gate> gates;
    for (LinearFn f = 1; f < 8; ++f) {
        const int t = std::countr_zero(f);
        std::vector<Gate> fold;
        for (int w = t + 1; w < 3; ++w)
            if (f >> w & 1U) fold.push_back({GateKind::CNOT, w, t});
        gates.insert(gates.end(), fold.begin(), fold.end());
        gates.push_back({GateKind::T, t, -1});
        gates.insert(gates.end(), fold.rbegin(), fold.rend());
    }
    const Circuit seven = schedule(3, gates);
    const Circuit par = parallelize(seven, 4);
    const bool seven_ok = t_depth(par) == 1 && ancilla_phase(par, evaluate(seven)) == 0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "500 circuits: %d unitary/ancilla violations, %d T-depth bound violations; seven-term m=4 T-depth %d",
                  unitary_bad, depth_bad, t_depth(par));
    report(9, "T-parallelization", unitary_bad == 0 && depth_bad == 0 && seven_ok, buf);
}

void criterion10() {
    const CostVector columns[4] = {{2, 2, 1, 2}, {0, 0, 2, 3}, {2, 0, 6, 7}, {4, 2, 12, 9}};
    const long bounds[4] = {1, 2, 3, 5};
    const CostVector units[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    bool ok = true;
    for (int j = 0; j < 4; ++j) {
        const ControlledCost c = controlled_cost(units[j]);
        ok = ok && c.cost == columns[j] && c.t_depth_bound == bounds[j];
    }
    const ControlledCost mixed = controlled_cost({3, 1, 4, 2});
    ok = ok && mixed.t_depth_bound == 3 + 2 * 1 + 3 * 4 + 5 * 2;
    ok = ok && mixed.cost == CostVector{2 * 3 + 0 + 2 * 4 + 4 * 2, 2 * 3 + 0 + 0 + 2 * 2, 3 + 2 + 6 * 4 + 12 * 2,
                                        2 * 3 + 3 + 7 * 4 + 9 * 2};
    report(10, "controlled-cost accounting", ok, "four columns and the T-depth bound");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    const CircuitDatabase db2 = criterion3();
    {
        const CircuitDatabase db3 = criterion4();
        criterion5(db2);
        criterion6(db3);
    }
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
