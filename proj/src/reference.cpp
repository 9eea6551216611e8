#include "qcs/reference.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "qcs/canon.hpp"

namespace qcs::reference {

RingMatrix matmul(const RingMatrix& x, const RingMatrix& y) {
    if (x.n_qubits() != y.n_qubits()) throw std::invalid_argument("shape mismatch");
    RingMatrix out(x.n_qubits());
    for (std::size_t r = 0; r < x.dim(); ++r)
        for (std::size_t c = 0; c < x.dim(); ++c) {
            RingScalar acc;
            for (std::size_t k = 0; k < x.dim(); ++k) acc += x(r, k) * y(k, c);
            out(r, c) = acc;
        }
    return out;
}

RingMatrix layer_matrix(const Layer& l, int n) {
    // Single gates, highest wire first so the tensor product lands wire w on bit w.
    RingMatrix m;
    for (int w = n - 1; w >= 0; --w) {
        const GateCode g = l.code(w);
        const bool cnot = g == GateCode::CnotControl || g == GateCode::CnotTarget;
        const RingMatrix s = single_gate_matrix(cnot ? GateCode::I : g);
        m = w == n - 1 ? s : tensor(m, s);
    }
    for (int w = 0; w < n; ++w) {
        if (l.code(w) != GateCode::CnotControl) continue;
        const int t = l.partner(w);
        RingMatrix p(n);
        for (std::size_t x = 0; x < p.dim(); ++x) p((x >> w & 1U) ? x ^ (std::size_t{1} << t) : x, x) = RingScalar::one();
        m = reference::matmul(p, m);
    }
    return m;
}

RingMatrix evaluate(const Circuit& c) {
    RingMatrix m = RingMatrix::identity(c.n_qubits());
    for (const auto& l : c.layers()) m = reference::matmul(reference::layer_matrix(l, c.n_qubits()), m);
    return m;
}

RingMatrix canonical_rep(const RingMatrix& u, bool with_symmetry) {
    std::optional<RingMatrix> best;
    const auto perms = with_symmetry ? QubitPermutation::all(u.n_qubits())
                                     : std::vector<QubitPermutation>{QubitPermutation::identity(u.n_qubits())};
    for (int inv = 0; inv < (with_symmetry ? 2 : 1); ++inv) {
        const RingMatrix x = inv ? adjoint(u) : u;
        for (const auto& p : perms) {
            RingMatrix v = phase_normalize(permute_qubits(x, p));
            if (!best || lex_cmp(v, *best) < 0) best = std::move(v);
        }
    }
    return *best;
}

Key128 canonical_key(const RingMatrix& u, bool with_symmetry) { return fingerprint(canonical_rep(u, with_symmetry)); }

CircuitDatabase generate(int n, GateSetId gs_id, int max_depth, DbMode mode) {
    const bool sym = mode == DbMode::Classed;
    const auto all_layers = enumerate_layers(n, gate_set(gs_id));
    CircuitDatabase db(n, gs_id, mode);
    std::set<Key128> seen;

    struct Best {
        int gate_count;
        std::vector<std::uint8_t> bytes;
    };
    auto bytes_of = [&](const Circuit& c) {
        std::vector<std::uint8_t> b;
        for (const auto& l : c.layers()) b.insert(b.end(), l.slot.begin(), l.slot.begin() + n);
        return b;
    };

    for (int depth = 1; depth <= max_depth; ++depth) {
        std::map<Key128, Best> level;
        std::vector<Circuit> parents;
        if (depth == 1)
            parents.emplace_back(n);
        else
            for (std::size_t i = 0; i < db.level(depth - 1).size(); ++i) parents.push_back(db.level(depth - 1).circuit(i));
        for (const Circuit& p : parents)
            for (const Layer& l : all_layers) {
                if (depth > 1 && l.is_identity()) continue;
                for (int side = 0; side < (depth == 1 ? 1 : 2); ++side) {
                    Circuit c(n);
                    if (side == 1) c.push_back(l);
                    for (const auto& pl : p.layers()) c.push_back(pl);
                    if (side == 0) c.push_back(l);
                    const RingMatrix u = reference::evaluate(c);
                    const ClassTransform t = canonicalizer(n, sym).canonical_rep(u).second;
                    const Key128 k = canonical_key(u, sym);
                    if (seen.contains(k)) continue;
                    const Circuit stored = apply_transform(c, t);
                    Best b{gate_count(stored), bytes_of(stored)};
                    auto it = level.find(k);
                    if (it == level.end() || std::tie(b.gate_count, b.bytes) < std::tie(it->second.gate_count, it->second.bytes))
                        level[k] = std::move(b);
                }
            }
        DbLevel out(n, depth);
        for (const auto& [k, b] : level) {
            out.push_back(k, b.bytes, b.gate_count);
            seen.insert(k);
        }
        db.add_level(std::move(out));
    }
    return db;
}

std::vector<std::set<Key128>> brute_force_levels(int n, GateSetId gs, int max_depth) {
    const auto layers = enumerate_layers(n, gate_set(gs));
    std::vector<std::set<Key128>> out(static_cast<std::size_t>(max_depth));
    std::set<Key128> seen;
    // Frontier: every product of exactly d layers (identity layers included).
    std::vector<RingMatrix> frontier{RingMatrix::identity(n)};
    for (int d = 1; d <= max_depth; ++d) {
        std::vector<RingMatrix> next;
        next.reserve(frontier.size() * layers.size());
        for (const auto& m : frontier)
            for (const auto& l : layers) {
                RingMatrix u = reference::matmul(reference::layer_matrix(l, n), m);
                const Key128 k = canonical_key(u);
                if (!seen.contains(k)) out[static_cast<std::size_t>(d - 1)].insert(k);
                next.push_back(std::move(u));
            }
        for (const auto& k : out[static_cast<std::size_t>(d - 1)]) seen.insert(k);
        frontier = std::move(next);
    }
    return out;
}

}  // namespace qcs::reference
