#include <deque>
#include <stdexcept>

#include "qcs/canon.hpp"
#include "qcs/errors.hpp"
#include "qcs/search.hpp"

namespace qcs {

Key128 phase_key(const RingMatrix& u) { return fingerprint(phase_normalize(u)); }

std::optional<std::size_t> CliffordSet::find_key(const Key128& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> CliffordSet::find(const RingMatrix& u) const {
    if (auto i = find_key(phase_key(u)); i && phase_between(u, matrices_[*i])) return i;
    return std::nullopt;
}

bool CliffordSet::add(RingMatrix u, const Key128& k, Circuit witness) {
    if (!index_.try_emplace(k, static_cast<std::uint32_t>(matrices_.size())).second) return false;
    matrices_.push_back(std::move(u));
    witnesses_.push_back(std::move(witness));
    return true;
}

CliffordSet clifford_generate(int n, const CliffordOptions& opts) {
    if (n < 1 || n > kMaxQubits) throw std::invalid_argument("qubit count out of range");
    std::vector<Layer> layers;
    for (const auto& l : enumerate_layers(n, gate_set(GateSetId::CliffordOnly)))
        if (!l.is_identity()) layers.push_back(l);

    CliffordSet cs(n);
    const RingMatrix id = RingMatrix::identity(n);
    cs.add(id, phase_key(id), Circuit(n));
    // Breadth-first, so every witness has minimal Clifford-layer depth.
    for (std::size_t head = 0; head < cs.size(); ++head) {
        for (const auto& l : layers) {
            RingMatrix m = cs.matrix(head);
            apply_layer_left(m, l);
            const Key128 k = phase_key(m);
            if (cs.find_key(k)) continue;
            if (cs.size() >= opts.max_elements)
                throw ResourceError("Clifford group on " + std::to_string(n) + " qubits exceeds the element budget of " +
                                    std::to_string(opts.max_elements));
            Circuit w = cs.witness(head);
            w.push_back(l);
            cs.add(std::move(m), k, std::move(w));
        }
    }
    return cs;
}

namespace {

constexpr int kMaxTDepth = 3;

// Circuit pieces, first applied first: Clifford witnesses and single T stages.
struct Piece {
    bool is_t = false;
    std::size_t index = 0;  // Clifford element or T-layer index
};

struct TEngine {
    const CliffordSet& cs;
    int n;
    std::vector<Layer> t_layers;
    std::vector<RingMatrix> t_mats, t_inv;

    // Right-coset representatives T_a c of the T-depth-1 set, and the materialized set itself.
    std::vector<std::pair<std::size_t, std::size_t>> reps;  // (t layer, clifford)
    std::unordered_map<Key128, std::pair<std::uint32_t, std::uint32_t>, Key128Hash> s1;  // key -> (clifford, rep)
    std::vector<RingMatrix> adj;

    explicit TEngine(const CliffordSet& c) : cs(c), n(c.n_qubits()) {
        for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
            Layer l;
            for (int w = 0; w < n; ++w)
                if (mask >> w & 1U) l.set_single(w, GateCode::T);
            t_layers.push_back(l);
            t_mats.push_back(layer_matrix(l, n));
            t_inv.push_back(adjoint(t_mats.back()));
        }
        adj.reserve(cs.size());
        for (std::size_t i = 0; i < cs.size(); ++i) adj.push_back(adjoint(cs.matrix(i)));
    }

    RingMatrix rep_matrix(std::size_t r) const { return matmul(t_mats[reps[r].first], cs.matrix(reps[r].second)); }

    void build_s1(std::size_t max_elements) {
        // T_a c ~ T_b c' iff (T_a c)(T_b c')^dagger is Clifford.
        std::vector<RingMatrix> rep_adj;
        for (std::size_t a = 0; a < t_layers.size(); ++a)
            for (std::size_t c = 0; c < cs.size(); ++c) {
                const RingMatrix e = matmul(t_mats[a], cs.matrix(c));
                bool known = false;
                for (const auto& ra : rep_adj)
                    if (cs.find_key(phase_key(matmul(e, ra)))) {
                        known = true;
                        break;
                    }
                if (known) continue;
                reps.emplace_back(a, c);
                rep_adj.push_back(adjoint(e));
            }
        if (cs.size() * reps.size() > max_elements)
            throw ResourceError("T-depth-1 set would hold " + std::to_string(cs.size() * reps.size()) +
                                " elements, above the budget of " + std::to_string(max_elements));
        s1.reserve(cs.size() * reps.size());
        for (std::size_t r = 0; r < reps.size(); ++r) {
            const RingMatrix rm = rep_matrix(r);
            for (std::size_t c = 0; c < cs.size(); ++c)
                s1.try_emplace(phase_key(matmul(cs.matrix(c), rm)), static_cast<std::uint32_t>(c),
                               static_cast<std::uint32_t>(r));
        }
    }

    // Pieces of the S_1 element c * T_a * c', first applied first.
    void s1_pieces(std::pair<std::uint32_t, std::uint32_t> e, std::vector<Piece>& out) const {
        const auto [a, c0] = reps[e.second];
        out.push_back({false, c0});
        out.push_back({true, a});
        out.push_back({false, e.first});
    }

    Circuit assemble(const std::vector<Piece>& pieces) const {
        std::vector<std::vector<Gate>> blocks;
        for (const Piece& p : pieces) {
            if (p.is_t) {
                std::vector<Gate> b;
                for (int w = 0; w < n; ++w)
                    if (t_layers[p.index].code(w) == GateCode::T) b.push_back({GateKind::T, w, -1});
                blocks.push_back(std::move(b));
            } else {
                for (const Gate& g : cs.witness(p.index).gates()) blocks.push_back({g});
            }
        }
        return schedule_blocks(n, blocks);
    }
};

struct THit {
    Circuit circuit;
    int phase = 0;
};

bool thit_less(const THit& x, const THit& y) {
    if (t_depth(x.circuit) != t_depth(y.circuit)) return t_depth(x.circuit) < t_depth(y.circuit);
    if (x.circuit.depth() != y.circuit.depth()) return x.circuit.depth() < y.circuit.depth();
    const int gx = gate_count(x.circuit), gy = gate_count(y.circuit);
    if (gx != gy) return gx < gy;
    return encoding_cmp(x.circuit, y.circuit) < 0;
}

}  // namespace

SearchResult mitm_search_tdepth(const RingMatrix& target, const CliffordSet& cs, int max_tdepth,
                                const TDepthOptions& opts) {
    if (target.n_qubits() != cs.n_qubits()) throw std::invalid_argument("target width does not match the Clifford set");
    if (max_tdepth < 0) throw std::invalid_argument("negative T-depth bound");
    TEngine eng(cs);
    const RingMatrix& u = target;

    std::optional<THit> best;
    auto consider = [&](const std::vector<Piece>& pieces) {
        THit h{eng.assemble(pieces), 0};
        const auto k = phase_between(evaluate(h.circuit), u);
        if (!k) return;
        h.phase = *k;
        if (!best || thit_less(h, *best)) best = std::move(h);
    };

    for (int t = 0; t <= std::min(max_tdepth, kMaxTDepth) && !best; ++t) {
        if (t == 0) {
            if (auto i = cs.find(u)) consider({{false, *i}});
        } else if (t == 1) {
            // u = c T_a c0.
            for (std::size_t c = 0; c < cs.size(); ++c)
                for (std::size_t a = 0; a < eng.t_layers.size(); ++a) {
                    const RingMatrix y = matmul(eng.t_inv[a], matmul(eng.adj[c], u));
                    if (auto c0 = cs.find_key(phase_key(y))) consider({{false, *c0}, {true, a}, {false, c}});
                }
        } else {
            if (eng.s1.empty()) eng.build_s1(opts.max_elements);
            if (t == 2) {
                // u = c T_a s with s in S_1.
                for (std::size_t c = 0; c < cs.size(); ++c)
                    for (std::size_t a = 0; a < eng.t_layers.size(); ++a) {
                        const RingMatrix y = matmul(eng.t_inv[a], matmul(eng.adj[c], u));
                        auto it = eng.s1.find(phase_key(y));
                        if (it == eng.s1.end()) continue;
                        std::vector<Piece> p;
                        eng.s1_pieces(it->second, p);
                        p.push_back({true, a});
                        p.push_back({false, c});
                        consider(p);
                    }
            } else {
                // u = v T_a s with v, s in S_1.
                for (const auto& [vk, ve] : eng.s1) {
                    (void)vk;
                    const RingMatrix v = matmul(cs.matrix(ve.first), eng.rep_matrix(ve.second));
                    const RingMatrix vu = matmul(adjoint(v), u);
                    for (std::size_t a = 0; a < eng.t_layers.size(); ++a) {
                        auto it = eng.s1.find(phase_key(matmul(eng.t_inv[a], vu)));
                        if (it == eng.s1.end()) continue;
                        std::vector<Piece> p;
                        eng.s1_pieces(it->second, p);
                        p.push_back({true, a});
                        eng.s1_pieces(ve, p);
                        consider(p);
                    }
                }
            }
        }
    }

    if (best) {
        SearchResult r;
        r.found = true;
        r.circuit = best->circuit;
        r.depth = r.circuit.depth();
        r.t_depth = t_depth(r.circuit);
        r.phase_exponent = best->phase;
        return r;
    }
    if (max_tdepth > kMaxTDepth)
        throw ResourceError("T-depth above " + std::to_string(kMaxTDepth) + " needs a larger materialized set");
    SearchResult r;
    r.proof_bound = max_tdepth;
    return r;
}

}  // namespace qcs
