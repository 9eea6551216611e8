#include "qcs/search.hpp"

#include <omp.h>

#include <stdexcept>

namespace qcs {

namespace {

Layer inverse_layer(const Layer& l, int n) {
    Layer out = l;
    for (int w = 0; w < n; ++w) {
        const GateCode g = l.code(w);
        if (g != GateCode::CnotControl && g != GateCode::CnotTarget) out.set_single(w, inverse(g));
    }
    return out;
}

struct Hit {
    Circuit circuit;
    int gate_count = 0;
    int t_depth = 0;
    int phase = 0;
};

// Order used to pick among witnesses of equal depth.
bool hit_less(const Hit& x, const Hit& y, Objective obj) {
    if (obj == Objective::TDepth && x.t_depth != y.t_depth) return x.t_depth < y.t_depth;
    if (x.circuit.depth() != y.circuit.depth()) return x.circuit.depth() < y.circuit.depth();
    if (x.t_depth != y.t_depth) return x.t_depth < y.t_depth;
    if (x.gate_count != y.gate_count) return x.gate_count < y.gate_count;
    return encoding_cmp(x.circuit, y.circuit) < 0;
}

void offer(std::optional<Hit>& best, Hit h, Objective obj) {
    if (!best || hit_less(h, *best, obj)) best = std::move(h);
}

// Every witness of total depth a + b, where the first factor is drawn from level a.
std::optional<Hit> probe_depth(const RingMatrix& target, const CircuitDatabase& db, int a, int b,
                               const std::vector<QubitPermutation>& perms, const std::vector<RingMatrix>& shifted,
                               const SearchOptions& opts) {
    const int n = db.n_qubits();
    const Canonicalizer& canon = canonicalizer(n, true);
    const DbLevel& wl = db.level(b);
    const std::size_t n_reps = a == 0 ? 1 : db.level(a).size();
    const std::size_t n_perms = a == 0 ? 1 : perms.size();
    const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();

    std::optional<Hit> best;
#pragma omp parallel num_threads(threads)
    {
        std::optional<Hit> local;
        RingMatrix m(n), canon_out(n);
        std::vector<Layer> inv_layers;
#pragma omp for schedule(dynamic, 64)
        for (std::size_t r = 0; r < n_reps; ++r) {
            const Circuit cv = a == 0 ? Circuit(n) : db.level(a).circuit(r);
            inv_layers.clear();
            for (const auto& l : cv.layers()) inv_layers.push_back(inverse_layer(l, n));
            for (int inv = 0; inv < (a == 0 ? 1 : 2); ++inv) {
                for (std::size_t s = 0; s < n_perms; ++s) {
                    // Candidate left factor perm(X, s) with X = V or V^dagger; probe X^dagger * perm(U, s^-1).
                    m = shifted[s];
                    if (inv == 0)
                        for (std::size_t i = inv_layers.size(); i-- > 0;) apply_layer_left(m, inv_layers[i]);
                    else
                        for (const auto& l : cv.layers()) apply_layer_left(m, l);
                    const int variant = canon.canonicalize_into(m, canon_out);
                    const auto w = wl.find(fingerprint(canon_out));
                    if (!w) continue;

                    // U = perm(X, s) * perm(m, s); the stored circuit of W maps back onto m via the class transform.
                    const ClassTransform t = canon.transform_of(m, variant);
                    Circuit full = relabel(wl.circuit(*w), perms[s].after(t.perm.inverse()));
                    if (t.inverted) full = invert(full);
                    full.append(relabel(inv == 0 ? cv : invert(cv), perms[s]));
                    const auto k = phase_between(evaluate(full), target);
                    if (!k) continue;
                    offer(local, Hit{full, gate_count(full), t_depth(full), *k}, opts.objective);
                }
            }
        }
#pragma omp critical(qcs_probe_merge)
        if (local) offer(best, std::move(*local), opts.objective);
    }
    return best;
}

SearchResult to_result(const Hit& h) {
    SearchResult r;
    r.found = true;
    r.circuit = h.circuit;
    r.depth = h.circuit.depth();
    r.t_depth = h.t_depth;
    r.phase_exponent = h.phase;
    return r;
}

}  // namespace

SearchResult mitm_search(const RingMatrix& target, const CircuitDatabase& db, int max_depth,
                         const SearchOptions& opts) {
    const int n = db.n_qubits();
    if (target.n_qubits() != n) throw std::invalid_argument("target width does not match the database");
    if (db.mode() != DbMode::Classed) throw std::invalid_argument("depth search needs a classed database");
    if (max_depth < 0) throw std::invalid_argument("negative depth bound");
    if ((max_depth + 1) / 2 > db.max_depth())
        throw std::invalid_argument("database depth " + std::to_string(db.max_depth()) + " is too shallow for bound " +
                                    std::to_string(max_depth));

    if (auto k = phase_between(RingMatrix::identity(n), target)) return to_result(Hit{Circuit(n), 0, 0, *k});

    const auto perms = QubitPermutation::all(n);
    std::vector<RingMatrix> shifted;
    for (const auto& p : perms) shifted.push_back(permute_qubits(target, p.inverse()));

    std::optional<Hit> best;
    for (int l = 1; l <= max_depth; ++l) {
        if (auto h = probe_depth(target, db, l / 2, (l + 1) / 2, perms, shifted, opts)) {
            offer(best, std::move(*h), opts.objective);
            if (opts.objective == Objective::Depth || best->t_depth == 0) break;
        }
    }
    if (best) return to_result(*best);
    SearchResult r;
    r.proof_bound = max_depth;
    return r;
}

ControlledCost controlled_cost(const CostVector& x) {
    static constexpr long A[4][4] = {{2, 0, 2, 4}, {2, 0, 0, 2}, {1, 2, 6, 12}, {2, 3, 7, 9}};
    const long v[4] = {x.x_h, x.x_p, x.x_c, x.x_t};
    long y[4] = {0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) y[i] += A[i][j] * v[j];
    return {{y[0], y[1], y[2], y[3]}, x.x_h + 2 * x.x_p + 3 * x.x_c + 5 * x.x_t};
}

}  // namespace qcs
