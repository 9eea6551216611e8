#include <omp.h>

#include <stdexcept>

#include "qcs/canon.hpp"
#include "qcs/search.hpp"

namespace qcs {

namespace {

// The first `cols` columns of m, column by column.
std::vector<RingScalar> leading_columns(const RingMatrix& m, std::size_t cols) {
    std::vector<RingScalar> out;
    out.reserve(m.dim() * cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < m.dim(); ++r) out.push_back(m(r, c));
    return out;
}

Key128 column_key(const RingMatrix& m, std::size_t cols) {
    auto e = leading_columns(m, cols);
    std::size_t i = 0;
    while (i < e.size() && e[i].is_zero()) ++i;
    if (i < e.size()) {
        const RingScalar mult = e[i].conj();
        for (auto& x : e) x = x * mult;
    }
    return fingerprint_entries(e, (static_cast<std::uint64_t>(m.dim()) << 32) | cols);
}

// Target embedded on the ancilla-zero columns of an (n+m)-qubit matrix.
RingMatrix embed(const RingMatrix& target, int total) {
    RingMatrix out(total);
    for (std::size_t r = 0; r < target.dim(); ++r)
        for (std::size_t c = 0; c < target.dim(); ++c) out(r, c) = target(r, c);
    return out;
}

struct Ref {
    int level;  // 0 is the empty circuit
    std::uint32_t index;
};

struct AHit {
    Circuit circuit;
    int t_depth = 0;
    int gate_count = 0;
    int phase = 0;
};

bool ahit_less(const AHit& x, const AHit& y, Objective obj) {
    if (obj == Objective::TDepth && x.t_depth != y.t_depth) return x.t_depth < y.t_depth;
    if (x.circuit.depth() != y.circuit.depth()) return x.circuit.depth() < y.circuit.depth();
    if (x.t_depth != y.t_depth) return x.t_depth < y.t_depth;
    if (x.gate_count != y.gate_count) return x.gate_count < y.gate_count;
    return encoding_cmp(x.circuit, y.circuit) < 0;
}

}  // namespace

std::optional<int> ancilla_phase(const Circuit& c, const RingMatrix& target) {
    const RingMatrix e = evaluate(c);
    const RingMatrix t = embed(target, c.n_qubits());
    const std::size_t cols = target.dim();
    for (int k = 0; k < 8; ++k) {
        bool ok = true;
        for (std::size_t col = 0; col < cols && ok; ++col)
            for (std::size_t r = 0; r < e.dim() && ok; ++r) ok = e(r, col) == t(r, col).times_omega(k);
        if (ok) return k;
    }
    return std::nullopt;
}

SearchResult ancilla_search(const RingMatrix& target, int m, const CircuitDatabase& db, int max_depth,
                            const SearchOptions& opts) {
    const int n = target.n_qubits();
    const int total = n + m;
    if (m < 0 || db.n_qubits() != total) throw std::invalid_argument("database width must be target width + ancillas");
    if (db.mode() != DbMode::Full) throw std::invalid_argument("ancilla search needs a full-mode database");
    if (max_depth < 0) throw std::invalid_argument("negative depth bound");
    if ((max_depth + 1) / 2 > db.max_depth())
        throw std::invalid_argument("database depth " + std::to_string(db.max_depth()) + " is too shallow for bound " +
                                    std::to_string(max_depth));
    const std::size_t cols = target.dim();
    const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();

    auto circuit_of = [&](Ref r) {
        Circuit c = r.level == 0 ? Circuit(total) : db.level(r.level).circuit(r.index);
        return Circuit(total, c.layers(), m);
    };
    auto finish = [&](const AHit& h) {
        SearchResult r;
        r.found = true;
        r.circuit = h.circuit;
        r.depth = h.circuit.depth();
        r.t_depth = h.t_depth;
        r.phase_exponent = h.phase;
        return r;
    };

    if (auto k = ancilla_phase(Circuit(total, {}, m), target)) return finish(AHit{Circuit(total, {}, m), 0, 0, *k});

    // Secondary index: leading-column key of every stored W.
    const int levels = std::min(db.max_depth(), max_depth);
    std::unordered_map<Key128, std::vector<Ref>, Key128Hash> index;
    index[column_key(RingMatrix::identity(total), cols)].push_back({0, 0});
    for (int d = 1; d <= levels; ++d) {
        const DbLevel& l = db.level(d);
        for (std::size_t i = 0; i < l.size(); ++i)
            index[column_key(evaluate(l.circuit(i)), cols)].push_back({d, static_cast<std::uint32_t>(i)});
    }

    const RingMatrix t0 = embed(target, total);
    std::optional<AHit> best;
    for (int len = 1; len <= max_depth; ++len) {
        std::optional<AHit> found;
        for (int a = std::max(0, len - levels); a <= std::min(len, levels); ++a) {
            const int b = len - a;
            const std::size_t n_v = a == 0 ? 1 : db.level(a).size();
#pragma omp parallel num_threads(threads)
            {
                std::optional<AHit> local;
                RingMatrix x(total);
#pragma omp for schedule(dynamic, 64)
                for (std::size_t v = 0; v < n_v; ++v) {
                    const Circuit vc = circuit_of({a, static_cast<std::uint32_t>(v)});
                    // x = V^dagger T0; W must agree with x on the leading columns.
                    x = t0;
                    const Circuit vi = invert(vc);
                    for (const auto& l : vi.layers()) apply_layer_left(x, l);
                    auto it = index.find(column_key(x, cols));
                    if (it == index.end()) continue;
                    for (const Ref& w : it->second) {
                        if (w.level != b) continue;
                        Circuit full = circuit_of(w);
                        full.append(vc);
                        const auto k = ancilla_phase(full, target);
                        if (!k) continue;
                        AHit h{full, t_depth(full), gate_count(full), *k};
                        if (!local || ahit_less(h, *local, opts.objective)) local = std::move(h);
                    }
                }
#pragma omp critical(qcs_ancilla_merge)
                if (local && (!found || ahit_less(*local, *found, opts.objective))) found = std::move(local);
            }
        }
        if (found && (!best || ahit_less(*found, *best, opts.objective))) best = std::move(found);
        if (best && (opts.objective == Objective::Depth || best->t_depth == 0)) break;
    }
    if (best) return finish(*best);
    SearchResult r;
    r.proof_bound = max_depth;
    return r;
}

}  // namespace qcs
