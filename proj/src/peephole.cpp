#include <algorithm>

#include "qcs/search.hpp"

namespace qcs {

namespace {

// Wire subsets of size 1..k in increasing size, then lexicographic.
std::vector<std::vector<int>> wire_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    for (int size = 1; size <= std::min(n, k); ++size) {
        std::vector<int> pick(static_cast<std::size_t>(size));
        std::vector<bool> sel(static_cast<std::size_t>(n), false);
        std::fill(sel.begin(), sel.begin() + size, true);
        do {
            pick.clear();
            for (int w = 0; w < n; ++w)
                if (sel[static_cast<std::size_t>(w)]) pick.push_back(w);
            out.push_back(pick);
        } while (std::prev_permutation(sel.begin(), sel.end()));
    }
    return out;
}

// The gates of layers [s, s+len) on `wires`, or nothing if a CNOT leaves the subset.
std::optional<Circuit> extract_window(const Circuit& c, int s, int len, const std::vector<int>& wires) {
    std::vector<int> local(static_cast<std::size_t>(c.n_qubits()), -1);
    for (std::size_t j = 0; j < wires.size(); ++j) local[static_cast<std::size_t>(wires[j])] = static_cast<int>(j);
    Circuit out(static_cast<int>(wires.size()));
    for (int d = s; d < s + len; ++d) {
        const Layer& l = c.layers()[static_cast<std::size_t>(d)];
        Layer nl;
        for (int w : wires) {
            const GateCode g = l.code(w);
            const int j = local[static_cast<std::size_t>(w)];
            if (g == GateCode::CnotControl || g == GateCode::CnotTarget) {
                const int pj = local[static_cast<std::size_t>(l.partner(w))];
                if (pj < 0) return std::nullopt;
                if (g == GateCode::CnotControl) nl.set_cnot(j, pj);
            } else {
                nl.set_single(j, g);
            }
        }
        out.push_back(nl);
    }
    return out;
}

}  // namespace

PeepholeResult peephole(const Circuit& input, const std::vector<const CircuitDatabase*>& dbs,
                        const PeepholeOptions& opts) {
    PeepholeResult res{input, 0, 0};
    Circuit& c = res.circuit;
    const int n = c.n_qubits();
    const auto subsets = wire_subsets(n, opts.max_width);

    for (int pass = 0; pass < opts.max_passes; ++pass) {
        bool changed = false;
        for (int s = 0; s < c.depth(); ++s) {
            for (const auto& wires : subsets) {
                const std::size_t width = wires.size();
                if (width >= dbs.size() || !dbs[width]) continue;
                const CircuitDatabase& db = *dbs[width];
                const int bound_cap = opts.max_depth > 0 ? opts.max_depth : 2 * db.max_depth();
                for (int len = std::min(opts.window, c.depth() - s); len >= 1; --len) {
                    auto win = extract_window(c, s, len, wires);
                    if (!win) continue;
                    const Circuit packed = compact(*win);
                    const int old_gc = gate_count(packed);
                    if (old_gc == 0) continue;
                    const int bound = std::min(packed.depth(), bound_cap);
                    SearchResult r = mitm_search(evaluate(packed), db, bound);
                    if (!r.found) continue;
                    const int new_gc = gate_count(r.circuit);
                    if (std::pair{r.depth, new_gc} >= std::pair{packed.depth(), old_gc}) continue;

                    // Splice: clear the subset's slots in the window, then lay the replacement in from s.
                    for (int d = s; d < s + len; ++d)
                        for (int w : wires) c.layers()[static_cast<std::size_t>(d)].clear(w);
                    for (int d = 0; d < r.depth; ++d) {
                        const Layer& src = r.circuit.layers()[static_cast<std::size_t>(d)];
                        Layer& dst = c.layers()[static_cast<std::size_t>(s + d)];
                        for (std::size_t j = 0; j < width; ++j) {
                            const GateCode g = src.code(static_cast<int>(j));
                            if (g == GateCode::CnotControl)
                                dst.set_cnot(wires[j], wires[static_cast<std::size_t>(src.partner(static_cast<int>(j)))]);
                            else if (g != GateCode::CnotTarget)
                                dst.set_single(wires[j], g);
                        }
                    }
                    res.phase_exponent = (res.phase_exponent + r.phase_exponent) % 8;
                    ++res.replacements;
                    changed = true;
                    std::erase_if(c.layers(), [](const Layer& l) { return l.is_identity(); });
                    break;
                }
                if (s >= c.depth()) break;
            }
        }
        const Circuit packed = compact(c);
        if (packed.depth() < c.depth()) {
            c = packed;
            changed = true;
        }
        if (!changed) break;
    }
    return res;
}

}  // namespace qcs
