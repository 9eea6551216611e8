#include "qcs/phasepoly.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace qcs {

Gf2Matrix Gf2Matrix::identity(int n) {
    Gf2Matrix m{n, {}};
    for (int i = 0; i < n; ++i) m.rows.push_back(LinearFn{1} << i);
    return m;
}

LinearFn Gf2Matrix::apply(LinearFn x) const {
    LinearFn out = 0;
    for (int i = 0; i < n; ++i)
        if (std::popcount(rows[static_cast<std::size_t>(i)] & x) & 1) out |= LinearFn{1} << i;
    return out;
}

Gf2Matrix gf2_mul(const Gf2Matrix& a, const Gf2Matrix& b) {
    // Row i of a*b is the combination of b's rows selected by a's row i.
    Gf2Matrix out{a.n, std::vector<LinearFn>(static_cast<std::size_t>(a.n), 0)};
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            if (a.rows[static_cast<std::size_t>(i)] >> j & 1U) out.rows[static_cast<std::size_t>(i)] ^= b.rows[static_cast<std::size_t>(j)];
    return out;
}

namespace {

// Row operations reducing `m` to the identity, as (source, target) pairs: row[target] ^= row[source].
std::optional<std::vector<std::pair<int, int>>> eliminate(Gf2Matrix m) {
    std::vector<std::pair<int, int>> ops;
    auto add = [&](int src, int dst) {
        m.rows[static_cast<std::size_t>(dst)] ^= m.rows[static_cast<std::size_t>(src)];
        ops.emplace_back(src, dst);
    };
    for (int j = 0; j < m.n; ++j) {
        int p = j;
        while (p < m.n && !(m.rows[static_cast<std::size_t>(p)] >> j & 1U)) ++p;
        if (p == m.n) return std::nullopt;
        if (p != j) add(p, j);
        for (int i = 0; i < m.n; ++i)
            if (i != j && (m.rows[static_cast<std::size_t>(i)] >> j & 1U)) add(j, i);
    }
    return ops;
}

}  // namespace

std::optional<Gf2Matrix> gf2_inverse(const Gf2Matrix& a) {
    auto ops = eliminate(a);
    if (!ops) return std::nullopt;
    Gf2Matrix inv = Gf2Matrix::identity(a.n);
    for (auto [src, dst] : *ops) inv.rows[static_cast<std::size_t>(dst)] ^= inv.rows[static_cast<std::size_t>(src)];
    return inv;
}

int gf2_rank(const std::vector<LinearFn>& v) {
    std::vector<LinearFn> basis;  // reduced, distinct leading bits
    for (LinearFn x : v) {
        for (LinearFn b : basis) x = std::min(x, x ^ b);
        if (x) basis.push_back(x);
    }
    return static_cast<int>(basis.size());
}

PhasePolynomial extract(const Circuit& c) {
    PhasePolynomial p{c.n_qubits(), {}, Gf2Matrix::identity(c.n_qubits())};
    for (const Gate& g : c.gates()) {
        auto& rows = p.g.rows;
        if (g.kind == GateKind::CNOT)
            rows[static_cast<std::size_t>(g.target)] ^= rows[static_cast<std::size_t>(g.wire)];
        else if (g.kind == GateKind::T)
            p.terms.push_back(rows[static_cast<std::size_t>(g.wire)]);
        else
            throw std::invalid_argument("phase polynomials need a circuit over {CNOT, T}; found " +
                                        std::string(gate_kind_name(g.kind)));
    }
    return p;
}

std::vector<std::vector<LinearFn>> partition(const std::vector<LinearFn>& terms, int m, int n) {
    std::map<LinearFn, int> mult;
    for (LinearFn f : terms) {
        if (f == 0) throw std::invalid_argument("zero functional among phase terms");
        if (n < 32 && (f >> n) != 0) throw std::invalid_argument("phase term wider than the register");
        ++mult[f];
    }
    std::vector<std::pair<LinearFn, int>> order(mult.begin(), mult.end());
    std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.second > y.second; });

    std::vector<std::vector<LinearFn>> parts;
    std::vector<LinearFn> cur;
    for (const auto& [f, k] : order)
        for (int i = 0; i < k; ++i) {
            cur.push_back(f);
            if (static_cast<int>(cur.size()) > m + gf2_rank(cur)) {
                cur.pop_back();
                parts.push_back(std::move(cur));
                cur = {f};
            }
        }
    if (!cur.empty()) parts.push_back(std::move(cur));
    return parts;
}

namespace {

void emit_synth(const Gf2Matrix& l, std::vector<std::vector<Gate>>& blocks) {
    auto ops = eliminate(l);
    if (!ops) throw std::invalid_argument("cnot_synth needs an invertible matrix");
    for (auto it = ops->rbegin(); it != ops->rend(); ++it) blocks.push_back({Gate{GateKind::CNOT, it->first, it->second}});
}

// Gate sequence multiplying the phase by w^k on one wire.
std::vector<GateKind> phase_gates(int k) {
    switch (((k % 8) + 8) % 8) {
        case 1: return {GateKind::T};
        case 2: return {GateKind::P};
        case 3: return {GateKind::P, GateKind::T};
        case 4: return {GateKind::P, GateKind::P};
        case 5: return {GateKind::PDG, GateKind::TDG};
        case 6: return {GateKind::PDG};
        case 7: return {GateKind::TDG};
        default: return {};
    }
}

}  // namespace

Circuit cnot_synth(const Gf2Matrix& l) {
    std::vector<std::vector<Gate>> blocks;
    emit_synth(l, blocks);
    return schedule_blocks(l.n, blocks);
}

Circuit parallelize(const Circuit& c, int m, const ParallelizeOptions& opts) {
    if (m < 0) throw std::invalid_argument("negative ancilla count");
    const int n = c.n_qubits();
    const int total = n + m;
    if (total > kMaxQubits) throw std::invalid_argument("too many wires for the layer encoding");
    const PhasePolynomial pp = extract(c);

    // Terms with their phase weight; without merging every T is its own term of weight 1.
    std::vector<LinearFn> terms;
    std::map<LinearFn, int> weight;
    if (opts.merge_duplicates) {
        std::map<LinearFn, int> mult;
        for (LinearFn f : pp.terms) ++mult[f];
        for (const auto& [f, k] : mult)
            if (k % 8) {
                terms.push_back(f);
                weight[f] = k % 8;
            }
    } else {
        terms = pp.terms;
    }
    const auto parts = partition(terms, m, n);

    std::vector<std::vector<Gate>> blocks;
    Gf2Matrix state = Gf2Matrix::identity(n);  // data wire functionals; ancillas hold 0 between parts
    for (const auto& part : parts) {
        // Independent members go on the data wires (completed to a basis), the rest into ancillas.
        std::vector<LinearFn> basis, dependent;
        for (LinearFn f : part) {
            std::vector<LinearFn> trial = basis;
            trial.push_back(f);
            if (gf2_rank(trial) > static_cast<int>(basis.size()))
                basis.push_back(f);
            else
                dependent.push_back(f);
        }
        Gf2Matrix target{n, basis};
        for (int j = 0; j < n && static_cast<int>(target.rows.size()) < n; ++j) {
            std::vector<LinearFn> trial = target.rows;
            trial.push_back(LinearFn{1} << j);
            if (gf2_rank(trial) > static_cast<int>(target.rows.size())) target.rows.push_back(LinearFn{1} << j);
        }
        emit_synth(gf2_mul(target, *gf2_inverse(state)), blocks);
        state = target;

        // Copy each dependent functional into its ancilla as a sum of data wires.
        const Gf2Matrix inv = *gf2_inverse(state);
        std::vector<std::vector<Gate>> copy;
        for (std::size_t a = 0; a < dependent.size(); ++a) {
            const LinearFn coords = [&] {
                // coordinates c with f = sum_i c_i state.rows[i]: c = f * state^-1 (as a row vector).
                LinearFn out = 0;
                for (int i = 0; i < n; ++i)
                    if (dependent[a] >> i & 1U) out ^= inv.rows[static_cast<std::size_t>(i)];
                return out;
            }();
            for (int i = 0; i < n; ++i)
                if (coords >> i & 1U) copy.push_back({Gate{GateKind::CNOT, i, n + static_cast<int>(a)}});
        }
        blocks.insert(blocks.end(), copy.begin(), copy.end());

        std::vector<Gate> t_block;
        std::vector<std::vector<Gate>> extra;
        auto place = [&](int wire, LinearFn f) {
            const int w = opts.merge_duplicates ? weight.at(f) : 1;
            const auto seq = phase_gates(w);
            if (w % 2) t_block.push_back({seq.back(), wire, -1});
            for (std::size_t i = 0; i + (w % 2 ? 1 : 0) < seq.size(); ++i) extra.push_back({Gate{seq[i], wire, -1}});
        };
        for (std::size_t i = 0; i < basis.size(); ++i) place(static_cast<int>(i), basis[i]);
        for (std::size_t a = 0; a < dependent.size(); ++a) place(n + static_cast<int>(a), dependent[a]);
        if (!t_block.empty()) blocks.push_back(std::move(t_block));
        blocks.insert(blocks.end(), extra.begin(), extra.end());

        blocks.insert(blocks.end(), copy.rbegin(), copy.rend());
    }
    emit_synth(gf2_mul(pp.g, *gf2_inverse(state)), blocks);
    return schedule_blocks(total, blocks, m);
}

Circuit parallelize_regions(const Circuit& c, int m, const ParallelizeOptions& opts) {
    const int n = c.n_qubits();
    std::vector<std::vector<Gate>> blocks;
    std::vector<Gate> region;
    auto flush = [&] {
        if (region.empty()) return;
        const Circuit sub = parallelize(schedule(n, region), m, opts);
        for (const auto& l : sub.layers()) {
            // Keep each parallelized T layer together.
            std::vector<Gate> t_layer;
            for (const Gate& g : Circuit(n + m, {l}, m).gates()) {
                if (g.kind == GateKind::T || g.kind == GateKind::TDG)
                    t_layer.push_back(g);
                else
                    blocks.push_back({g});
            }
            if (!t_layer.empty()) blocks.push_back(std::move(t_layer));
        }
        region.clear();
    };
    for (const Gate& g : c.gates()) {
        if (g.kind == GateKind::CNOT || g.kind == GateKind::T) {
            region.push_back(g);
        } else {
            flush();
            blocks.push_back({g});
        }
    }
    flush();
    return schedule_blocks(n + m, blocks, m + c.n_ancillas());
}

}  // namespace qcs
