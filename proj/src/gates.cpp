#include "qcs/gates.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcs {

const GateSet& gate_set(GateSetId id) {
    static const GateSet clifford_t{GateSetId::CliffordT,
                                    "clifford+t",
                                    {GateCode::I, GateCode::H, GateCode::P, GateCode::PDG, GateCode::T, GateCode::TDG},
                                    true};
    static const GateSet clifford{
        GateSetId::CliffordOnly, "clifford", {GateCode::I, GateCode::H, GateCode::P, GateCode::PDG}, true};
    switch (id) {
        case GateSetId::CliffordT: return clifford_t;
        case GateSetId::CliffordOnly: return clifford;
    }
    throw std::invalid_argument("unknown gate set");
}

GateCode inverse(GateCode g) noexcept {
    switch (g) {
        case GateCode::P: return GateCode::PDG;
        case GateCode::PDG: return GateCode::P;
        case GateCode::T: return GateCode::TDG;
        case GateCode::TDG: return GateCode::T;
        default: return g;
    }
}

bool is_t_like(GateCode g) noexcept { return g == GateCode::T || g == GateCode::TDG; }

std::string_view gate_name(GateCode g) noexcept {
    switch (g) {
        case GateCode::I: return "I";
        case GateCode::H: return "H";
        case GateCode::P: return "P";
        case GateCode::PDG: return "PDG";
        case GateCode::T: return "T";
        case GateCode::TDG: return "TDG";
        case GateCode::CnotControl: return "C";
        case GateCode::CnotTarget: return "X";
    }
    return "?";
}

std::string_view gate_kind_name(GateKind k) noexcept {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::P: return "P";
        case GateKind::PDG: return "PDG";
        case GateKind::T: return "T";
        case GateKind::TDG: return "TDG";
        case GateKind::CNOT: return "CNOT";
    }
    return "?";
}

namespace {

// Exponent of w on the |1> diagonal entry of a diagonal gate.
int diagonal_phase(GateCode g) noexcept {
    switch (g) {
        case GateCode::P: return 2;
        case GateCode::PDG: return 6;
        case GateCode::T: return 1;
        case GateCode::TDG: return 7;
        default: return 0;
    }
}

GateCode code_of(GateKind k) {
    switch (k) {
        case GateKind::H: return GateCode::H;
        case GateKind::P: return GateCode::P;
        case GateKind::PDG: return GateCode::PDG;
        case GateKind::T: return GateCode::T;
        case GateKind::TDG: return GateCode::TDG;
        case GateKind::CNOT: break;
    }
    throw std::invalid_argument("CNOT has no single-wire code");
}

GateKind kind_of(GateCode g) {
    switch (g) {
        case GateCode::H: return GateKind::H;
        case GateCode::P: return GateKind::P;
        case GateCode::PDG: return GateKind::PDG;
        case GateCode::T: return GateKind::T;
        case GateCode::TDG: return GateKind::TDG;
        default: break;
    }
    throw std::invalid_argument("not a single-wire gate");
}

}  // namespace

RingMatrix single_gate_matrix(GateCode g) {
    RingMatrix m = RingMatrix::identity(1);
    if (g == GateCode::H) {
        const auto s = RingScalar::inv_sqrt2();
        m(0, 0) = s;
        m(0, 1) = s;
        m(1, 0) = s;
        m(1, 1) = -s;
    } else if (g != GateCode::I) {
        if (g == GateCode::CnotControl || g == GateCode::CnotTarget) throw std::invalid_argument("not a single gate");
        m(1, 1) = RingScalar::omega(diagonal_phase(g));
    }
    return m;
}

// ---------------------------------------------------------------- Layer

void Layer::set_cnot(int control, int target) {
    if (control == target) throw std::invalid_argument("CNOT control equals target");
    slot[static_cast<std::size_t>(control)] =
        static_cast<std::uint8_t>(static_cast<std::uint8_t>(GateCode::CnotControl) | ((target + 1) << 4));
    slot[static_cast<std::size_t>(target)] =
        static_cast<std::uint8_t>(static_cast<std::uint8_t>(GateCode::CnotTarget) | ((control + 1) << 4));
}

bool Layer::is_identity() const noexcept {
    return std::all_of(slot.begin(), slot.end(), [](std::uint8_t b) { return b == 0; });
}

bool Layer::has_t() const noexcept {
    return std::any_of(slot.begin(), slot.end(), [](std::uint8_t b) { return is_t_like(static_cast<GateCode>(b & 0x0F)); });
}

int Layer::gate_count() const noexcept {
    int n = 0;
    for (std::uint8_t b : slot) {
        const auto g = static_cast<GateCode>(b & 0x0F);
        if (g != GateCode::I && g != GateCode::CnotTarget) ++n;
    }
    return n;
}

bool Layer::valid(int n) const noexcept {
    for (int w = 0; w < kMaxQubits; ++w) {
        const std::uint8_t b = slot[static_cast<std::size_t>(w)];
        const auto g = static_cast<GateCode>(b & 0x0F);
        const int hi = b >> 4;
        if (w >= n) {
            if (b != 0) return false;
            continue;
        }
        if (static_cast<int>(g) > 7) return false;
        if (g == GateCode::CnotControl || g == GateCode::CnotTarget) {
            const int p = hi - 1;
            if (p < 0 || p >= n || p == w) return false;
            const auto want = g == GateCode::CnotControl ? GateCode::CnotTarget : GateCode::CnotControl;
            if (code(p) != want || partner(p) != w) return false;
        } else if (hi != 0) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- Circuit

Circuit::Circuit(int n_qubits, int n_ancillas) : n_qubits_(n_qubits), n_ancillas_(n_ancillas) {
    if (n_qubits < 0 || n_qubits > kMaxQubits) throw std::invalid_argument("unsupported qubit count");
    if (n_ancillas < 0 || n_ancillas > n_qubits) throw std::invalid_argument("ancilla count out of range");
}

Circuit::Circuit(int n_qubits, std::vector<Layer> layers, int n_ancillas) : Circuit(n_qubits, n_ancillas) {
    for (const auto& l : layers)
        if (!l.valid(n_qubits)) throw std::invalid_argument("malformed layer");
    layers_ = std::move(layers);
}

void Circuit::append(const Circuit& other) {
    if (other.n_qubits_ != n_qubits_) throw std::invalid_argument("circuit width mismatch");
    layers_.insert(layers_.end(), other.layers_.begin(), other.layers_.end());
}

std::vector<Gate> Circuit::gates() const {
    std::vector<Gate> out;
    for (const auto& l : layers_) {
        for (int w = 0; w < n_qubits_; ++w) {
            const GateCode g = l.code(w);
            if (g == GateCode::I || g == GateCode::CnotTarget) continue;
            if (g == GateCode::CnotControl)
                out.push_back({GateKind::CNOT, w, l.partner(w)});
            else
                out.push_back({kind_of(g), w, -1});
        }
    }
    return out;
}

// ---------------------------------------------------------------- enumeration

namespace {

void enumerate_rec(int n, const GateSet& gs, Layer& cur, int q, std::vector<Layer>& out) {
    while (q < n && cur.wire_busy(q)) ++q;
    if (q == n) {
        out.push_back(cur);
        return;
    }
    for (GateCode g : gs.singles) {
        cur.set_single(q, g);
        // Identity is encoded as 0, so the wire reads as free; mark progress by advancing explicitly.
        enumerate_rec(n, gs, cur, q + 1, out);
        cur.clear(q);
    }
    if (!gs.has_cnot) return;
    for (int r = q + 1; r < n; ++r) {
        if (cur.wire_busy(r)) continue;
        cur.set_cnot(q, r);
        enumerate_rec(n, gs, cur, q + 1, out);
        cur.clear(q);
        cur.clear(r);
        cur.set_cnot(r, q);
        enumerate_rec(n, gs, cur, q + 1, out);
        cur.clear(q);
        cur.clear(r);
    }
}

}  // namespace

std::vector<Layer> enumerate_layers(int n, const GateSet& gs) {
    if (n < 1) throw std::invalid_argument("layer enumeration needs at least one qubit");
    if (n > kMaxQubits) throw std::invalid_argument("qubit count too large for the layer encoding");
    std::vector<Layer> out;
    Layer cur;
    enumerate_rec(n, gs, cur, 0, out);
    return out;
}

std::size_t layer_count(int n, const GateSet& gs) {
    // a(n) = k a(n-1) + 2 (n-1) a(n-2): the lowest wire either takes a single gate
    // or pairs (in either orientation) with one of the n-1 others.
    const std::size_t k = gs.singles.size();
    std::size_t prev2 = 1, prev1 = k;
    if (n == 0) return 1;
    for (int m = 2; m <= n; ++m) {
        const std::size_t cur = k * prev1 + (gs.has_cnot ? 2 * static_cast<std::size_t>(m - 1) * prev2 : 0);
        prev2 = prev1;
        prev1 = cur;
    }
    return prev1;
}

// ---------------------------------------------------------------- layer action

namespace {

enum class Side { Left, Right };

template <Side S>
void apply_single(RingMatrix& m, int w, GateCode g) {
    if (g == GateCode::I) return;
    const std::size_t d = m.dim(), bit = std::size_t{1} << w;
    if (g == GateCode::H) {
        for (std::size_t i0 = 0; i0 < d; ++i0) {
            if (i0 & bit) continue;
            const std::size_t i1 = i0 | bit;
            for (std::size_t k = 0; k < d; ++k) {
                RingScalar& x = S == Side::Left ? m(i0, k) : m(k, i0);
                RingScalar& y = S == Side::Left ? m(i1, k) : m(k, i1);
                const RingScalar s = (x + y).div_sqrt2();
                const RingScalar t = (x - y).div_sqrt2();
                x = s;
                y = t;
            }
        }
        return;
    }
    const int ph = diagonal_phase(g);
    for (std::size_t i1 = 0; i1 < d; ++i1) {
        if (!(i1 & bit)) continue;
        for (std::size_t k = 0; k < d; ++k) {
            RingScalar& x = S == Side::Left ? m(i1, k) : m(k, i1);
            x = x.times_omega(ph);
        }
    }
}

template <Side S>
void apply_cnot(RingMatrix& m, int control, int target) {
    const std::size_t d = m.dim(), cb = std::size_t{1} << control, tb = std::size_t{1} << target;
    for (std::size_t i = 0; i < d; ++i) {
        if (!(i & cb) || (i & tb)) continue;
        const std::size_t j = i | tb;
        for (std::size_t k = 0; k < d; ++k) {
            if constexpr (S == Side::Left)
                std::swap(m(i, k), m(j, k));
            else
                std::swap(m(k, i), m(k, j));
        }
    }
}

template <Side S>
void apply_layer(RingMatrix& m, const Layer& l) {
    const int n = m.n_qubits();
    for (int w = 0; w < n; ++w) {
        const GateCode g = l.code(w);
        if (g == GateCode::CnotControl)
            apply_cnot<S>(m, w, l.partner(w));
        else if (g != GateCode::CnotTarget)
            apply_single<S>(m, w, g);
    }
}

}  // namespace

void apply_layer_left(RingMatrix& m, const Layer& l) { apply_layer<Side::Left>(m, l); }
void apply_layer_right(RingMatrix& m, const Layer& l) { apply_layer<Side::Right>(m, l); }

RingMatrix layer_matrix(const Layer& l, int n) {
    RingMatrix m = RingMatrix::identity(n);
    apply_layer_left(m, l);
    return m;
}

RingMatrix evaluate(const Circuit& c) {
    RingMatrix m = RingMatrix::identity(c.n_qubits());
    for (const auto& l : c.layers()) apply_layer_left(m, l);
    return m;
}

// ---------------------------------------------------------------- transforms

Circuit invert(const Circuit& c) {
    Circuit out(c.n_qubits(), c.n_ancillas());
    for (auto it = c.layers().rbegin(); it != c.layers().rend(); ++it) {
        Layer l = *it;
        for (int w = 0; w < c.n_qubits(); ++w) {
            const GateCode g = l.code(w);
            if (g != GateCode::CnotControl && g != GateCode::CnotTarget) l.set_single(w, inverse(g));
        }
        out.push_back(l);
    }
    return out;
}

Layer relabel(const Layer& l, const QubitPermutation& perm, int n) {
    Layer out;
    for (int w = 0; w < n; ++w) {
        const GateCode g = l.code(w);
        if (g == GateCode::CnotControl)
            out.set_cnot(perm[w], perm[l.partner(w)]);
        else if (g != GateCode::CnotTarget)
            out.set_single(perm[w], g);
    }
    return out;
}

Circuit relabel(const Circuit& c, const QubitPermutation& perm) {
    if (perm.size() != c.n_qubits()) throw std::invalid_argument("permutation size mismatch");
    Circuit out(c.n_qubits(), c.n_ancillas());
    out.layers().reserve(c.layers().size());
    for (const auto& l : c.layers()) out.push_back(relabel(l, perm, c.n_qubits()));
    return out;
}

// ---------------------------------------------------------------- scheduling

namespace {

void check_gate(int n, const Gate& g) {
    if (g.wire < 0 || g.wire >= n) throw std::out_of_range("gate wire out of range");
    if (g.kind == GateKind::CNOT) {
        if (g.target < 0 || g.target >= n) throw std::out_of_range("CNOT target out of range");
        if (g.target == g.wire) throw std::invalid_argument("CNOT control equals target");
    }
}

}  // namespace

Circuit schedule_blocks(int n_qubits, std::span<const std::vector<Gate>> blocks, int n_ancillas) {
    Circuit out(n_qubits, n_ancillas);
    std::vector<int> ready(static_cast<std::size_t>(n_qubits), 0);
    auto& layers = out.layers();
    for (const auto& block : blocks) {
        int at = 0;
        std::vector<bool> used(static_cast<std::size_t>(n_qubits), false);
        for (const Gate& g : block) {
            check_gate(n_qubits, g);
            const int span = g.kind == GateKind::CNOT ? 2 : 1;
            for (int k = 0; k < span; ++k) {
                const auto w = static_cast<std::size_t>(k == 0 ? g.wire : g.target);
                if (used[w]) throw std::invalid_argument("gates in a block must act on disjoint wires");
                used[w] = true;
                at = std::max(at, ready[w]);
            }
        }
        if (block.empty()) continue;
        if (static_cast<std::size_t>(at) >= layers.size()) layers.resize(static_cast<std::size_t>(at) + 1);
        Layer& l = layers[static_cast<std::size_t>(at)];
        for (const Gate& g : block) {
            if (g.kind == GateKind::CNOT) {
                l.set_cnot(g.wire, g.target);
                ready[static_cast<std::size_t>(g.target)] = at + 1;
            } else {
                l.set_single(g.wire, code_of(g.kind));
            }
            ready[static_cast<std::size_t>(g.wire)] = at + 1;
        }
    }
    return out;
}

Circuit schedule(int n_qubits, std::span<const Gate> gates, int n_ancillas) {
    std::vector<std::vector<Gate>> blocks;
    blocks.reserve(gates.size());
    for (const Gate& g : gates) blocks.push_back({g});
    return schedule_blocks(n_qubits, blocks, n_ancillas);
}

Circuit compact(const Circuit& c) {
    const auto gs = c.gates();
    return schedule(c.n_qubits(), gs, c.n_ancillas());
}

// ---------------------------------------------------------------- metrics

int t_depth(const Circuit& c) {
    return static_cast<int>(std::count_if(c.layers().begin(), c.layers().end(), [](const Layer& l) { return l.has_t(); }));
}

int gate_count(const Circuit& c) {
    int n = 0;
    for (const auto& l : c.layers()) n += l.gate_count();
    return n;
}

CostVector cost_vector(const Circuit& c) {
    CostVector v;
    for (const auto& l : c.layers())
        for (int w = 0; w < c.n_qubits(); ++w) switch (l.code(w)) {
                case GateCode::H: ++v.x_h; break;
                case GateCode::P:
                case GateCode::PDG: ++v.x_p; break;
                case GateCode::T:
                case GateCode::TDG: ++v.x_t; break;
                case GateCode::CnotControl: ++v.x_c; break;
                default: break;
            }
    return v;
}

std::strong_ordering encoding_cmp(const Circuit& x, const Circuit& y) {
    const auto& a = x.layers();
    const auto& b = y.layers();
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = a[i].slot <=> b[i].slot; c != 0) return c;
    return a.size() <=> b.size();
}

}  // namespace qcs
