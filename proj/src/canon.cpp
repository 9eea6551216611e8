#include "qcs/canon.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace qcs {

RingMatrix phase_normalize(const RingMatrix& u) {
    auto e = u.entries();
    std::size_t i = 0;
    while (i < e.size() && e[i].is_zero()) ++i;
    if (i == e.size()) throw std::invalid_argument("cannot phase-normalize the zero matrix");
    return scale(u, e[i].conj());
}

Circuit apply_transform(const Circuit& c, const ClassTransform& t) {
    Circuit out = t.perm.is_identity() ? c : relabel(c, t.perm);
    return t.inverted ? invert(out) : out;
}

Circuit exact_phase_fix(const Circuit& c, int j) {
    j = ((j % 8) + 8) % 8;
    Circuit out = c;
    if (out.n_qubits() == 0) return out;
    for (int rep = 0; rep < j; ++rep)
        for (int k = 0; k < 3; ++k) {
            Layer h, pdg;
            h.set_single(0, GateCode::H);
            pdg.set_single(0, GateCode::PDG);
            out.push_back(pdg);
            out.push_back(h);
        }
    return out;
}

// ---------------------------------------------------------------- Canonicalizer

Canonicalizer::Canonicalizer(int n_qubits, bool with_symmetry) : n_(n_qubits), with_symmetry_(with_symmetry) {
    if (n_qubits < 1 || n_qubits > 8) throw std::invalid_argument("canonicalizer supports 1..8 qubits");
    const std::size_t d = std::size_t{1} << n_qubits;
    const auto perms = with_symmetry ? QubitPermutation::all(n_qubits)
                                     : std::vector<QubitPermutation>{QubitPermutation::identity(n_qubits)};
    for (bool inv : {false, true}) {
        if (inv && !with_symmetry) break;
        for (const auto& p : perms) {
            Variant v{p, inv, {}};
            // Variant(r, c) = X(pi^-1 r, pi^-1 c), X = inv ? U^dagger : U.
            const auto pinv = p.inverse();
            std::vector<std::size_t> back(d);
            for (std::size_t i = 0; i < d; ++i) back[i] = pinv.apply_to_index(i);
            v.source.resize(d * d);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) {
                    const std::size_t rr = back[r], cc = back[c];
                    v.source[r * d + c] = static_cast<std::uint32_t>(inv ? cc * d + rr : rr * d + cc);
                }
            variants_.push_back(std::move(v));
        }
    }
}

int Canonicalizer::canonicalize_into(const RingMatrix& u, RingMatrix& out) const {
    if (u.n_qubits() != n_) throw std::invalid_argument("canonicalizer width mismatch");
    auto src = u.entries();
    const std::size_t len = src.size();
    if (out.n_qubits() != n_ || out.size() != len) out = RingMatrix(n_);
    auto best = out.entries();

    auto entry = [&](const Variant& v, std::size_t i) -> RingScalar {
        const RingScalar& s = src[v.source[i]];
        return v.inverted ? s.conj() : s;
    };

    int best_idx = -1;
    for (std::size_t vi = 0; vi < variants_.size(); ++vi) {
        const Variant& v = variants_[vi];
        std::size_t ref = 0;
        while (ref < len && src[v.source[ref]].is_zero()) ++ref;
        if (ref == len) throw std::invalid_argument("cannot canonicalize the zero matrix");
        const RingScalar mult = entry(v, ref).conj();

        std::size_t i = 0;
        if (best_idx >= 0) {
            bool less = false;
            for (; i < len; ++i) {
                const RingScalar e = i < ref ? RingScalar{} : mult * entry(v, i);
                const auto c = e <=> best[i];
                if (c == 0) continue;
                if (c < 0) {
                    best[i] = e;
                    ++i;
                    less = true;
                }
                break;
            }
            if (!less) continue;
        }
        for (; i < len; ++i) best[i] = i < ref ? RingScalar{} : mult * entry(v, i);
        best_idx = static_cast<int>(vi);
    }
    return best_idx;
}

Key128 Canonicalizer::key(const RingMatrix& u, int* variant) const {
    thread_local RingMatrix scratch;
    const int v = canonicalize_into(u, scratch);
    if (variant) *variant = v;
    return fingerprint(scratch);
}

ClassTransform Canonicalizer::transform_of(const RingMatrix& u, int variant) const {
    const Variant& v = variants_.at(static_cast<std::size_t>(variant));
    auto src = u.entries();
    std::size_t ref = 0;
    while (ref < src.size() && src[v.source[ref]].is_zero()) ++ref;
    if (ref == src.size()) throw std::invalid_argument("cannot canonicalize the zero matrix");
    const RingScalar& s = src[v.source[ref]];
    return {v.perm, v.inverted, (v.inverted ? s.conj() : s).conj()};
}

std::pair<RingMatrix, ClassTransform> Canonicalizer::canonical_rep(const RingMatrix& u) const {
    RingMatrix out(n_);
    const int v = canonicalize_into(u, out);
    return {std::move(out), transform_of(u, v)};
}

const Canonicalizer& canonicalizer(int n_qubits, bool with_symmetry) {
    constexpr int kSlots = 8;
    static std::array<std::unique_ptr<Canonicalizer>, 2 * kSlots> table;
    static std::array<std::once_flag, 2 * kSlots> flags;
    if (n_qubits < 1 || n_qubits > kSlots) throw std::invalid_argument("canonicalizer supports 1..8 qubits");
    const std::size_t slot = static_cast<std::size_t>((n_qubits - 1) * 2 + (with_symmetry ? 1 : 0));
    std::call_once(flags[slot], [&] { table[slot] = std::make_unique<Canonicalizer>(n_qubits, with_symmetry); });
    return *table[slot];
}

std::pair<RingMatrix, ClassTransform> canonical_rep(const RingMatrix& u) {
    return canonicalizer(u.n_qubits()).canonical_rep(u);
}

}  // namespace qcs
