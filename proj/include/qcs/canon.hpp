#pragma once

// Canonical class representatives under qubit relabeling and inversion, modulo global phase.
//
// The phase is fixed with the reference-element trick: multiply by the conjugate of
// the first nonzero entry (row-major). The result stays in the ring but is not
// unit-norm; all comparisons happen on these scaled matrices.

#include <optional>
#include <vector>

#include "qcs/gates.hpp"
#include "qcs/matrix.hpp"

namespace qcs {

/// Maps a unitary U to its representative: multiplier * permute(inverted ? U^dagger : U, perm).
/// `multiplier` is the conjugated reference element; it carries the global phase and a real scale.
struct ClassTransform {
    QubitPermutation perm;
    bool inverted = false;
    RingScalar multiplier = RingScalar::one();
};

RingMatrix phase_normalize(const RingMatrix& u);

/// Lex-minimum of the 2 n! phase-normalized variants, first minimum in the fixed
/// (non-inverted first, permutations lexicographic) order.
std::pair<RingMatrix, ClassTransform> canonical_rep(const RingMatrix& u);

/// Relabel then (if inverted) invert; the result implements the representative up to phase.
Circuit apply_transform(const Circuit& c, const ClassTransform& t);

/// Appends j (mod 8) copies of (H P^dagger)^3 on wire 0; each copy multiplies by w^-1.
/// If evaluate(c) = w^j U, the returned circuit implements U exactly.
Circuit exact_phase_fix(const Circuit& c, int j);

/// Reusable canonicalizer for one width. Thread-safe for concurrent const use.
class Canonicalizer {
public:
    /// `with_symmetry == false` gives phase-only canonicalization (full-mode databases).
    Canonicalizer(int n_qubits, bool with_symmetry = true);

    struct Variant {
        QubitPermutation perm;
        bool inverted = false;
        /// Source index in U for each row-major position of the variant.
        std::vector<std::uint32_t> source;
    };

    int n_qubits() const noexcept { return n_; }
    bool with_symmetry() const noexcept { return with_symmetry_; }
    const std::vector<Variant>& variants() const noexcept { return variants_; }

    /// Writes the canonical matrix into `out` and returns the winning variant index.
    int canonicalize_into(const RingMatrix& u, RingMatrix& out) const;
    Key128 key(const RingMatrix& u, int* variant = nullptr) const;
    std::pair<RingMatrix, ClassTransform> canonical_rep(const RingMatrix& u) const;
    ClassTransform transform_of(const RingMatrix& u, int variant) const;

private:
    int n_;
    bool with_symmetry_;
    std::vector<Variant> variants_;
};

/// Shared canonicalizer per (n, symmetry); built on first use.
const Canonicalizer& canonicalizer(int n_qubits, bool with_symmetry = true);

}  // namespace qcs
