#pragma once

// Straightforward serial versions of the hot kernels. They share no code paths with the
// fast implementations beyond scalar arithmetic, and serve as test oracles and bench baselines.

#include <map>
#include <set>

#include "qcs/db.hpp"

namespace qcs::reference {

/// Schoolbook product with per-entry ring arithmetic.
RingMatrix matmul(const RingMatrix& x, const RingMatrix& y);

/// Dense single-gate expansion of a layer, via tensor products and explicit CNOT permutations.
RingMatrix layer_matrix(const Layer& l, int n);

/// Product of dense layer matrices.
RingMatrix evaluate(const Circuit& c);

/// Materializes every variant and takes the lex-minimum.
RingMatrix canonical_rep(const RingMatrix& u, bool with_symmetry = true);
Key128 canonical_key(const RingMatrix& u, bool with_symmetry = true);

/// Serial generation over materialized matrices and reference canonicalization.
CircuitDatabase generate(int n, GateSetId gs, int max_depth, DbMode mode);

/// Pruning-free enumeration of every layer sequence up to max_depth; the canonical keys
/// whose shortest sequence has length d, for d = 1..max_depth.
std::vector<std::set<Key128>> brute_force_levels(int n, GateSetId gs, int max_depth);

}  // namespace qcs::reference
