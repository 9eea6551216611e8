#pragma once

// Meet-in-the-middle synthesis engines.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qcs/db.hpp"

namespace qcs {

struct SearchResult {
    bool found = false;
    Circuit circuit;
    int depth = 0;
    int t_depth = 0;
    /// evaluate(circuit) = w^phase_exponent * target (on the ancilla-zero columns in ancilla mode).
    int phase_exponent = 0;
    /// When not found: no circuit of depth (or T-depth) <= proof_bound exists.
    int proof_bound = 0;
};

/// What "best" means among witnesses.
enum class Objective {
    /// Minimal depth, then gate count, then encoding.
    Depth,
    /// Minimal T-depth over every depth up to the bound, then depth, gate count, encoding.
    TDepth,
};

struct SearchOptions {
    int threads = 0;
    Objective objective = Objective::Depth;
};

/// Depth-optimal synthesis against a classed database.
SearchResult mitm_search(const RingMatrix& target, const CircuitDatabase& db, int max_depth,
                         const SearchOptions& opts = {});

// ---------------------------------------------------------------- T-depth engine

/// Clifford group up to phase, each element with a minimal-depth witness.
class CliffordSet {
public:
    CliffordSet() = default;
    explicit CliffordSet(int n) : n_(n) {}

    int n_qubits() const noexcept { return n_; }
    std::size_t size() const noexcept { return matrices_.size(); }
    /// Element i as a unitary; its global phase is whatever its witness produces.
    const RingMatrix& matrix(std::size_t i) const { return matrices_[i]; }
    const Circuit& witness(std::size_t i) const { return witnesses_[i]; }
    /// Index of the element equal to u up to phase.
    std::optional<std::size_t> find(const RingMatrix& u) const;
    std::optional<std::size_t> find_key(const Key128& phase_key) const;

    /// Returns false (and stores nothing) if the element is already present.
    bool add(RingMatrix u, const Key128& phase_key, Circuit witness);

private:
    int n_ = 0;
    std::vector<RingMatrix> matrices_;
    std::vector<Circuit> witnesses_;
    std::unordered_map<Key128, std::uint32_t, Key128Hash> index_;
};

struct CliffordOptions {
    /// Refuse to build more than this many elements.
    std::size_t max_elements = 2'000'000;
};

CliffordSet clifford_generate(int n, const CliffordOptions& opts = {});

/// Fingerprint of phase_normalize(u).
Key128 phase_key(const RingMatrix& u);

struct TDepthOptions {
    /// Cap on the materialized T-depth-1 set.
    std::size_t max_elements = 20'000'000;
};

/// Minimal T-depth synthesis. T-depths 0..3 are supported; asking for more throws ResourceError
/// if nothing was found by 3.
SearchResult mitm_search_tdepth(const RingMatrix& target, const CliffordSet& cs, int max_tdepth,
                                const TDepthOptions& opts = {});

// ---------------------------------------------------------------- ancilla search

/// Synthesis of an n-qubit target on n+m wires whose last m wires start and end in |0>.
/// `db` must be a full-mode database on n+m qubits.
SearchResult ancilla_search(const RingMatrix& target, int m, const CircuitDatabase& db, int max_depth,
                            const SearchOptions& opts = {});

/// True if evaluate(c) maps |0..0>|psi> to w^k |0..0> target|psi>; returns k.
std::optional<int> ancilla_phase(const Circuit& c, const RingMatrix& target);

// ---------------------------------------------------------------- peephole

struct PeepholeOptions {
    int window = 4;
    int max_width = 2;
    int max_passes = 8;
    /// Search bound per window; defaults to twice the deepest database.
    int max_depth = 0;
};

struct PeepholeResult {
    Circuit circuit;
    /// evaluate(circuit) = w^phase_exponent * evaluate(input).
    int phase_exponent = 0;
    int replacements = 0;
};

/// dbs[w] is a classed database on w qubits (entries may be null for unused widths).
PeepholeResult peephole(const Circuit& c, const std::vector<const CircuitDatabase*>& dbs,
                        const PeepholeOptions& opts = {});

// ---------------------------------------------------------------- cost accounting

struct ControlledCost {
    CostVector cost;
    long t_depth_bound = 0;
};

/// Gate cost A x of the controlled version of a circuit with cost x, and its T-depth bound.
ControlledCost controlled_cost(const CostVector& x);

}  // namespace qcs
