#pragma once

// Phase polynomials of {CNOT, T} circuits and ancilla-assisted T-parallelization.

#include <cstdint>
#include <optional>
#include <vector>

#include "qcs/gates.hpp"

namespace qcs {

/// Linear functional over GF(2): bit j set means x_j participates.
using LinearFn = std::uint32_t;

/// Square GF(2) matrix; row i is the functional held by wire i.
struct Gf2Matrix {
    int n = 0;
    std::vector<LinearFn> rows;

    static Gf2Matrix identity(int n);
    LinearFn apply(LinearFn x) const;
    friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;
};

Gf2Matrix gf2_mul(const Gf2Matrix& a, const Gf2Matrix& b);
std::optional<Gf2Matrix> gf2_inverse(const Gf2Matrix& a);
int gf2_rank(const std::vector<LinearFn>& v);

/// U|a> = w^(sum_i f_i(a)) |g(a)>.
struct PhasePolynomial {
    int n = 0;
    std::vector<LinearFn> terms;
    Gf2Matrix g;
};

/// Throws std::invalid_argument if the circuit has a gate other than CNOT or T.
PhasePolynomial extract(const Circuit& c);

/// Greedy partition with |part| <= m + rank(part); every part but the last has at least m+1 terms.
std::vector<std::vector<LinearFn>> partition(const std::vector<LinearFn>& terms, int m, int n);

/// CNOT circuit mapping wire states x to L x. Throws std::invalid_argument if L is singular.
Circuit cnot_synth(const Gf2Matrix& l);

struct ParallelizeOptions {
    /// Reduce repeated terms mod 8 and emit P/P^dagger/T^dagger for them; changes the output gate set.
    bool merge_duplicates = false;
};

/// Same unitary on the ancilla-zero subspace, on n + m wires, with T-depth at most ceil(k / (m+1)).
Circuit parallelize(const Circuit& c, int m, const ParallelizeOptions& opts = {});

/// Parallelizes every maximal {CNOT, T} stretch of an arbitrary circuit's gate list.
Circuit parallelize_regions(const Circuit& c, int m, const ParallelizeOptions& opts = {});

}  // namespace qcs
