#pragma once

#include <complex>
#include <random>
#include <vector>

#include "qcs/db.hpp"
#include "qcs/gates.hpp"
#include "qcs/matrix.hpp"

namespace qcs::test {

using Complex = std::complex<double>;
using CMatrix = std::vector<std::vector<Complex>>;

inline RingScalar random_scalar(std::mt19937_64& rng, int coeff = 20, int max_sde = 6) {
    std::uniform_int_distribution<int> c(-coeff, coeff), k(0, max_sde);
    return RingScalar::make(c(rng), c(rng), c(rng), c(rng), k(rng));
}

inline Circuit random_circuit(std::mt19937_64& rng, int n, int depth, GateSetId gs = GateSetId::CliffordT) {
    static thread_local std::vector<std::vector<Layer>> cache(2 * (kMaxQubits + 1));
    auto& layers = cache[static_cast<std::size_t>(2 * n + static_cast<int>(gs))];
    if (layers.empty()) layers = enumerate_layers(n, gate_set(gs));
    std::uniform_int_distribution<std::size_t> pick(0, layers.size() - 1);
    Circuit c(n);
    for (int d = 0; d < depth; ++d) c.push_back(layers[pick(rng)]);
    return c;
}

inline CMatrix to_complex(const RingMatrix& m) {
    CMatrix out(m.dim(), std::vector<Complex>(m.dim()));
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c) out[r][c] = m(r, c).to_complex();
    return out;
}

inline double max_diff(const CMatrix& a, const CMatrix& b) {
    double d = 0;
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < a.size(); ++c) d = std::max(d, std::abs(a[r][c] - b[r][c]));
    return d;
}

/// Shared 2-qubit classed database to depth 5.
inline const CircuitDatabase& db2() {
    static const CircuitDatabase db = generate(2, GateSetId::CliffordT, 5, DbMode::Classed);
    return db;
}

}  // namespace qcs::test
