#include "qcs/targets.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qcs/errors.hpp"

namespace qcs {

namespace {

using S = RingScalar;

RingMatrix single(S a, S b, S c, S d) { return RingMatrix(1, {a, b, c, d}); }

std::size_t bit(std::size_t x, int w) { return (x >> w) & 1U; }

// Three-wire reversible maps: a = wire 2, b = wire 1, c = wire 0.
std::size_t toffoli_map(std::size_t x) { return x ^ (bit(x, 2) & bit(x, 1)); }
std::size_t toffoli_neg_map(std::size_t x) { return x ^ (bit(x, 2) & (bit(x, 1) ^ 1U)); }
std::size_t peres_map(std::size_t x) {
    const std::size_t a = bit(x, 2), b = bit(x, 1), c = bit(x, 0);
    return (a << 2) | ((a ^ b) << 1) | (c ^ (a & b));
}
std::size_t qor_map(std::size_t x) { return x ^ (bit(x, 2) | bit(x, 1)); }
std::size_t fredkin_map(std::size_t x) {
    if (!bit(x, 2)) return x;
    return (x & 4U) | (bit(x, 0) << 1) | bit(x, 1);
}
// (a, b, cin, d) on wires 3..0 -> (a, a^b, a^b^cin, d ^ maj(a, b, cin)).
std::size_t adder_map(std::size_t x) {
    const std::size_t a = bit(x, 3), b = bit(x, 2), cin = bit(x, 1), d = bit(x, 0);
    const std::size_t carry = (a & b) | (a & cin) | (b & cin);
    return (a << 3) | ((a ^ b) << 2) | ((a ^ b ^ cin) << 1) | (d ^ carry);
}

RingMatrix qft3() {
    RingMatrix m(3);
    for (std::size_t j = 0; j < 8; ++j)
        for (std::size_t k = 0; k < 8; ++k) m(j, k) = S::omega(static_cast<int>((j * k) % 8)) * S::make(1, 0, 0, 0, 3);
    return m;
}

RingMatrix w_gate() {
    RingMatrix m(2);
    const S h = S::inv_sqrt2();
    m(0, 0) = S::one();
    m(1, 1) = h;
    m(1, 2) = h;
    m(2, 1) = h;
    m(2, 2) = -h;
    m(3, 3) = S::one();
    return m;
}

}  // namespace

RingMatrix controlled(const RingMatrix& u) {
    if (u.n_qubits() != 1) throw std::invalid_argument("controlled() takes a single-qubit gate");
    RingMatrix m = RingMatrix::identity(2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) m(2 + r, 2 + c) = u(r, c);
    return m;
}

RingMatrix permutation_matrix(int n, std::size_t (*f)(std::size_t)) {
    RingMatrix m(n);
    for (std::size_t x = 0; x < m.dim(); ++x) m(f(x), x) = S::one();
    return m;
}

const std::vector<std::string>& target_names() {
    static const std::vector<std::string> names = {"cx",      "cz",          "cy",      "ch",    "cp",  "cpdg",
                                                   "cv",      "ct",          "w",       "toffoli", "toffoli-neg",
                                                   "fredkin", "peres",       "qor",     "qft3",  "adder"};
    return names;
}

RingMatrix build_target(std::string_view name) {
    const S one = S::one(), zero = S::zero(), i = S::omega(2);
    if (name == "cx") return controlled(single(zero, one, one, zero));
    if (name == "cz") return controlled(single(one, zero, zero, -one));
    if (name == "cy") return controlled(single(zero, -i, i, zero));
    if (name == "ch") {
        const S h = S::inv_sqrt2();
        return controlled(single(h, h, h, -h));
    }
    if (name == "cp") return controlled(single(one, zero, zero, i));
    if (name == "cpdg") return controlled(single(one, zero, zero, -i));
    if (name == "cv") {
        // V = sqrt(X) = 1/2 [[1+i, 1-i], [1-i, 1+i]].
        const S p = S::make(1, 0, 1, 0, 2), q = S::make(1, 0, -1, 0, 2);
        return controlled(single(p, q, q, p));
    }
    if (name == "ct") return controlled(single(one, zero, zero, S::omega(1)));
    if (name == "w") return w_gate();
    if (name == "toffoli") return permutation_matrix(3, toffoli_map);
    if (name == "toffoli-neg") return permutation_matrix(3, toffoli_neg_map);
    if (name == "fredkin") return permutation_matrix(3, fredkin_map);
    if (name == "peres") return permutation_matrix(3, peres_map);
    if (name == "qor") return permutation_matrix(3, qor_map);
    if (name == "qft3") return qft3();
    if (name == "adder") return permutation_matrix(4, adder_map);
    throw std::invalid_argument("unknown target '" + std::string(name) + "'");
}

RingMatrix load_target(const std::string& name_or_path) {
    for (const auto& n : target_names())
        if (n == name_or_path) return build_target(n);
    std::ifstream f(name_or_path);
    if (!f) throw std::invalid_argument("unknown target '" + name_or_path + "' (not a catalog name or readable file)");
    std::stringstream ss;
    ss << f.rdbuf();
    RingMatrix m = matrix_from_json(ss.str());
    if (!is_unitary(m)) throw FormatError("matrix in " + name_or_path + " is not unitary");
    return m;
}

}  // namespace qcs
