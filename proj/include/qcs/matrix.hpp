#pragma once

// Dense 2^n x 2^n matrices over Z[1/sqrt2, i].
//
// Basis index convention: bit w of a row/column index is the state of wire w.
// tensor(x, y) therefore places y on the low wires and x on the high wires.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcs/ring.hpp"

namespace qcs {

inline constexpr int kMaxQubits = 14;

/// 128-bit digest of an exact matrix.
struct Key128 {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    friend constexpr bool operator==(const Key128&, const Key128&) = default;
    friend constexpr auto operator<=>(const Key128&, const Key128&) = default;
    std::string to_hex() const;
};

struct Key128Hash {
    std::size_t operator()(const Key128& k) const noexcept { return static_cast<std::size_t>(k.lo ^ (k.hi >> 7)); }
};

/// Relabeling of wires: wire w becomes wire map[w].
class QubitPermutation {
public:
    QubitPermutation() = default;
    explicit QubitPermutation(std::vector<int> map);
    static QubitPermutation identity(int n);
    /// All n! permutations in lexicographic order of their maps, identity first.
    static std::vector<QubitPermutation> all(int n);

    int size() const noexcept { return static_cast<int>(map_.size()); }
    int operator[](int w) const { return map_[static_cast<std::size_t>(w)]; }
    const std::vector<int>& map() const noexcept { return map_; }
    bool is_identity() const noexcept;

    QubitPermutation inverse() const;
    /// (this o first): apply `first`, then this.
    QubitPermutation after(const QubitPermutation& first) const;

    /// Basis index with bit w moved to position map[w].
    std::size_t apply_to_index(std::size_t index) const noexcept;

    friend bool operator==(const QubitPermutation&, const QubitPermutation&) = default;

private:
    std::vector<int> map_;
};

class RingMatrix {
public:
    RingMatrix() = default;
    /// Zero matrix on n qubits.
    explicit RingMatrix(int n_qubits);
    RingMatrix(int n_qubits, std::vector<RingScalar> entries);

    static RingMatrix identity(int n_qubits);

    int n_qubits() const noexcept { return n_qubits_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return entries_.size(); }

    RingScalar& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
    const RingScalar& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }

    std::span<RingScalar> entries() noexcept { return entries_; }
    std::span<const RingScalar> entries() const noexcept { return entries_; }

    bool is_identity() const;
    bool is_zero() const;

    friend bool operator==(const RingMatrix&, const RingMatrix&) = default;

private:
    int n_qubits_ = 0;
    std::size_t dim_ = 1;
    std::vector<RingScalar> entries_{RingScalar{}};
};

RingMatrix matmul(const RingMatrix& x, const RingMatrix& y);
/// out = x * y without reallocating out when its shape already matches.
void matmul_into(RingMatrix& out, const RingMatrix& x, const RingMatrix& y);
RingMatrix adjoint(const RingMatrix& x);
RingMatrix tensor(const RingMatrix& x, const RingMatrix& y);
RingMatrix permute_qubits(const RingMatrix& x, const QubitPermutation& perm);
/// Every entry multiplied by w^j.
RingMatrix scale_phase(const RingMatrix& x, int j);
RingMatrix scale(const RingMatrix& x, const RingScalar& s);
std::strong_ordering lex_cmp(const RingMatrix& x, const RingMatrix& y);

/// Exact test of U U^dagger = I.
bool is_unitary(const RingMatrix& x);

/// If x = w^k y for some k, returns k.
std::optional<int> phase_between(const RingMatrix& x, const RingMatrix& y);

Key128 fingerprint(const RingMatrix& x);
/// Digest of an arbitrary entry sequence; `shape` is folded in so that different shapes never share a stream.
Key128 fingerprint_entries(std::span<const RingScalar> entries, std::uint64_t shape);

/// JSON form {"n": int, "entries": [[a,b,c,d,k], ...]}, row-major.
std::string matrix_to_json(const RingMatrix& x);
RingMatrix matrix_from_json(const std::string& text);

}  // namespace qcs
