#include "qcs/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "qcs/errors.hpp"

namespace qcs {

// ---------------------------------------------------------------- Key128

std::string Key128::to_hex() const {
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                  static_cast<unsigned long long>(lo));
    return buf;
}

// ---------------------------------------------------------------- QubitPermutation

QubitPermutation::QubitPermutation(std::vector<int> map) : map_(std::move(map)) {
    std::vector<bool> seen(map_.size(), false);
    for (int v : map_) {
        if (v < 0 || static_cast<std::size_t>(v) >= map_.size() || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("qubit permutation is not a bijection");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

QubitPermutation QubitPermutation::identity(int n) {
    std::vector<int> m(static_cast<std::size_t>(n));
    std::iota(m.begin(), m.end(), 0);
    return QubitPermutation(std::move(m));
}

std::vector<QubitPermutation> QubitPermutation::all(int n) {
    std::vector<QubitPermutation> out;
    std::vector<int> m(static_cast<std::size_t>(n));
    std::iota(m.begin(), m.end(), 0);
    do {
        out.emplace_back(m);
    } while (std::next_permutation(m.begin(), m.end()));
    return out;
}

bool QubitPermutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < map_.size(); ++i)
        if (map_[i] != static_cast<int>(i)) return false;
    return true;
}

QubitPermutation QubitPermutation::inverse() const {
    std::vector<int> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[static_cast<std::size_t>(map_[i])] = static_cast<int>(i);
    return QubitPermutation(std::move(inv));
}

QubitPermutation QubitPermutation::after(const QubitPermutation& first) const {
    if (first.size() != size()) throw std::invalid_argument("permutation size mismatch");
    std::vector<int> m(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) m[i] = map_[static_cast<std::size_t>(first.map_[i])];
    return QubitPermutation(std::move(m));
}

std::size_t QubitPermutation::apply_to_index(std::size_t index) const noexcept {
    std::size_t out = 0;
    for (std::size_t w = 0; w < map_.size(); ++w)
        if ((index >> w) & 1U) out |= std::size_t{1} << map_[w];
    return out;
}

// ---------------------------------------------------------------- RingMatrix

RingMatrix::RingMatrix(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 0 || n_qubits > kMaxQubits) throw std::invalid_argument("unsupported qubit count");
    dim_ = std::size_t{1} << n_qubits;
    entries_.assign(dim_ * dim_, RingScalar{});
}

RingMatrix::RingMatrix(int n_qubits, std::vector<RingScalar> entries) : RingMatrix(n_qubits) {
    if (entries.size() != dim_ * dim_) throw std::invalid_argument("entry count does not match 4^n");
    entries_ = std::move(entries);
    for (auto& e : entries_) e.normalize();
}

RingMatrix RingMatrix::identity(int n_qubits) {
    RingMatrix m(n_qubits);
    for (std::size_t i = 0; i < m.dim_; ++i) m(i, i) = RingScalar::one();
    return m;
}

bool RingMatrix::is_identity() const {
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) {
            const auto& e = (*this)(r, c);
            if (r == c ? !(e == RingScalar::one()) : !e.is_zero()) return false;
        }
    return true;
}

bool RingMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const RingScalar& s) { return s.is_zero(); });
}

// ---------------------------------------------------------------- arithmetic

namespace {

// Coefficients below 2^58 keep every dot product of length <= 512 inside __int128.
constexpr std::int64_t kDotBound = std::int64_t{1} << 58;

int max_sde(std::span<const RingScalar> xs) {
    int k = 0;
    for (const auto& s : xs) k = std::max(k, static_cast<int>(s.sde));
    return k;
}

void lift(std::span<const RingScalar> xs, int k, std::vector<OmegaInt>& out) {
    out.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        OmegaInt v = scale_sqrt2(xs[i].num, k - xs[i].sde);
        if (std::max({std::abs(v.a), std::abs(v.b), std::abs(v.c), std::abs(v.d)}) >= kDotBound)
            throw OverflowError("matrix entry too large for exact product");
        out[i] = v;
    }
}

}  // namespace

void matmul_into(RingMatrix& out, const RingMatrix& x, const RingMatrix& y) {
    if (x.n_qubits() != y.n_qubits()) throw std::invalid_argument("matmul dimension mismatch");
    const std::size_t d = x.dim();
    thread_local std::vector<OmegaInt> xs, ys;
    const int kx = max_sde(x.entries()), ky = max_sde(y.entries());
    lift(x.entries(), kx, xs);
    lift(y.entries(), ky, ys);
    if (out.n_qubits() != x.n_qubits() || out.size() != x.size()) out = RingMatrix(x.n_qubits());
    auto oe = out.entries();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            __int128 a = 0, b = 0, c = 0, dd = 0;
            for (std::size_t k = 0; k < d; ++k) {
                const OmegaInt& p = xs[i * d + k];
                const OmegaInt& q = ys[k * d + j];
                if (p.is_zero() || q.is_zero()) continue;
                a += __int128(p.a) * q.a - __int128(p.b) * q.d - __int128(p.c) * q.c - __int128(p.d) * q.b;
                b += __int128(p.a) * q.b + __int128(p.b) * q.a - __int128(p.c) * q.d - __int128(p.d) * q.c;
                c += __int128(p.a) * q.c + __int128(p.b) * q.b + __int128(p.c) * q.a - __int128(p.d) * q.d;
                dd += __int128(p.a) * q.d + __int128(p.b) * q.c + __int128(p.c) * q.b + __int128(p.d) * q.a;
            }
            RingScalar& r = oe[i * d + j];
            r.num = {detail::checked_narrow(a), detail::checked_narrow(b), detail::checked_narrow(c),
                     detail::checked_narrow(dd)};
            r.sde = kx + ky;
            r.normalize();
        }
    }
}

RingMatrix matmul(const RingMatrix& x, const RingMatrix& y) {
    RingMatrix out(x.n_qubits());
    matmul_into(out, x, y);
    return out;
}

RingMatrix adjoint(const RingMatrix& x) {
    RingMatrix out(x.n_qubits());
    const std::size_t d = x.dim();
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) out(c, r) = x(r, c).conj();
    return out;
}

RingMatrix tensor(const RingMatrix& x, const RingMatrix& y) {
    RingMatrix out(x.n_qubits() + y.n_qubits());
    const std::size_t dy = y.dim();
    for (std::size_t r1 = 0; r1 < x.dim(); ++r1)
        for (std::size_t c1 = 0; c1 < x.dim(); ++c1) {
            const auto& s = x(r1, c1);
            if (s.is_zero()) continue;
            for (std::size_t r2 = 0; r2 < dy; ++r2)
                for (std::size_t c2 = 0; c2 < dy; ++c2) out(r1 * dy + r2, c1 * dy + c2) = s * y(r2, c2);
        }
    return out;
}

RingMatrix permute_qubits(const RingMatrix& x, const QubitPermutation& perm) {
    if (perm.size() != x.n_qubits()) throw std::invalid_argument("permutation size mismatch");
    const std::size_t d = x.dim();
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) idx[i] = perm.apply_to_index(i);
    RingMatrix out(x.n_qubits());
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) out(idx[r], idx[c]) = x(r, c);
    return out;
}

RingMatrix scale_phase(const RingMatrix& x, int j) {
    RingMatrix out = x;
    for (auto& e : out.entries()) e = e.times_omega(j);
    return out;
}

RingMatrix scale(const RingMatrix& x, const RingScalar& s) {
    RingMatrix out = x;
    for (auto& e : out.entries()) e = e * s;
    return out;
}

std::strong_ordering lex_cmp(const RingMatrix& x, const RingMatrix& y) {
    if (x.n_qubits() != y.n_qubits()) throw std::invalid_argument("lex_cmp dimension mismatch");
    auto xe = x.entries(), ye = y.entries();
    for (std::size_t i = 0; i < xe.size(); ++i)
        if (auto c = xe[i] <=> ye[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

bool is_unitary(const RingMatrix& x) { return matmul(x, adjoint(x)).is_identity(); }

std::optional<int> phase_between(const RingMatrix& x, const RingMatrix& y) {
    if (x.n_qubits() != y.n_qubits()) return std::nullopt;
    auto xe = x.entries(), ye = y.entries();
    std::size_t ref = 0;
    while (ref < ye.size() && ye[ref].is_zero()) ++ref;
    if (ref == ye.size()) return x.is_zero() ? std::optional<int>(0) : std::nullopt;
    for (int k = 0; k < 8; ++k) {
        if (!(xe[ref] == ye[ref].times_omega(k))) continue;
        bool ok = true;
        for (std::size_t i = 0; i < xe.size() && ok; ++i) ok = xe[i] == ye[i].times_omega(k);
        if (ok) return k;
        return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- fingerprint

namespace {

constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct Digest {
    std::uint64_t h1, h2;
    explicit Digest(std::uint64_t shape) : h1(0x243f6a8885a308d3ULL ^ shape), h2(0x13198a2e03707344ULL + shape) {}
    void feed(std::uint64_t v) {
        h1 = std::rotl((h1 ^ mix64(v)) * 0x9fb21c651e98df25ULL, 29);
        h2 = std::rotl((h2 + mix64(v ^ 0xa0761d6478bd642fULL)) * 0xc2b2ae3d27d4eb4fULL, 31);
    }
    Key128 finish() const { return {mix64(h1 ^ std::rotl(h2, 17)), mix64(h2 + 0x2545f4914f6cdd1dULL * h1)}; }
};

}  // namespace

Key128 fingerprint_entries(std::span<const RingScalar> entries, std::uint64_t shape) {
    Digest dg(shape);
    for (const auto& s : entries) {
        dg.feed(static_cast<std::uint64_t>(s.sde));
        dg.feed(static_cast<std::uint64_t>(s.num.a));
        dg.feed(static_cast<std::uint64_t>(s.num.b));
        dg.feed(static_cast<std::uint64_t>(s.num.c));
        dg.feed(static_cast<std::uint64_t>(s.num.d));
    }
    return dg.finish();
}

Key128 fingerprint(const RingMatrix& x) {
    return fingerprint_entries(x.entries(), static_cast<std::uint64_t>(x.n_qubits()) * 0x100000001ULL);
}

// ---------------------------------------------------------------- JSON

std::string matrix_to_json(const RingMatrix& x) {
    nlohmann::json j;
    j["n"] = x.n_qubits();
    auto arr = nlohmann::json::array();
    for (const auto& s : x.entries()) arr.push_back({s.num.a, s.num.b, s.num.c, s.num.d, s.sde});
    j["entries"] = std::move(arr);
    return j.dump();
}

RingMatrix matrix_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed JSON matrix: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("entries") || !j["n"].is_number_integer() ||
        !j["entries"].is_array())
        throw FormatError("JSON matrix needs integer \"n\" and array \"entries\"");
    const int n = j["n"].get<int>();
    if (n < 0 || n > kMaxQubits) throw FormatError("JSON matrix qubit count out of range");
    const std::size_t d = std::size_t{1} << n;
    const auto& arr = j["entries"];
    if (arr.size() != d * d) throw FormatError("JSON matrix entry count is not 4^n");
    std::vector<RingScalar> entries;
    entries.reserve(arr.size());
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 5) throw FormatError("matrix entry must be [a,b,c,d,k]");
        for (const auto& v : e)
            if (!v.is_number_integer()) throw FormatError("matrix entry components must be integers");
        const auto k = e[4].get<std::int64_t>();
        if (k < 0 || k > 1000) throw FormatError("matrix entry denominator exponent out of range");
        entries.push_back(RingScalar::make(e[0].get<std::int64_t>(), e[1].get<std::int64_t>(),
                                           e[2].get<std::int64_t>(), e[3].get<std::int64_t>(),
                                           static_cast<std::int32_t>(k)));
    }
    return RingMatrix(n, std::move(entries));
}

}  // namespace qcs
