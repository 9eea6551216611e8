#pragma once

// Exact arithmetic in Z[1/sqrt2, i].
//
// A value is num / sqrt2^sde where num = a + b w + c w^2 + d w^3 and
// w = exp(i pi/4). Since w^4 = -1 the omega-basis representation of num is
// unique; together with the normal-form rule on sde this makes equality and
// ordering purely structural.

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcs {

class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

namespace detail {

inline std::int64_t checked_narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("ring coefficient overflow");
    return static_cast<std::int64_t>(v);
}

inline std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw OverflowError("ring coefficient overflow");
    return r;
}

inline std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_sub_overflow(x, y, &r)) throw OverflowError("ring coefficient overflow");
    return r;
}

inline std::int64_t checked_neg(std::int64_t x) { return checked_sub(0, x); }

}  // namespace detail

/// Element of Z[w]: a + b w + c w^2 + d w^3.
struct OmegaInt {
    std::int64_t a = 0, b = 0, c = 0, d = 0;

    constexpr bool is_zero() const noexcept { return (a | b | c | d) == 0; }

    /// num is divisible by sqrt2 in Z[w] iff a = c and b = d (mod 2).
    constexpr bool sqrt2_divisible() const noexcept { return ((a ^ c) & 1) == 0 && ((b ^ d) & 1) == 0; }

    friend constexpr bool operator==(const OmegaInt&, const OmegaInt&) = default;

    OmegaInt operator+(const OmegaInt& o) const {
        using namespace detail;
        return {checked_add(a, o.a), checked_add(b, o.b), checked_add(c, o.c), checked_add(d, o.d)};
    }
    OmegaInt operator-(const OmegaInt& o) const {
        using namespace detail;
        return {checked_sub(a, o.a), checked_sub(b, o.b), checked_sub(c, o.c), checked_sub(d, o.d)};
    }
    OmegaInt operator-() const {
        using namespace detail;
        return {checked_neg(a), checked_neg(b), checked_neg(c), checked_neg(d)};
    }

    OmegaInt operator*(const OmegaInt& o) const {
        using detail::checked_narrow;
        using W = __int128;
        const W e = o.a, f = o.b, g = o.c, h = o.d;
        return {checked_narrow(W(a) * e - W(b) * h - W(c) * g - W(d) * f),
                checked_narrow(W(a) * f + W(b) * e - W(c) * h - W(d) * g),
                checked_narrow(W(a) * g + W(b) * f + W(c) * e - W(d) * h),
                checked_narrow(W(a) * h + W(b) * g + W(c) * f + W(d) * e)};
    }

    /// Multiply by w^k. Rotating the basis never overflows except through negation.
    OmegaInt times_omega(int k) const {
        OmegaInt r = *this;
        k &= 7;
        if (k >= 4) {
            r = -r;
            k -= 4;
        }
        for (; k > 0; --k) r = {detail::checked_neg(r.d), r.a, r.b, r.c};
        return r;
    }

    /// x * sqrt2 with sqrt2 = w - w^3.
    OmegaInt times_sqrt2() const {
        using namespace detail;
        return {checked_sub(b, d), checked_add(a, c), checked_add(b, d), checked_sub(c, a)};
    }

    /// Exact x / sqrt2; requires sqrt2_divisible().
    OmegaInt div_sqrt2() const {
        using namespace detail;
        // (x * sqrt2) / 2; the halving is exact under the divisibility condition.
        const __int128 p = __int128(b) - d, q = __int128(a) + c, r = __int128(b) + d, s = __int128(c) - a;
        return {checked_narrow(p / 2), checked_narrow(q / 2), checked_narrow(r / 2), checked_narrow(s / 2)};
    }

    /// Complex conjugate: w^k -> w^-k.
    OmegaInt conj() const {
        using namespace detail;
        return {a, checked_neg(d), checked_neg(c), checked_neg(b)};
    }

    std::complex<double> to_complex() const;
};

/// Exact value num / sqrt2^sde, kept in normal form: sde == 0 or num not divisible by sqrt2;
/// zero is always (0,0,0,0) with sde 0.
struct RingScalar {
    OmegaInt num{};
    std::int32_t sde = 0;

    constexpr RingScalar() = default;

    /// Builds and normalizes num / sqrt2^k.
    static RingScalar make(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int32_t k = 0) {
        RingScalar r;
        r.num = {a, b, c, d};
        r.sde = k;
        r.normalize();
        return r;
    }
    static RingScalar from_int(std::int64_t v) { return make(v, 0, 0, 0, 0); }
    static RingScalar zero() { return {}; }
    static RingScalar one() { return from_int(1); }
    /// w^k as a ring scalar.
    static RingScalar omega(int k) {
        RingScalar r;
        r.num = OmegaInt{1, 0, 0, 0}.times_omega(k);
        return r;
    }
    static RingScalar inv_sqrt2() { return make(1, 0, 0, 0, 1); }

    constexpr bool is_zero() const noexcept { return num.is_zero(); }

    void normalize() {
        if (num.is_zero()) {
            sde = 0;
            return;
        }
        if (sde < 0) throw std::invalid_argument("negative sqrt2 denominator exponent");
        while (sde > 0 && num.sqrt2_divisible()) {
            num = num.div_sqrt2();
            --sde;
        }
    }

    RingScalar conj() const {
        RingScalar r;
        r.num = num.conj();
        r.sde = sde;
        return r;
    }

    RingScalar operator-() const {
        RingScalar r;
        r.num = -num;
        r.sde = sde;
        return r;
    }

    RingScalar times_omega(int k) const {
        RingScalar r;
        r.num = num.times_omega(k);
        r.sde = sde;
        return r;
    }

    /// x / sqrt2.
    RingScalar div_sqrt2() const {
        if (is_zero()) return {};
        RingScalar r = *this;
        r.sde += 1;
        r.normalize();
        return r;
    }

    friend RingScalar operator+(const RingScalar& x, const RingScalar& y);
    friend RingScalar operator-(const RingScalar& x, const RingScalar& y) { return x + (-y); }
    friend RingScalar operator*(const RingScalar& x, const RingScalar& y) {
        RingScalar r;
        r.num = x.num * y.num;
        r.sde = x.sde + y.sde;
        r.normalize();
        return r;
    }
    RingScalar& operator+=(const RingScalar& o) { return *this = *this + o; }
    RingScalar& operator*=(const RingScalar& o) { return *this = *this * o; }

    friend constexpr bool operator==(const RingScalar&, const RingScalar&) = default;

    /// Total order on normalized values: (sde, a, b, c, d).
    friend constexpr std::strong_ordering operator<=>(const RingScalar& x, const RingScalar& y) noexcept {
        if (auto c = x.sde <=> y.sde; c != 0) return c;
        if (auto c = x.num.a <=> y.num.a; c != 0) return c;
        if (auto c = x.num.b <=> y.num.b; c != 0) return c;
        if (auto c = x.num.c <=> y.num.c; c != 0) return c;
        return x.num.d <=> y.num.d;
    }

    std::complex<double> to_complex() const;
    std::string to_string() const;
};

/// Scale num by sqrt2^e (e >= 0).
OmegaInt scale_sqrt2(OmegaInt x, int e);

inline RingScalar operator+(const RingScalar& x, const RingScalar& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    RingScalar r;
    if (x.sde == y.sde) {
        r.num = x.num + y.num;
        r.sde = x.sde;
    } else if (x.sde < y.sde) {
        r.num = scale_sqrt2(x.num, y.sde - x.sde) + y.num;
        r.sde = y.sde;
    } else {
        r.num = x.num + scale_sqrt2(y.num, x.sde - y.sde);
        r.sde = x.sde;
    }
    r.normalize();
    return r;
}

inline RingScalar add(const RingScalar& x, const RingScalar& y) { return x + y; }
inline RingScalar mul(const RingScalar& x, const RingScalar& y) { return x * y; }
inline RingScalar conj(const RingScalar& x) { return x.conj(); }
inline RingScalar normalize(RingScalar x) {
    x.normalize();
    return x;
}
inline std::strong_ordering cmp(const RingScalar& x, const RingScalar& y) { return x <=> y; }

}  // namespace qcs
