#include <random>

#include "doctest.h"
#include "qcs/ring.hpp"
#include "support.hpp"

using qcs::RingScalar;
using S = RingScalar;

TEST_CASE("ring: addition") {
    CHECK(S::make(1, 0, 0, 0) + S::make(-1, 0, 0, 0) == S::zero());
    // 1/sqrt2 + 1/sqrt2 = sqrt2
    CHECK(S::make(1, 0, 0, 0, 1) + S::make(1, 0, 0, 0, 1) == S::make(0, 1, 0, -1, 0));
    CHECK(S::make(0, 1, 0, 0) + S::make(0, 0, 0, 1) == S::make(0, 1, 0, 1));
    CHECK((S::make(0, 1, 0, 1) + S::zero()).sde == 0);
}

TEST_CASE("ring: multiplication") {
    const S sqrt2 = S::make(0, 1, 0, -1);
    CHECK(sqrt2 * sqrt2 == S::from_int(2));
    CHECK(S::make(0, 1, 0, 0) * S::make(0, 0, 0, 1) == S::from_int(-1));
    const S half = S::inv_sqrt2() * S::inv_sqrt2();
    CHECK(half == S::make(1, 0, 0, 0, 2));
    CHECK(std::abs(half.to_complex() - 0.5) < 1e-15);
}

TEST_CASE("ring: conjugation") {
    CHECK(S::omega(1).conj() == S::make(0, 0, 0, -1));
    CHECK(S::omega(1).conj() == S::omega(7));
    CHECK(S::make(5, 0, 0, 0, 3).conj() == S::make(5, 0, 0, 0, 3));
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const S x = qcs::test::random_scalar(rng);
        CHECK(x.conj().conj() == x);
        const auto n = (x * x.conj()).to_complex();
        CHECK(n.real() >= -1e-12);
        CHECK(std::abs(n.imag()) < 1e-9);
    }
}

TEST_CASE("ring: normal form") {
    const S a = S::make(2, 0, 2, 0, 2);
    CHECK(a == S::make(1, 0, 1, 0, 0));
    CHECK(std::abs(a.to_complex() - std::complex<double>(1, 1)) < 1e-12);
    CHECK(S::make(0, 1, 0, -1, 1) == S::one());
    const S b = S::make(1, 0, 0, 0, 1);
    CHECK(b.sde == 1);
    CHECK(b.num == qcs::OmegaInt{1, 0, 0, 0});
    CHECK(S::make(0, 0, 0, 0, 5).sde == 0);
    std::mt19937_64 rng(12);
    for (int i = 0; i < 200; ++i) {
        const S x = qcs::test::random_scalar(rng);
        CHECK(qcs::normalize(x) == x);
        CHECK((x.sde == 0 || !x.num.sqrt2_divisible()));
    }
}

TEST_CASE("ring: order") {
    CHECK(S::zero() < S::one());
    CHECK((S::one() <=> S::one()) == 0);
    CHECK(S::one() < S::make(1, 0, 0, 0, 1));
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        const S x = qcs::test::random_scalar(rng), y = qcs::test::random_scalar(rng);
        CHECK(((x <=> y) == 0) == (x == y));
        CHECK((x < y) == (y > x));
    }
}

TEST_CASE("ring: powers of omega") {
    S p = S::one();
    for (int i = 0; i < 4; ++i) p = p * S::omega(1);
    CHECK(p == S::from_int(-1));
    for (int i = 0; i < 4; ++i) p = p * S::omega(1);
    CHECK(p == S::one());
}

TEST_CASE("ring: complex homomorphism") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 1000; ++i) {
        const S x = qcs::test::random_scalar(rng), y = qcs::test::random_scalar(rng);
        const auto cx = x.to_complex(), cy = y.to_complex();
        const auto s = (x + y).to_complex(), m = (x * y).to_complex();
        CHECK(std::abs(s - (cx + cy)) <= 1e-9 * std::max(1.0, std::abs(cx + cy)));
        CHECK(std::abs(m - cx * cy) <= 1e-9 * std::max(1.0, std::abs(cx * cy)));
    }
}

TEST_CASE("ring: overflow is reported") {
    const S big = S::make(INT64_MAX / 2 + 1, 0, 0, 0);
    CHECK_THROWS_AS(big + big, qcs::OverflowError);
    CHECK_THROWS_AS(big * big, qcs::OverflowError);
}

TEST_CASE("ring: text form") { CHECK(S::make(1, 2, 4, 4, 1).to_string() == "[1,2,4,4,1]"); }
