// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rotlab/bigint.hpp>
#include <rotlab/rng.hpp>

using namespace rotlab;

namespace {

BigUInt random_big(Rng& rng, std::size_t max_limbs) {
    std::size_t n = rng.below(max_limbs + 1);
    BigUInt r;
    for (std::size_t i = 0; i < n; ++i) {
        r <<= 64;
        r += BigUInt(rng.next_u64());
    }
    return r;
}

}  // namespace

TEST_CASE("decimal round trip") {
    const char* s = "123456789012345678901234567890123456789";
    CHECK(BigUInt::from_decimal(s).to_string() == s);
    CHECK(BigUInt(0).to_string() == "0");
    CHECK(BigUInt::from_decimal("0").is_zero());
}

TEST_CASE("add/sub/mul basics") {
    BigUInt a = BigUInt::from_decimal("340282366920938463463374607431768211456");  // 2^128
    CHECK(a == BigUInt::pow2(128));
    CHECK((a - BigUInt(1)).to_string() == "340282366920938463463374607431768211455");
    CHECK((a * a) == BigUInt::pow2(256));
    CHECK(a.bit_length() == 129);
}

TEST_CASE("divmod reconstructs and bounds the remainder") {
    Rng rng(42);
    for (int it = 0; it < 2000; ++it) {
        BigUInt a = random_big(rng, 8);
        BigUInt b = random_big(rng, 5);
        if (b.is_zero()) b = BigUInt(rng.next_u64() | 1);
        auto [q, r] = BigUInt::divmod(a, b);
        CHECK(r < b);
        CHECK(q * b + r == a);
    }
}

TEST_CASE("shifts") {
    Rng rng(7);
    for (int it = 0; it < 200; ++it) {
        BigUInt a = random_big(rng, 4);
        unsigned k = unsigned(rng.below(130));
        CHECK(((a << k) >> k) == a);
        CHECK((a << k) == a * BigUInt::pow2(k));
    }
}

TEST_CASE("to_double") {
    CHECK(BigUInt(12345).to_double() == 12345.0);
    BigUInt big = BigUInt::pow2(100) + BigUInt::pow2(40);
    CHECK(big.to_double() == doctest::Approx(0x1p100).epsilon(1e-14));
}

TEST_CASE("signed arithmetic") {
    BigInt a(-5), b(3);
    CHECK((a + b).to_string() == "-2");
    CHECK((a * b).to_string() == "-15");
    CHECK((b - a).to_string() == "8");
    CHECK((a - a).sign() == 0);
    CHECK(a.cmp(b) < 0);
    CHECK(BigInt(-9223372036854775807LL).to_string() == "-9223372036854775807");
}
