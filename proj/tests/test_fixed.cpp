// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <rotlab/circle.hpp>
#include <rotlab/fixed.hpp>
#include <rotlab/rng.hpp>

using namespace rotlab;

TEST_CASE("from_double/to_double round trip is exact for dyadics") {
    Rng rng(1);
    for (int it = 0; it < 500; ++it) {
        double x = rng.next_double();
        Fixed f = Fixed::from_double(x, 256);
        CHECK(f.to_double() == x);
    }
    CHECK(Fixed::from_double(0.0, 128).is_zero());
}

TEST_CASE("to_double resolves tiny values") {
    // 2^-200 is representable exactly at 256 bits
    Fixed f = Fixed::from_rational(BigUInt(1), BigUInt::pow2(200), 256);
    CHECK(f.to_double() == 0x1p-200);
    Fixed g = Fixed::from_rational(BigUInt(3), BigUInt::pow2(202), 256);
    CHECK(g.to_double() == 3.0 * 0x1p-202);
}

TEST_CASE("mod-1 group laws are exact") {
    Rng rng(2);
    for (int it = 0; it < 300; ++it) {
        Fixed a = rng.next_fixed(256), b = rng.next_fixed(256);
        Fixed s = a.plus(b);
        CHECK(s.minus(b) == a);
        CHECK(a.plus(b) == b.plus(a));
        Fixed z(256);
        CHECK(a.plus(z) == a);
        CHECK(a.minus(a) == z);
    }
}

TEST_CASE("complement") {
    Fixed a = Fixed::from_double(0.25, 192);
    CHECK(a.complement().to_double() == 0.75);
    CHECK(Fixed(192).complement().is_zero());
    CHECK(a.norm_dist() == 0.25);
    CHECK(a.complement().norm_dist() == 0.25);
}

TEST_CASE("mul_u64_mod1 equals repeated addition") {
    Rng rng(3);
    for (int it = 0; it < 100; ++it) {
        Fixed a = rng.next_fixed(128);
        std::uint64_t n = rng.below(5000);
        Fixed sum(128);
        for (std::uint64_t j = 0; j < n; ++j) sum.add_mod1(a);
        CHECK(a.mul_u64_mod1(n) == sum);
    }
}

TEST_CASE("signed_circle_dist") {
    Fixed x = Fixed::from_double(0.125, 256);
    Fixed y = Fixed::from_double(0.875, 256);
    CHECK(signed_circle_dist(x, y) == 0.25);
    CHECK(signed_circle_dist(y, x) == -0.25);
    CHECK(signed_circle_dist(x, x) == 0.0);
}

TEST_CASE("from_rational rounds down and reports exactness") {
    bool exact = false;
    Fixed third = Fixed::from_rational(BigUInt(1), BigUInt(3), 256, &exact);
    CHECK(!exact);
    double t = third.to_double();
    CHECK(t <= 1.0 / 3.0);
    CHECK(t == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    Fixed q = Fixed::from_rational(BigUInt(1), BigUInt(4), 256, &exact);
    CHECK(exact);
    CHECK(q.to_double() == 0.25);
}

TEST_CASE("circle point error budget") {
    CirclePoint p(Fixed::from_double(0.5, 256), 1);
    Fixed step = Fixed::from_double(0.1234, 256);
    for (int i = 0; i < 10; ++i) p.advance(step);
    CHECK(p.err_ulps() == doctest::Approx(11));
    CHECK_NOTHROW(p.check_budget(1e6));
    CHECK_THROWS_AS(p.check_budget(1e60), PrecisionExhausted);

    CirclePoint q(Fixed::from_double(0.5, 256), 1);
    q.jump(step, 10);
    CHECK(q.pos() == p.pos());
    q.jump(step, -10);
    CHECK(q.pos() == Fixed::from_double(0.5, 256));
}
