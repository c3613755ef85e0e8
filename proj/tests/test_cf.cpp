// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <rotlab/continued_fraction.hpp>
#include <rotlab/rng.hpp>
#include <vector>

using namespace rotlab;

namespace {

// e - 2 as an exact rational enclosure: sum_{n=2..30} 1/n! with the series
// remainder below one unit of the common denominator 30!.
ContinuedFraction::RatInterval e_minus_2_enclosure() {
    BigUInt fact(1);
    for (std::uint64_t n = 2; n <= 30; ++n) fact = fact.mul_u64(n);  // 30!/1!... final 30!
    // rebuild cleanly: den = 30!, num = sum_{n=2..30} 30!/n!
    BigUInt den(1);
    for (std::uint64_t n = 1; n <= 30; ++n) den = den.mul_u64(n);
    BigUInt num(0);
    BigUInt term = den;
    for (std::uint64_t n = 1; n <= 30; ++n) {
        auto [q, r] = BigUInt::divmod(term, BigUInt(n));
        term = q;  // 30!/n!
        if (n >= 2) num += term;
    }
    return {num, den, num + BigUInt(1), den};
}

}  // namespace

TEST_CASE("golden mean expansion") {
    auto cf = cf_expand("surd:-1,1,5,2", 6);
    CHECK(cf.quotients() == std::vector<std::uint64_t>{1, 1, 1, 1, 1, 1});
    CHECK(cf.index_shifted());
    std::vector<std::uint64_t> q;
    for (std::size_t s = 0; s < cf.size(); ++s) q.push_back(cf.q(s).to_u64());
    CHECK(q == std::vector<std::uint64_t>{1, 2, 3, 5, 8, 13});
    CHECK(cf.alpha().to_double() == doctest::Approx((std::sqrt(5.0) - 1) / 2).epsilon(1e-15));
    CHECK(cf.alpha_err_ulps() < 16);
}

TEST_CASE("sqrt2 - 1 expansion") {
    auto cf = cf_expand("surd:-1,1,2,1", 5);
    CHECK(cf.quotients() == std::vector<std::uint64_t>{2, 2, 2, 2, 2});
    CHECK(!cf.index_shifted());
    std::vector<std::uint64_t> q;
    for (std::size_t s = 0; s < 5; ++s) q.push_back(cf.q(s).to_u64());
    CHECK(q == std::vector<std::uint64_t>{1, 2, 5, 12, 29});
}

TEST_CASE("e - 2 expansion against the exhaustive best-approximation oracle") {
    auto encl = e_minus_2_enclosure();
    QuotientListDescriptor unused;  // silence clang-tidy about unused type
    (void)unused;

    // library path: certified interval expansion of the decimal-free enclosure
    IntervalCF icf(encl.lo_num, encl.lo_den, encl.hi_num, encl.hi_den);
    std::vector<std::uint64_t> lib;
    for (int i = 0; i < 8; ++i) lib.push_back(icf.next().value());
    CHECK(lib == std::vector<std::uint64_t>{1, 2, 1, 1, 4, 1, 1, 6});

    // oracle: exhaustive argmin_{k < 500} ||k alpha|| at 512-bit precision
    Fixed a512 = Fixed::from_rational(encl.lo_num, encl.lo_den, 512);
    std::vector<std::uint64_t> records;
    double best = 1.0;
    for (std::uint64_t k = 1; k < 500; ++k) {
        double d = a512.mul_u64_mod1(k).norm_dist();
        if (d < best) {
            best = d;
            records.push_back(k);
        }
    }
    // records must equal the deduplicated convergent denominators
    auto cf = cf_expand(RotationDescriptor(QuotientListDescriptor{lib}), 8);
    REQUIRE(records.size() >= cf.size());
    for (std::size_t s = 0; s < cf.size(); ++s) CHECK(cf.q(s).to_u64() == records[s]);
}

TEST_CASE("rational inputs are rejected") {
    CHECK_THROWS_AS(cf_expand("surd:1,0,5,3", 4), RationalInput);   // 1/3
    CHECK_THROWS_AS(cf_expand("surd:1,1,4,6", 4), RationalInput);   // (1+2)/6
}

TEST_CASE("decimal strings certify quotients up to their precision only") {
    auto cf = cf_expand("dec:0.6180339887498948482045868343656381177203", 12);
    CHECK(cf.quotients() == std::vector<std::uint64_t>(12, 1));
    CHECK_THROWS_AS(cf_expand("dec:0.61803", 20), PrecisionExhausted);
}

TEST_CASE("descriptor parse errors") {
    CHECK_THROWS_AS(parse_rotation("nope:1"), ConfigInvalid);
    CHECK_THROWS_AS(parse_rotation("cf:3,0,2"), ConfigInvalid);
    CHECK_THROWS_AS(parse_rotation("dec:1.5"), ConfigInvalid);
    CHECK_THROWS_AS(cf_expand("surd:1,1,5,0", 3), ConfigInvalid);
    CHECK_THROWS_AS(cf_expand("surd:3,1,5,2", 3), ConfigInvalid);  // > 1
}

TEST_CASE("best-approximation bracket, golden mean, exact symbolic endpoints") {
    auto cf = cf_expand("surd:-1,1,5,2", 24);
    auto rows = verify_best_approx(cf, 20);
    REQUIRE(rows.size() == 21);
    // s = 0: 1/3 <= ||alpha|| = (3 - sqrt 5)/2 <= 1/2
    const double v0 = (3.0 - std::sqrt(5.0)) / 2.0;
    CHECK(rows[0].lower == doctest::Approx(1.0 / 3));
    CHECK(rows[0].upper == doctest::Approx(0.5));
    CHECK(rows[0].value_lo == doctest::Approx(v0).epsilon(1e-12));
    CHECK(rows[0].value_hi == doctest::Approx(v0).epsilon(1e-12));
    CHECK(rows[0].pass());
    // s = 1: 1/5 <= ||2 alpha|| = sqrt 5 - 2 <= 1/3
    const double v1 = std::sqrt(5.0) - 2.0;
    CHECK(rows[1].lower == doctest::Approx(0.2));
    CHECK(rows[1].upper == doctest::Approx(1.0 / 3));
    CHECK(rows[1].value_lo == doctest::Approx(v1).epsilon(1e-12));
    CHECK(rows[1].pass());
    for (const auto& r : rows) CHECK(r.pass());
}

TEST_CASE("bracket on random bounded-quotient expansions") {
    Rng rng(2026);
    for (int trial = 0; trial < 100; ++trial) {
        QuotientListDescriptor d;
        for (int s = 0; s < 26; ++s) d.a.push_back(1 + rng.below(10));
        auto cf = cf_expand(RotationDescriptor(d), 26);
        // raw recursion holds exactly
        for (std::size_t s = 1; s + 1 <= cf.depth(); ++s) {
            BigUInt expect = cf.raw_q(s).mul_u64(d.a[s]) + cf.raw_q(s - 1);
            CHECK(expect == cf.raw_q(s + 1));
        }
        // strictly increasing dedup denominators
        for (std::size_t s = 0; s + 1 < cf.size(); ++s) CHECK(cf.q(s) < cf.q(s + 1));
        auto rows = verify_best_approx(cf, cf.size() - 2);
        for (const auto& r : rows) {
            CHECK(r.lower_ok);
            CHECK(r.upper_ok);
        }
    }
}

TEST_CASE("interval CF matches the quotient-list route") {
    // golden to 40 decimal digits certifies well past depth 12
    auto dec = cf_expand("dec:0.6180339887498948482045868343656381177203", 12);
    auto surd = cf_expand("surd:-1,1,5,2", 12);
    CHECK(dec.quotients() == surd.quotients());
    for (std::size_t s = 0; s < 12; ++s) CHECK(dec.q(s) == surd.q(s));
}
