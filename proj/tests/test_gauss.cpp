// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <rotlab/gauss.hpp>
#include <rotlab/rng.hpp>
#include <rotlab/sieve.hpp>
#include <rotlab/stats.hpp>

using namespace rotlab;

TEST_CASE("invariant sampler: analytic CDF points and KS") {
    auto xs = gauss_invariant_sample(100000, 11);
    std::uint64_t below_half = 0;
    for (double x : xs) {
        CHECK(x >= 0);
        CHECK(x < 1);
        below_half += x <= 0.5;
    }
    double p = double(below_half) / double(xs.size());
    double expect = gauss_cdf(0.5);  // log2(3/2) ~ 0.585
    CHECK(expect == doctest::Approx(std::log(1.5) / std::log(2.0)));
    CHECK(std::fabs(p - expect) <= 3 * binom_stderr(p, xs.size()));
    double D = ks_statistic(xs, gauss_cdf);
    CHECK(ks_pvalue(D, xs.size()) > 0.01);
}

TEST_CASE("one Gauss step preserves the invariant law (KS on the pushforward)") {
    auto xs = gauss_invariant_sample(100000, 13);
    for (double& x : xs) {
        double inv = 1.0 / x;
        x = inv - std::floor(inv);
    }
    double D = ks_statistic(xs, gauss_cdf);
    CHECK(ks_pvalue(D, xs.size()) > 0.01);
}

TEST_CASE("certified Gauss quotients reproduce the arithmetic module") {
    auto golden = cf_expand("surd:-1,1,5,2", 30, 512);
    auto got = gauss_quotients(golden.alpha(), 30);
    CHECK(std::vector<std::uint64_t>(got.begin(), got.begin() + 30) == golden.quotients());
    auto silver = cf_expand("surd:-1,1,2,1", 30, 512);
    CHECK(gauss_quotients(silver.alpha(), 25) ==
          std::vector<std::uint64_t>(25, 2));
}

TEST_CASE("certified quotients equal the exact rational Euclid oracle") {
    Rng rng(21);
    for (int it = 0; it < 1000; ++it) {
        Fixed x = rng.next_fixed(512);
        std::vector<std::uint64_t> certified;
        try {
            certified = gauss_quotients(x, 50);
        } catch (const PrecisionExhausted&) {
            continue;  // astronomically unlikely at 512 bits / depth 50
        }
        // oracle: exact Euclid on the dyadic rational x = X / 2^512
        BigUInt num = x.to_int(), den = BigUInt::pow2(512);
        for (std::size_t k = 0; k < 50; ++k) {
            auto [q, r] = BigUInt::divmod(den, num);
            CHECK(q.to_u64() == certified[k]);
            den = num;
            num = r;
            if (num.is_zero()) break;
        }
    }
}

TEST_CASE("gauss quotient precision failure is honest") {
    Fixed x = Fixed::from_double(0.5, 64);
    x.raw()[0] |= 1;  // make it irrational-looking but only 64 bits deep
    CHECK_THROWS_AS(gauss_quotients(x, 60), PrecisionExhausted);
}

TEST_CASE("correlation grid: calibration rows") {
    const double a = 0.25;
    auto rows = gauss_correlation_grid(a, 6, 200000, 5, 2);
    const double mu = gauss_cdf(a);
    for (const auto& r : rows) {
        if (r.k == r.l) {
            // degenerate diagonal: ratio = 1/mu analytically
            CHECK(std::fabs(r.ratio - 1.0 / mu) <= 3 * r.stderr_ + 1e-12);
        } else {
            // symmetry is exact by construction
            for (const auto& r2 : rows)
                if (r2.k == r.l && r2.l == r.k) CHECK(r2.ratio == r.ratio);
        }
    }
    auto full = gauss_correlation_grid(1.0, 2, 1000, 5, 1);
    for (const auto& r : full) CHECK(r.ratio == doctest::Approx(1.0));
}

TEST_CASE("block quotient statistics") {
    SUBCASE("huge threshold kills every block") {
        auto rows = block_quotient_stat(2, 5, 1e9, 4000, 3, 768, 2);
        for (const auto& r : rows) CHECK(r.fraction == 0.0);
    }
    SUBCASE("fractions decrease in n and are deterministic") {
        auto rows = block_quotient_stat(3, 8, 2.0, 20000, 17, 768, 2);
        auto rows2 = block_quotient_stat(3, 8, 2.0, 20000, 17, 768, 1);
        REQUIRE(rows.size() == 6);
        for (std::size_t i = 0; i < rows.size(); ++i)
            CHECK(rows[i].fraction == rows2[i].fraction);
        for (std::size_t i = 0; i + 1 < rows.size(); ++i)
            CHECK(rows[i + 1].fraction <= rows[i].fraction + 3 * rows[i].stderr_);
    }
}

TEST_CASE("e-membership partial sums ride on the sieve") {
    auto golden = cf_expand("surd:-1,1,5,2", 24);
    auto rep = sieve(golden, XRule::log78(), 20);
    CHECK(e_membership_partial_sums(golden, 20) == rep.e_partial);
    CHECK(e_membership_partial_sums(golden, 0).empty());
    CHECK(rep.e_partial.back() == rep.e_partial[10]);  // settled well before depth
    QuotientListDescriptor d;
    for (int s = 1; s <= 12; ++s) d.a.push_back(std::uint64_t(1) << s);
    auto fast = cf_expand(RotationDescriptor(d), 12);
    auto rep2 = sieve(fast, XRule::log78(), 11);
    int grow = 0;
    for (std::size_t s = 2; s < rep2.e_partial.size(); ++s)
        grow += rep2.e_partial[s] > rep2.e_partial[s - 1];
    CHECK(grow >= 7);
}
