// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <rotlab/rng.hpp>
#include <rotlab/sieve.hpp>

using namespace rotlab;

TEST_CASE("golden mean, default rule: K_alpha cofinitely true, sums settle") {
    auto cf = cf_expand("surd:-1,1,5,2", 24);
    auto rep = sieve(cf, XRule::log78(), 20);
    CHECK(rep.bounded_type);
    CHECK(rep.max_quotient == 1);
    // bounded quotients force q_{s+1} < q_s ln^{7/8} q_s for all large s
    std::size_t s_star = rep.depth;
    for (std::size_t s = rep.depth; s-- > 0;) {
        if (!rep.in_K[s]) {
            s_star = s + 1;
            break;
        }
        s_star = s;
    }
    CHECK(s_star < 8);
    for (std::size_t s = s_star; s < rep.depth; ++s) CHECK(rep.in_K[s]);
    // partial sums constant past s_star
    CHECK(rep.e_partial.back() == rep.e_partial[s_star]);
    // direct-evaluation oracle for the partial sums
    double expect = 0;
    for (std::size_t s = 0; s < rep.depth; ++s) {
        double lnq = ln_big(cf.q(s));
        if (!rep.in_K[s] && lnq > 0) expect += std::pow(lnq, -7.0 / 8.0);
        CHECK(rep.e_partial[s] == doctest::Approx(expect).epsilon(1e-12));
    }
    // bounded type forces the Diophantine exponent estimate to zero
    CHECK(rep.dc_tau_estimate <= 0.05);
}

TEST_CASE("fast-growing quotients leave K_alpha and keep accumulating") {
    QuotientListDescriptor d;
    for (int s = 1; s <= 10; ++s) d.a.push_back(std::uint64_t(1) << s);
    auto cf = cf_expand(RotationDescriptor(d), 10);
    auto rep = sieve(cf, XRule::log78(), 9);
    std::size_t out = 0;
    for (std::size_t s = 1; s < 9; ++s) {
        if (!rep.in_K[s]) {
            ++out;
            CHECK(rep.e_partial[s] > rep.e_partial[s - 1]);
        }
    }
    CHECK(out >= 6);
    CHECK_FALSE(rep.bounded_type);  // default bound 100 < 2^10
    CHECK(rep.dc_tau_estimate > 0.05);
}

TEST_CASE("the inverse-square rule is accepted past its validity threshold") {
    auto cf = cf_expand("surd:-1,1,2,1", 16);
    auto rep = sieve(cf, XRule::inv_s2(), 14);
    CHECK(rep.s_start >= 1);
    for (std::size_t s = rep.s_start; s < 14; ++s)
        CHECK(rep.x_s[s] < 1.0 / cf.q_dbl(s));
}

TEST_CASE("rule violations are rejected") {
    auto cf = cf_expand("surd:-1,1,5,2", 12);
    XRule bad{"bad", [](std::size_t, double qs) { return 2.0 / qs; }};
    CHECK_THROWS_AS(sieve(cf, bad, 10, 0), RuleViolation);
}

TEST_CASE("single singularity is always badly approximable") {
    auto cf = cf_expand("surd:-1,1,5,2", 16);
    std::vector<Fixed> pts{Fixed::from_double(0.3, cf.bits())};
    auto rep = badly_approx_check(cf, pts, 2.0, 8, 50, 11);
    CHECK(rep.pass);
}

TEST_CASE("orbit-resonant pair fails with a witness") {
    auto cf = cf_expand("surd:-1,1,5,2", 16);
    Fixed a1 = Fixed::from_double(0.3, cf.bits());
    Fixed a2 = a1.plus(cf.alpha().mul_u64_mod1(cf.q(3).to_u64()));
    auto rep = badly_approx_check(cf, {a1, a2}, 2.0, 9, 40, 5);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.witness.has_value());
    REQUIRE(rep.witness->hit_indices.size() >= 2);
    // the witness separation must realize a near-resonance of a_2 - a_1
    // within the double window, as the brute-force semantics demand
    auto& h = rep.witness->hit_indices;
    std::uint64_t sep = h[1] - h[0];
    Fixed d21 = a2.minus(a1);
    Fixed ja = cf.alpha().mul_u64_mod1(sep);
    double resid = std::min(std::fabs(signed_circle_dist(ja, d21)),
                            std::fabs(signed_circle_dist(ja.complement(), d21)));
    CHECK(resid <= 1.0 / (2.0 * cf.q_dbl(rep.witness->s)));
}

TEST_CASE("0 and 1/2 are jointly badly approximable for the golden mean") {
    auto cf = cf_expand("surd:-1,1,5,2", 18);
    std::vector<Fixed> pts{Fixed(cf.bits()), Fixed::from_double(0.5, cf.bits())};
    // C must clear the half-denominator resonance: when q_{s+1} is even,
    // j = q_{s+1}/2 < q_s has ||j alpha - 1/2|| = ||q_{s+1} alpha||/2, which
    // approaches 0.138/q_s; any C > 7.24 works, smaller C genuinely fails.
    auto rep = badly_approx_check(cf, pts, 8.0, 12, 200, 7);
    CHECK(rep.pass);
}

TEST_CASE("0 and 1/2 at C = 2 fail through the even-denominator resonance") {
    // Every third golden denominator is even with odd numerator, putting
    // j = q_{s-1}/2 within 1/(2 q_s) of the half shift; the scan must find it.
    auto cf = cf_expand("surd:-1,1,5,2", 18);
    std::vector<Fixed> pts{Fixed(cf.bits()), Fixed::from_double(0.5, cf.bits())};
    auto rep = badly_approx_check(cf, pts, 2.0, 12, 200, 7);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.witness.has_value());
    auto& w = *rep.witness;
    std::uint64_t sep = w.hit_indices[1] - w.hit_indices[0];
    // the separation realizes || sep*alpha - 1/2 || <= 1/(C q_s)
    double resid = std::fabs(
        signed_circle_dist(cf.alpha().mul_u64_mod1(sep), Fixed::from_double(0.5, cf.bits())));
    CHECK(resid <= 1.0 / (2.0 * cf.q_dbl(w.s)));
}

TEST_CASE("three-gap statistics") {
    auto cf = cf_expand("surd:-1,1,5,2", 30);
    CirclePoint x(Fixed::from_double(0.1234, cf.bits()), 1);

    SUBCASE("n = 2") {
        auto st = three_gap_stats(cf, x, 2);
        REQUIRE(st.gaps.size() == 2);
        double alpha = cf.alpha().to_double();
        CHECK(st.gaps[0].first == doctest::Approx(1 - alpha).epsilon(1e-12));
        CHECK(st.gaps[1].first == doctest::Approx(alpha).epsilon(1e-12));
    }

    SUBCASE("n = q_s gives exactly two gap lengths") {
        for (std::size_t s : {5u, 8u, 11u}) {
            auto st = three_gap_stats(cf, x, cf.q(s).to_u64());
            CHECK(st.gaps.size() == 2);
        }
    }

    SUBCASE("precision budget is enforced") {
        auto coarse = cf_expand("surd:-1,1,5,2", 30, 64);
        CirclePoint y(Fixed::from_double(0.3, 64), 1);
        CHECK_THROWS_AS(three_gap_stats(coarse, y, 10000), PrecisionExhausted);
    }

    SUBCASE("never more than three distinct lengths up to 10^4") {
        Rng rng(3);
        for (int it = 0; it < 12; ++it) {
            std::uint64_t n = 2 + rng.below(10000);
            CirclePoint y(rng.next_fixed(cf.bits()), 1);
            auto st = three_gap_stats(cf, y, n);
            CHECK(st.gaps.size() <= 3);
            std::uint64_t total = 0;
            double len = 0;
            for (auto& [g, c] : st.gaps) {
                total += c;
                len += g * double(c);
            }
            CHECK(total == n);
            CHECK(len == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}
