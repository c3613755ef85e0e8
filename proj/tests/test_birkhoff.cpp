// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <rotlab/birkhoff.hpp>
#include <rotlab/rng.hpp>

using namespace rotlab;

namespace {

CirclePoint pt(double x) { return CirclePoint(Fixed::from_double(x, 256), 1); }

// 512-bit oracle: regenerate the orbit at doubled precision independent of the
// engine and sum with long double transcendentals.
long double oracle_log_sum(const ContinuedFraction& cf512, double x, double A,
                           double B, double r, std::int64_t n) {
    Fixed pos = Fixed::from_double(x, 512);
    long double acc = 0;
    auto term = [&](const Fixed& p) {
        long double ur = (long double)p.to_double();
        long double ul = (long double)p.to_double_complement();
        return (long double)r - (long double)A * logl(ur) - (long double)B * logl(ul);
    };
    if (n >= 0) {
        for (std::int64_t j = 0; j < n; ++j) {
            acc += term(pos);
            pos.add_mod1(cf512.alpha());
        }
        return acc;
    }
    for (std::int64_t j = 0; j < -n; ++j) {
        pos.sub_mod1(cf512.alpha());
        acc += term(pos);
    }
    return -acc;
}

}  // namespace

TEST_CASE("trivial values and the frozen three-term example") {
    auto cf = cf_expand("surd:-1,1,5,2", 30);
    auto spec = CeilingSpec::log_single(0.0, 1.0, 0.0, 1.0);
    CHECK(birkhoff_sum(spec, cf, pt(0.1), 0) == 0.0);
    CHECK(birkhoff_sum(spec, cf, pt(0.1), 1) ==
          doctest::Approx(spec.eval_f(pt(0.1))).epsilon(1e-15));
    // frozen from the 512-bit direct-summation oracle
    const double expect = 6.72426529145077347;
    CHECK(birkhoff_sum(spec, cf, pt(0.1), 3) == doctest::Approx(expect).epsilon(1e-14));
    auto cf512 = cf_expand("surd:-1,1,5,2", 30, 512);
    CHECK(double(oracle_log_sum(cf512, 0.1, 1, 0, 1, 3)) ==
          doctest::Approx(expect).epsilon(1e-16));
    // n = -1 is minus the value one step back
    CirclePoint back = pt(0.1);
    back.retreat(cf.alpha());
    CHECK(birkhoff_sum(spec, cf, pt(0.1), -1) ==
          doctest::Approx(-spec.eval_f(back)).epsilon(1e-14));
}

TEST_CASE("derivative sums: small cases against direct evaluation") {
    auto cf = cf_expand("surd:-1,1,2,1", 30);
    auto spec = CeilingSpec::power_single(0.3, -0.5, 1.0);
    CHECK(birkhoff_sum_prime(spec, cf, pt(0.71), 0) == 0.0);
    CHECK(birkhoff_sum_prime(spec, cf, pt(0.71), 1) ==
          doctest::Approx(spec.eval_f_prime(pt(0.71))).epsilon(1e-14));
    double direct = 0;
    CirclePoint p = pt(0.71);
    for (int j = 0; j < 5; ++j) {
        direct += spec.eval_f_prime(p);
        p.advance(cf.alpha());
    }
    CHECK(birkhoff_sum_prime(spec, cf, pt(0.71), 5) ==
          doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("naive and accelerated paths agree to 1e-9 relative") {
    auto cf = cf_expand("surd:-1,1,5,2", 40);
    auto log_spec = CeilingSpec::log_single(0.0, 1.0, 0.0, 1.0);
    auto pow_spec = CeilingSpec::power_single(0.25, -0.5, 1.0);
    Rng rng(17);
    for (const auto& spec : {log_spec, pow_spec}) {
        for (int it = 0; it < 6; ++it) {
            double x = rng.next_double();
            std::int64_t n = std::int64_t(rng.below(100000)) + 1;
            if (it % 2) n = -n;
            double fast = birkhoff_sum(spec, cf, pt(x), n);
            double naive = birkhoff_sum_naive(spec, cf, pt(x), n);
            CHECK(std::fabs(fast - naive) <= 1e-9 * std::max(1.0, std::fabs(naive)));
            double fp = birkhoff_sum_prime(spec, cf, pt(x), n % 5000);
            double np = birkhoff_sum_prime_naive(spec, cf, pt(x), n % 5000);
            CHECK(std::fabs(fp - np) <= 1e-9 * std::max(1.0, std::fabs(np)));
        }
    }
}

TEST_CASE("cocycle identity and antisymmetry") {
    auto cf = cf_expand("surd:-1,1,5,2", 40);
    auto spec = CeilingSpec::log_single(0.0, 1.0, 0.0, 1.0);
    Rng rng(23);
    for (int it = 0; it < 50; ++it) {
        double x = rng.next_double();
        std::int64_t m = std::int64_t(rng.below(10000)) - 5000;
        std::int64_t n = std::int64_t(rng.below(10000)) - 5000;
        CirclePoint p = pt(x);
        CirclePoint pm = p;
        pm.jump(cf.alpha(), m);
        double lhs = birkhoff_sum(spec, cf, p, m + n);
        double rhs = birkhoff_sum(spec, cf, p, m) + birkhoff_sum(spec, cf, pm, n);
        CHECK(std::fabs(lhs - rhs) <=
              1e-12 * double(std::llabs(m) + std::llabs(n) + 1));
        // antisymmetry: f^(-n)(x) = -f^(n)(T^-n x)
        CirclePoint pb = p;
        pb.jump(cf.alpha(), -n);
        double anti = -birkhoff_sum(spec, cf, pb, n);
        CHECK(std::fabs(birkhoff_sum(spec, cf, p, -n) - anti) <=
              1e-12 * double(std::llabs(n) + 1));
    }
}

TEST_CASE("ostrowski blocks reassemble n") {
    auto cf = cf_expand("surd:-1,1,2,1", 30);
    Rng rng(4);
    for (int it = 0; it < 200; ++it) {
        std::uint64_t n = rng.below(2000000) + 1;
        std::uint64_t total = 0;
        std::size_t prev = SIZE_MAX;
        for (auto [s, c] : ostrowski_blocks(cf, n)) {
            CHECK(s < prev);
            prev = s;
            CHECK(c >= 1);
            total += cf.q(s).to_u64() * c;
        }
        CHECK(total == n);
    }
}

TEST_CASE("singularity proximity carries the offending index") {
    auto cf = cf_expand("surd:-1,1,5,2", 30);
    auto spec = CeilingSpec::log_single(0.0, 1.0, 0.0, 1.0);
    // place the 5th orbit point within sigma_min of the singularity
    Fixed x0(256);
    Fixed tiny = Fixed::from_rational(BigUInt(1), BigUInt::pow2(120), 256);
    x0.add_mod1(tiny);
    x0.sub_mod1(cf.alpha().mul_u64_mod1(5));
    try {
        birkhoff_sum(spec, cf, CirclePoint(x0, 1), 10);
        FAIL("expected SingularityProximity");
    } catch (const SingularityProximity& e) {
        CHECK(e.orbit_index == 5);
        CHECK(e.singularity == 0);
    }
}

TEST_CASE("denjoy-koksma bounds for both pure models") {
    auto golden = cf_expand("surd:-1,1,5,2", 30);
    auto silver = cf_expand("surd:-1,1,2,1", 30);
    auto h_log = CeilingSpec::log_single(0.0, 1.0, 0.0, 0.0);
    auto h_pow = CeilingSpec::power_single(0.0, -0.5, 0.0);

    auto rep = dk_verify(h_log, golden, pt(0.37), 6);
    CHECK(rep.pass);
    auto rep2 = dk_verify(h_pow, silver, pt(0.81), 5);
    CHECK(rep2.pass);
    // degenerate single-term check at s = 0
    CHECK(dk_verify(h_log, golden, pt(0.41), 0).pass);

    Rng rng(6);
    for (std::size_t s = 0; s <= 12; ++s) {
        for (int it = 0; it < 20; ++it) {
            double x = rng.next_double();
            CHECK(dk_verify(h_log, golden, pt(x), s).pass);
            CHECK(dk_verify(h_pow, silver, pt(x), s).pass);
        }
    }

    // direct-summation oracle for the reported value
    double direct = 0;
    CirclePoint p = pt(0.37);
    for (std::uint64_t j = 0; j < golden.q(6).to_u64(); ++j) {
        direct += -1.0 / p.pos().to_double();
        p.advance(golden.alpha());
    }
    CHECK(rep.value == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("truncated-BV Denjoy-Koksma inequality") {
    // \bar f caps the singular core at distance 1/(2 q_s); then
    // |\bar f^(q_s)(x) - q_s \int \bar f| <= Var \bar f.
    auto cf = cf_expand("surd:-1,1,5,2", 30);
    Rng rng(8);
    for (std::size_t s : {4u, 7u, 10u}) {
        std::uint64_t qs = cf.q(s).to_u64();
        double cut = 1.0 / (2.0 * double(qs));
        auto fbar = [&](double u) { return -std::log(std::max(u, cut)); };
        // int_0^1 fbar = cut*(-ln cut) + int_cut^1 (-ln u) = 1 - cut
        double integral = 1.0 - cut;
        double var = -std::log(cut);  // fbar decreases from -ln cut to 0
        for (int it = 0; it < 25; ++it) {
            Fixed x0 = rng.next_fixed(256);
            double sum = 0;
            Fixed p = x0;
            for (std::uint64_t j = 0; j < qs; ++j) {
                sum += fbar(p.to_double());
                p.add_mod1(cf.alpha());
            }
            CHECK(std::fabs(sum - double(qs) * integral) <= var + 1e-9);
        }
    }
}

TEST_CASE("pair difference prefix matches two independent sums") {
    auto cf = cf_expand("surd:-1,1,5,2", 30);
    auto log_spec = CeilingSpec::log_single(0.0, 1.0, 0.5, 1.0);
    auto pow_spec = CeilingSpec::power_single(0.25, -0.5, 1.0);
    pow_spec.sing[0].B = 0.5;
    Fixed delta = Fixed::from_double(1e-7, 256);
    CirclePoint x = pt(0.123);
    CirclePoint y(x.pos().plus(delta), 1);
    for (const auto& spec : {log_spec, pow_spec}) {
        PairDiff pd(spec, cf, x, delta);
        for (int sigma : {1, -1}) {
            std::vector<double> out;
            pd.prefix(sigma, 200, out);
            for (std::uint64_t n : {1u, 17u, 200u}) {
                double a = birkhoff_sum(spec, cf, x, sigma * std::int64_t(n));
                double b = birkhoff_sum(spec, cf, y, sigma * std::int64_t(n));
                CHECK(out[n] == doctest::Approx(a - b).epsilon(1e-8));
            }
            auto blocks = pd.block_prefix(sigma, 50, 4);
            CHECK(blocks[0] == 0.0);
            for (int R = 1; R <= 4; ++R)
                CHECK(blocks[R] == doctest::Approx(out[50 * R]).epsilon(1e-10));
        }
    }
}

TEST_CASE("pair straddling a singularity is rejected with the index") {
    auto cf = cf_expand("surd:-1,1,5,2", 30);
    auto spec = CeilingSpec::log_single(0.5, 1.0, 0.0, 1.0);
    // x just left of the singularity, y just right of it
    Fixed x0 = Fixed::from_double(0.5, 256);
    Fixed eps = Fixed::from_rational(BigUInt(1), BigUInt::pow2(90), 256);
    x0.sub_mod1(eps);
    Fixed delta = eps.plus(eps);
    PairDiff pd(spec, cf, CirclePoint(x0, 1), delta);
    std::vector<double> out;
    CHECK_THROWS_AS(pd.prefix(1, 3, out), NonResonanceViolated);
}

TEST_CASE("block bracket on a sieved golden pair") {
    auto cf = cf_expand("surd:-1,1,5,2", 40);
    auto spec = CeilingSpec::log_single(0.0, 1.0, 0.0, 1.0);
    const std::size_t s = 10;
    double qs = cf.q_dbl(s);
    double scale = 1.0 / (qs * std::log(2.0 * qs));
    double vs = default_v_s(cf, s, 2.0);
    Rng rng(31);
    int done = 0, attempts = 0;
    while (done < 5 && attempts < 500) {
        ++attempts;
        Fixed x0 = rng.next_fixed(256);
        Fixed delta = Fixed::from_double(scale * 0.8, 256);
        CirclePoint x(x0, 1);
        PairDiff probe(spec, cf, x, delta);
        if (!probe.nr_scan(1, cf.q(s).to_u64(), std::max(2.0 * vs, scale)).clear)
            continue;
        auto rep = block_bracket_check(spec, cf, x, delta, s, 0.9, vs);
        CHECK(rep.pass);
        // direct summation oracle for the middle member
        double a = birkhoff_sum(spec, cf, x, std::int64_t(cf.q(s).to_u64()));
        CirclePoint y(x0.plus(delta), 1);
        double b = birkhoff_sum(spec, cf, y, std::int64_t(cf.q(s).to_u64()));
        CHECK(rep.mid == doctest::Approx(a - b).epsilon(1e-9));
        ++done;
    }
    CHECK(done == 5);
}

TEST_CASE("symmetric spec is refused upstream") {
    auto cf = cf_expand("surd:-1,1,5,2", 30);
    auto spec = CeilingSpec::log_single(0.0, 1.0, 1.0, 1.0);
    Fixed delta = Fixed::from_double(1e-6, 256);
    CHECK_THROWS_AS(
        block_bracket_check(spec, cf, pt(0.3), delta, 8, 0.0,
                            default_v_s(cf, 8, 2.0)),
        ConfigInvalid);
}

TEST_CASE("drift sequence with no blocks is the zero prefix") {
    auto cf = cf_expand("surd:-1,1,5,2", 30);
    auto spec = CeilingSpec::log_single(0.0, 1.0, 0.0, 1.0);
    Fixed delta = Fixed::from_double(1e-6, 256);
    auto seq = drift_sequence(spec, cf, pt(0.3), delta, 6, 0, 0.9,
                              default_v_s(cf, 6, 2.0));
    CHECK(seq.e == std::vector<double>{0.0});
    CHECK(seq.increments.empty());
}

TEST_CASE("drift sequence brackets and increments") {
    auto cf = cf_expand("surd:-1,1,2,1", 40);  // sqrt2-1: q_{s+1} > 2 q_s
    auto spec = CeilingSpec::log_single(0.0, 1.0, 0.0, 1.0);
    const std::size_t s = 9;
    double qs = cf.q_dbl(s);
    double hs = std::log(2.0 * qs);
    double scale = 1.0 / (qs * hs);
    double vs = default_v_s(cf, s, 2.0);
    Rng rng(41);
    int done = 0, attempts = 0;
    const std::uint64_t R_max = 3;
    while (done < 3 && attempts < 5000) {
        ++attempts;
        Fixed x0 = rng.next_fixed(256);
        Fixed delta = Fixed::from_double(scale * 0.7, 256);
        CirclePoint x(x0, 1);
        PairDiff probe(spec, cf, x, delta);
        if (!probe.nr_scan(1, R_max * cf.q(s).to_u64(), std::max(2.0 * vs, scale)).clear)
            continue;
        auto seq = drift_sequence(spec, cf, x, delta, s, R_max, 0.9, vs);
        REQUIRE(seq.e.size() == R_max + 1);
        CHECK(seq.e[0] == 0.0);
        for (std::uint64_t R = 1; R <= R_max; ++R) {
            double lo = double(R) * 0.9 * qs * hs * delta.to_double();
            double hi = double(R) * 1.9 * qs * hs * delta.to_double();
            CHECK(seq.e[R] >= lo);
            CHECK(seq.e[R] <= hi);
        }
        for (double inc : seq.increments) CHECK(std::fabs(inc) < 1.9);
        ++done;
    }
    CHECK(done == 3);
}
