// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <rotlab/mixing.hpp>

using namespace rotlab;

namespace {

struct Lab {
    ContinuedFraction cf = cf_expand("surd:-1,1,5,2", 40);
    SpecialFlow flow{CeilingSpec::power_single(0.0, -0.5, 1.0), cf};
};

}  // namespace

TEST_CASE("rectangle validation and measure") {
    Lab lab;
    auto A = RectSet::make(0.25, 0.25, 1.5, lab.flow);
    CHECK(A.measure(lab.flow) == doctest::Approx(0.25 * 1.5 / 3.0));
    // too tall over its base: f dips to ~2.07 near x = 0.9375
    CHECK_THROWS_AS(RectSet::make(0.875, 0.125, 2.05, lab.flow), ConfigInvalid);
}

TEST_CASE("t = 0 identities are exact") {
    Lab lab;
    auto A = RectSet::make(0.25, 0.25, 1.5, lab.flow);
    auto B = RectSet::make(0.625, 0.25, 1.5, lab.flow);
    auto same = correlation2(lab.flow, A, A, 0.0, 20000, 1, 2);
    double muA = A.measure(lab.flow);
    CHECK(same.estimate == doctest::Approx(muA - muA * muA).epsilon(1e-12));
    CHECK(same.stderr_ == 0.0);
    auto disj = correlation2(lab.flow, A, B, 0.0, 20000, 1, 2);
    CHECK(disj.estimate == doctest::Approx(-muA * B.measure(lab.flow)).epsilon(1e-12));

    auto trip = correlation3(lab.flow, A, A, A, 0.0, 0.0, 20000, 1, 2);
    CHECK(trip.estimate == doctest::Approx(muA - muA * muA * muA).epsilon(1e-12));
    auto trip2 = correlation3(lab.flow, A, B, B, 0.0, 0.0, 20000, 1, 2);
    CHECK(trip2.estimate ==
          doctest::Approx(-muA * B.measure(lab.flow) * B.measure(lab.flow)).epsilon(1e-12));
}

TEST_CASE("monte-carlo rate: quadrupling samples halves the stderr") {
    Lab lab;
    auto A = RectSet::make(0.25, 0.25, 1.5, lab.flow);
    auto B = RectSet::make(0.625, 0.25, 1.5, lab.flow);
    auto r1 = correlation2(lab.flow, A, B, 7.5, 20000, 5, 2);
    auto r4 = correlation2(lab.flow, A, B, 7.5, 80000, 5, 2);
    CHECK(r4.stderr_ <= 0.5 * 1.2 * r1.stderr_);
    CHECK(r4.stderr_ >= 0.5 / 1.2 * r1.stderr_);
}

TEST_CASE("determinism and thread-count independence") {
    Lab lab;
    auto A = RectSet::make(0.25, 0.25, 1.5, lab.flow);
    auto B = RectSet::make(0.625, 0.25, 1.5, lab.flow);
    auto r1 = correlation2(lab.flow, A, B, 12.0, 30000, 42, 1);
    auto r2 = correlation2(lab.flow, A, B, 12.0, 30000, 42, 2);
    CHECK(r1.estimate == r2.estimate);
    CHECK(r1.aborts == r2.aborts);
}

TEST_CASE("decay_scan: empty grid, determinism, reversed grid") {
    Lab lab;
    auto A = RectSet::make(0.25, 0.25, 1.5, lab.flow);
    auto B = RectSet::make(0.625, 0.25, 1.5, lab.flow);
    CHECK(decay_scan(lab.flow, A, B, {}, 2, 1000, 3, 2).empty());
    std::vector<double> grid{1.0, 4.0, 9.0, 16.0};
    auto rows = decay_scan(lab.flow, A, B, grid, 2, 5000, 3, 2);
    auto rows2 = decay_scan(lab.flow, A, B, grid, 2, 5000, 3, 2);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(rows[i].estimate == rows2[i].estimate);
    std::vector<double> rgrid{16.0, 9.0, 4.0, 1.0};
    auto rrows = decay_scan(lab.flow, A, B, rgrid, 2, 5000, 3, 2);
    for (std::size_t i = 0; i < 4; ++i) CHECK(rrows[3 - i].estimate == rows[i].estimate);
    auto rows3 = decay_scan(lab.flow, A, B, {5.0, 10.0}, 3, 5000, 3, 2);
    CHECK(rows3.size() == 2);
    CHECK(rows3[0].order == 3);
    CHECK(rows3[0].t2 == doctest::Approx(10.0));
}

TEST_CASE("equivariance under joint rotation by an exact dyadic angle") {
    // rotate singularity, sets, and samples by 1/4: the whole computation
    // shifts bit-for-bit, so the estimates agree exactly
    auto cf = cf_expand("surd:-1,1,5,2", 40);
    SpecialFlow f0(CeilingSpec::power_single(0.0, -0.5, 1.0), cf);
    SpecialFlow f1(CeilingSpec::power_single(0.25, -0.5, 1.0), cf);
    auto A0 = RectSet::make(0.25, 0.25, 1.5, f0);
    auto B0 = RectSet::make(0.625, 0.125, 1.5, f0);
    auto A1 = RectSet::make(0.5, 0.25, 1.5, f1);
    auto B1 = RectSet::make(0.875, 0.125, 1.5, f1);
    auto r0 = correlation2(f0, A0, B0, 17.0, 20000, 9, 2);
    auto r1 = correlation2(f1, A1, B1, 17.0, 20000, 9, 2);
    CHECK(r0.estimate == r1.estimate);
    CHECK(r0.aborts == r1.aborts);
}
