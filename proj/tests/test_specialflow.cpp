// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <rotlab/rng.hpp>
#include <rotlab/specialflow.hpp>
#include <rotlab/stats.hpp>

using namespace rotlab;

namespace {

CirclePoint pt(double x) { return CirclePoint(Fixed::from_double(x, 256), 1); }

struct Lab {
    ContinuedFraction cf = cf_expand("surd:-1,1,5,2", 40);
    SpecialFlow flow{CeilingSpec::power_single(0.0, -0.5, 1.0), cf};
};

// independent linear-scan oracle over n
PhasePoint scan_oracle(const SpecialFlow& flow, PhasePoint p, double t) {
    double target = p.s + t;
    CirclePoint cur = p.x;
    while (target >= flow.spec().eval_f(cur)) {
        target -= flow.spec().eval_f(cur);
        cur.advance(flow.cf().alpha());
    }
    while (target < 0) {
        cur.retreat(flow.cf().alpha());
        target += flow.spec().eval_f(cur);
    }
    return {cur, target};
}

}  // namespace

TEST_CASE("flow step basics") {
    Lab lab;
    PhasePoint p{pt(0.37), 0.5};

    SUBCASE("t = 0 is the identity") {
        auto q = lab.flow.step(p, 0.0);
        CHECK(q.x.pos() == p.x.pos());
        CHECK(q.s == p.s);
    }
    SUBCASE("inside the fiber") {
        auto q = lab.flow.step(p, 0.25);
        CHECK(q.x.pos() == p.x.pos());
        CHECK(q.s == doctest::Approx(0.75).epsilon(1e-15));
    }
    SUBCASE("t = f(x) from the base lands on (Tx, 0)") {
        PhasePoint base{pt(0.37), 0.0};
        double fx = lab.flow.height(base.x);
        auto q = lab.flow.step(base, fx);
        CirclePoint expect = base.x;
        expect.advance(lab.cf.alpha());
        CHECK(q.x.pos() == expect.pos());
        CHECK(std::fabs(q.s) < 1e-12);
    }
    SUBCASE("generic time matches the linear-scan oracle") {
        for (double t : {37.25, -21.7, 3.0, -0.62}) {
            auto a = lab.flow.step(p, t);
            auto b = scan_oracle(lab.flow, p, t);
            CHECK(a.x.pos() == b.x.pos());
            CHECK(a.s == doctest::Approx(b.s).epsilon(1e-11));
            CHECK(a.s >= 0);
            CHECK(a.s < lab.flow.height(a.x));
        }
    }
}

TEST_CASE("group law") {
    Lab lab;
    PhasePoint p{pt(0.123), 0.8};
    CHECK(lab.flow.group_defect(p, 0.0, 0.0) == 0.0);
    CHECK(lab.flow.group_defect(p, 5.0, -5.0) <= 1e-10);
    Rng rng(12);
    double worst = 0;
    for (int it = 0; it < 1000; ++it) {
        PhasePoint q{pt(rng.next_double()), 0.0};
        q.s = rng.next_double() * lab.flow.height(q.x);
        double t1 = 200.0 * rng.next_double() - 100.0;
        double t2 = 200.0 * rng.next_double() - 100.0;
        worst = std::max(worst, lab.flow.group_defect(q, t1, t2));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("poincare return time is exactly the ceiling") {
    Lab lab;
    Rng rng(3);
    for (int it = 0; it < 25; ++it) {
        PhasePoint p{pt(rng.next_double()), 0.0};
        double fx = lab.flow.height(p.x);
        auto q = lab.flow.step(p, fx);
        CirclePoint expect = p.x;
        expect.advance(lab.cf.alpha());
        CHECK(q.x.pos() == expect.pos());
        CHECK(std::fabs(q.s) <= 1e-11);
    }
}

TEST_CASE("x_cdf matches numerical integration of f") {
    Lab lab;
    auto log_flow = SpecialFlow(CeilingSpec::log_single(0.4, 1.0, 0.5, 1.0), lab.cf);
    for (const SpecialFlow* fl : {&lab.flow, &log_flow}) {
        double prev = 0;
        const int n = 2000;
        double acc = 0;
        for (int i = 0; i < n; ++i) {
            double x = (i + 0.5) / n;
            acc += fl->spec().eval_f(pt(x)) / n;
            double F = fl->x_cdf(double(i + 1) / n);
            CHECK(F >= prev);
            CHECK(F == doctest::Approx(acc / fl->mean_height()).epsilon(0.02));
            prev = F;
        }
        CHECK(fl->x_cdf(1.0) == doctest::Approx(1.0));
    }
}

TEST_CASE("invariant sampler: change-of-measure identity and KS test") {
    Lab lab;
    auto pts = lab.flow.sample_invariant(100000, 2026);
    REQUIRE(pts.size() == 100000);
    // E[1/f(X)] = 1/int f under the x-marginal f/int f
    std::vector<double> recip;
    recip.reserve(pts.size());
    for (auto& p : pts) {
        CHECK(p.s >= 0);
        CHECK(p.s < lab.flow.height(p.x));
        recip.push_back(1.0 / lab.flow.height(p.x));
    }
    auto me = mean_stderr(recip);
    CHECK(std::fabs(me.mean - 1.0 / lab.flow.mean_height()) <= 3 * me.stderr_);
    // KS against the analytic x-marginal CDF
    std::vector<double> xs;
    xs.reserve(pts.size());
    for (auto& p : pts) xs.push_back(p.x.pos().to_double());
    double D = ks_statistic(xs, [&](double v) { return lab.flow.x_cdf(v); });
    CHECK(ks_pvalue(D, xs.size()) > 0.01);
}

TEST_CASE("invariant sampler: rectangle probability") {
    Lab lab;
    // P(x in [0.5, 0.75), s < 1) = 0.25 * 1 / int f   (f >= 1 + sqrt(4/3) there)
    auto pts = lab.flow.sample_invariant(100000, 7);
    std::uint64_t hits = 0;
    for (auto& p : pts) {
        double x = p.x.pos().to_double();
        if (x >= 0.5 && x < 0.75 && p.s < 1.0) ++hits;
    }
    double expect = 0.25 / lab.flow.mean_height();
    double phat = double(hits) / double(pts.size());
    CHECK(std::fabs(phat - expect) <= 3 * binom_stderr(phat, pts.size()) + 1e-9);
}

TEST_CASE("sampler is deterministic in the seed") {
    Lab lab;
    auto a = lab.flow.sample_invariant(500, 99);
    auto b = lab.flow.sample_invariant(500, 99);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x.pos() == b[i].x.pos());
        CHECK(a[i].s == b[i].s);
    }
    auto c = lab.flow.sample_invariant(500, 100);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i].x.pos() == c[i].x.pos())) any_diff = true;
    CHECK(any_diff);
}

TEST_CASE("flows reject unbounded-below ceilings") {
    auto cf = cf_expand("surd:-1,1,5,2", 20);
    CHECK_THROWS_AS(SpecialFlow(CeilingSpec::log_single(0.0, 1.0, 0.0, 0.0), cf),
                    ConfigInvalid);
}
