// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "rotlab/sieve.hpp"

#include <algorithm>
#include <cmath>

#include "rotlab/rng.hpp"

namespace rotlab {

XRule XRule::log78() {
    return {"log78", [](std::size_t, double qs) {
                double l = std::log(qs);
                return l > 0 ? 1.0 / (qs * std::pow(l, 7.0 / 8.0)) : HUGE_VAL;
            }};
}

XRule XRule::inv_s2() {
    return {"inv_s2", [](std::size_t s, double qs) {
                return s > 0 ? 1.0 / (double(s) * double(s) * qs) : HUGE_VAL;
            }};
}

SieveReport sieve(const ContinuedFraction& cf, const XRule& rule, std::size_t depth,
                  std::optional<std::size_t> s_start, std::uint64_t quotient_bound) {
    if (depth + 1 > cf.size())
        throw ConfigInvalid("sieve: depth exceeds expanded continued fraction");
    SieveReport rep;
    rep.rule = rule.name;
    rep.depth = depth;
    rep.quotient_bound = quotient_bound;
    rep.max_quotient = cf.max_quotient();
    rep.bounded_type = rep.max_quotient <= quotient_bound;

    std::vector<double> lnq(depth + 1);
    for (std::size_t s = 0; s <= depth; ++s) lnq[s] = ln_big(cf.q(s));

    // rule values and validity threshold
    rep.x_s.resize(depth);
    std::size_t auto_start = depth;
    for (std::size_t s = 0; s < depth; ++s) {
        double qs = std::exp(lnq[s]);
        rep.x_s[s] = rule.value(s, qs);
        if (auto_start == depth && rep.x_s[s] > 0 && rep.x_s[s] < 1.0 / qs)
            auto_start = s;
    }
    rep.s_start = s_start.value_or(auto_start);
    for (std::size_t s = rep.s_start; s < depth; ++s) {
        double qs = std::exp(lnq[s]);
        if (!(rep.x_s[s] > 0) || rep.x_s[s] >= 1.0 / qs)
            throw RuleViolation("x_s >= 1/q_s at s = " + std::to_string(s));
    }

    // K_alpha membership: q_{s+1} < 1/x_s  <=>  ln q_{s+1} < -ln x_s
    rep.in_K.resize(depth);
    rep.e_partial.resize(depth);
    double running = 0;
    for (std::size_t s = 0; s < depth; ++s) {
        rep.in_K[s] = lnq[s + 1] < -std::log(rep.x_s[s]);
        if (!rep.in_K[s] && lnq[s] > 0) running += std::pow(lnq[s], -7.0 / 8.0);
        rep.e_partial[s] = running;
    }

    // DC(tau) estimate: smallest tau >= 0 with q_{s+1} <= r_alpha q_s^{1+tau}
    // for all expanded s >= 1, where r_alpha is one more than the largest
    // ratio seen among the first few denominators.
    double r = 1;
    for (std::size_t s = 0; s + 1 <= std::min<std::size_t>(4, depth); ++s)
        r = std::max(r, std::exp(lnq[s + 1] - lnq[s]));
    rep.r_alpha = std::ceil(r) + 1;
    double tau = 0;
    for (std::size_t s = 1; s < depth; ++s)
        tau = std::max(tau, (lnq[s + 1] - std::log(rep.r_alpha) - lnq[s]) / lnq[s]);
    rep.dc_tau_estimate = std::max(0.0, tau);
    return rep;
}

BadApproxReport badly_approx_check(const ContinuedFraction& cf,
                                   const std::vector<Fixed>& points, double C,
                                   std::size_t s_max, std::size_t sample_count,
                                   std::uint64_t seed) {
    if (points.empty()) throw ConfigInvalid("badly_approx_check needs k >= 1 points");
    if (C <= 1) throw ConfigInvalid("badly_approx_check needs C > 1");
    if (s_max + 1 > cf.size())
        throw ConfigInvalid("badly_approx_check: s_max exceeds expanded depth");
    BadApproxReport rep;
    rep.s_max = s_max;
    rep.C = C;
    rep.samples = sample_count;
    Rng rng(seed);
    const unsigned bits = cf.bits();
    for (std::size_t trial = 0; trial < sample_count; ++trial) {
        Fixed x0 = rng.next_fixed(bits);
        for (std::size_t s = 0; s <= s_max; ++s) {
            double qs = cf.q_dbl(s);
            if (qs > 5e7) throw ConfigInvalid("badly_approx_check: q_s too large to scan");
            const double w = 1.0 / (2.0 * C * qs);
            std::vector<std::uint64_t> hits;
            Fixed pos = x0;
            std::uint64_t steps = cf.q(s).to_u64();
            for (std::uint64_t i = 0; i < steps; ++i) {
                for (const auto& a : points) {
                    if (std::fabs(signed_circle_dist(pos, a)) <= w) {
                        hits.push_back(i);
                        break;
                    }
                }
                pos.add_mod1(cf.alpha());
            }
            if (hits.size() > 1) {
                rep.pass = false;
                rep.witness = BadApproxWitness{x0.to_double(), s, hits};
                return rep;
            }
        }
    }
    return rep;
}

GapStats three_gap_stats(const ContinuedFraction& cf, const CirclePoint& x,
                         std::uint64_t n) {
    if (n < 2) throw ConfigInvalid("three_gap_stats needs n >= 2");
    x.check_budget(double(n), std::max(1.0, cf.alpha_err_ulps()));
    std::vector<Fixed> orbit;
    orbit.reserve(n);
    Fixed pos = x.pos();
    for (std::uint64_t j = 0; j < n; ++j) {
        orbit.push_back(pos);
        pos.add_mod1(cf.alpha());
    }
    std::sort(orbit.begin(), orbit.end(),
              [](const Fixed& a, const Fixed& b) { return a < b; });
    std::vector<Fixed> gaps;
    gaps.reserve(n);
    for (std::uint64_t j = 0; j + 1 < n; ++j) gaps.push_back(orbit[j + 1].minus(orbit[j]));
    gaps.push_back(orbit.front().minus(orbit.back()));  // wrap-around gap
    std::sort(gaps.begin(), gaps.end(),
              [](const Fixed& a, const Fixed& b) { return a < b; });
    GapStats st;
    for (std::size_t j = 0; j < gaps.size();) {
        std::size_t k = j;
        while (k < gaps.size() && gaps[k] == gaps[j]) ++k;
        st.gaps.emplace_back(gaps[j].to_double(), k - j);
        j = k;
    }
    return st;
}

}  // namespace rotlab
