// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rotlab/continued_fraction.hpp"

namespace rotlab {

/// Pluggable x_s rule for the K_alpha sieve.  Shipped rules:
///   log78:  x_s = 1/(q_s ln^{7/8} q_s)
///   inv_s2: x_s = 1/(s^2 q_s)
/// Both are asymptotic: below s_start (the first index with x_s < 1/q_s) the
/// rule value is reported but the sieve conditions are not applied.
struct XRule {
    std::string name;
    std::function<double(std::size_t s, double q_s)> value;

    static XRule log78();
    static XRule inv_s2();
};

struct SieveReport {
    std::string rule;
    std::size_t depth = 0;
    std::size_t s_start = 0;          // first s with 0 < x_s < 1/q_s
    std::vector<double> x_s;          // s = 0..depth-1
    std::vector<bool> in_K;           // K_alpha = { s : q_{s+1} < 1/x_s }
    std::vector<double> e_partial;    // running sums over s not in K of 1/ln^{7/8} q_s
    double dc_tau_estimate = 0;
    double r_alpha = 1;               // prefactor convention for the tau estimate
    bool bounded_type = false;
    std::uint64_t max_quotient = 0;
    std::uint64_t quotient_bound = 0;
};

/// Evaluates the K_alpha sieve to `depth` (requires depth + 1 <= cf.size()).
/// Throws RuleViolation if the rule yields x_s >= 1/q_s at or past s_start.
SieveReport sieve(const ContinuedFraction& cf, const XRule& rule, std::size_t depth,
                  std::optional<std::size_t> s_start = std::nullopt,
                  std::uint64_t quotient_bound = 100);

struct BadApproxWitness {
    double x;
    std::size_t s;
    std::vector<std::uint64_t> hit_indices;  // the i0 values in one q_s block
};

struct BadApproxReport {
    bool pass = true;
    std::optional<BadApproxWitness> witness;
    std::size_t samples = 0;
    std::size_t s_max = 0;
    double C = 0;
};

/// Scans sample_count random base points x: for each scale s <= s_max counts
/// the i0 in [0, q_s) with x + i0 alpha inside some [a_i - 1/(2Cq_s),
/// a_i + 1/(2Cq_s)]; passes iff the count never exceeds one.
BadApproxReport badly_approx_check(const ContinuedFraction& cf,
                                   const std::vector<Fixed>& points, double C,
                                   std::size_t s_max, std::size_t sample_count,
                                   std::uint64_t seed);

struct GapStats {
    // distinct gap lengths of {x + j alpha : j < n}, ascending, with counts
    std::vector<std::pair<double, std::uint64_t>> gaps;
};

/// Sorted-orbit gap statistics; gaps are grouped by exact fixed-point
/// equality, so the three-distance structure of the rounded rotation shows up
/// with no tolerance fuzz.
GapStats three_gap_stats(const ContinuedFraction& cf, const CirclePoint& x,
                         std::uint64_t n);

}  // namespace rotlab
