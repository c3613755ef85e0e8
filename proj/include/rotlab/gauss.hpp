// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "rotlab/continued_fraction.hpp"

namespace rotlab {

/// CDF of the Gauss-map invariant measure: log2(1 + x).
inline double gauss_cdf(double x) { return std::log2(1.0 + x); }

/// i.i.d. samples of the invariant density 1/((1+x) log 2) via the inverse
/// CDF x = 2^u - 1.
std::vector<double> gauss_invariant_sample(std::uint64_t count, std::uint64_t seed);

/// Certified partial quotients of the Gauss orbit of x (a B-bit point):
/// interval expansion of (X, X+1)/2^B.  Throws PrecisionExhausted when fewer
/// than `depth` quotients are certified.
std::vector<std::uint64_t> gauss_quotients(const Fixed& x, std::size_t depth);

/// Running partial sums of 1/ln^{7/8} q_i over the indices outside K_alpha
/// (evidence for membership in the summability set; asymptotic, never a proof).
std::vector<double> e_membership_partial_sums(const ContinuedFraction& cf,
                                              std::size_t depth);

struct CorrRatioRow {
    std::size_t k = 0, l = 0;
    double ratio = 0;
    double stderr_ = 0;
};

/// Monte-Carlo estimates of mu(T^-k (0,a) cap T^-l (0,a)) / mu((0,a))^2 over
/// the whole (k,l) grid k,l <= k_max in one orbit pass per sample.
std::vector<CorrRatioRow> gauss_correlation_grid(double a, std::size_t k_max,
                                                 std::uint64_t samples,
                                                 std::uint64_t seed,
                                                 unsigned threads = 1);

struct BlockStatRow {
    std::size_t n = 0;
    double fraction = 0;
    double stderr_ = 0;
    std::uint64_t hits = 0;
};

/// Per-n fraction of x with >= 2 indices k in [n^2, (n+1)^2] having
/// a_k >= d k^{7/8}; one certified expansion to depth (n_max+1)^2 per sample
/// serves every n.  bits sizes the interval expansion (depth 169 needs ~700).
std::vector<BlockStatRow> block_quotient_stat(std::size_t n_min, std::size_t n_max,
                                              double d, std::uint64_t samples,
                                              std::uint64_t seed, unsigned bits = 768,
                                              unsigned threads = 1);

}  // namespace rotlab
