// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rotlab/ceiling.hpp"
#include "rotlab/circle.hpp"
#include "rotlab/continued_fraction.hpp"

namespace rotlab {

/// Options for the accelerated path.
struct SumOptions {
    std::size_t chunk = 8192;
    double orbit_tol = kDefaultOrbitTol;
};

/// f^(n)(x): f(x) + ... + f(T^{n-1}x) for n > 0, 0 for n = 0, and
/// -(f(T^n x) + ... + f(T^{-1}x)) for n < 0.
///
/// Two evaluation routes, cross-checked by tests: the naive per-step route
/// through CeilingSpec::eval_f (the reference), and the accelerated route
/// that walks the orbit in Ostrowski blocks, streams exact fixed-point
/// distances into buffers, and hands them to the batch kernels.
double birkhoff_sum_naive(const CeilingSpec& spec, const ContinuedFraction& cf,
                          const CirclePoint& x, std::int64_t n);
double birkhoff_sum(const CeilingSpec& spec, const ContinuedFraction& cf,
                    const CirclePoint& x, std::int64_t n, const SumOptions& opt = {});

/// Same pair of routes for the derivative cocycle f'^(n).
double birkhoff_sum_prime_naive(const CeilingSpec& spec, const ContinuedFraction& cf,
                                const CirclePoint& x, std::int64_t n);
double birkhoff_sum_prime(const CeilingSpec& spec, const ContinuedFraction& cf,
                          const CirclePoint& x, std::int64_t n,
                          const SumOptions& opt = {});

/// Greedy Ostrowski block decomposition of n over the deduplicated
/// denominators: n = sum of count_j * q(s_j) with s_j strictly decreasing.
std::vector<std::pair<std::size_t, std::uint64_t>> ostrowski_blocks(
    const ContinuedFraction& cf, std::uint64_t n);

/// Difference engine for a pair y = x + delta (delta exact in fixed point).
/// All outputs are f^(sigma n)(x) - f^(sigma n)(y) for the direction sigma.
class PairDiff {
public:
    PairDiff(const CeilingSpec& spec, const ContinuedFraction& cf, CirclePoint x,
             const Fixed& delta);

    double delta() const { return delta_dbl_; }
    const CirclePoint& x() const { return x_; }

    /// Per-step prefix: out[j] = f^(sigma j)(x) - f^(sigma j)(y), j = 0..n.
    /// Throws NonResonanceViolated if some step straddles a singularity
    /// (unless allow_straddle, which then evaluates the step by direct
    /// two-point differencing) and SingularityProximity if either point
    /// comes within sigma_min.
    void prefix(int sigma, std::uint64_t n, std::vector<double>& out,
                bool allow_straddle = false) const;

    /// Block prefix: returns e_R = f^(sigma R stride)(x) - f^(sigma R stride)(y)
    /// for R = 0..R_max, evaluated with the batch kernels.
    std::vector<double> block_prefix(int sigma, std::uint64_t stride,
                                     std::uint64_t R_max,
                                     const SumOptions& opt = {}) const;

    /// Non-resonance scan: does the interval orbit T^{sigma j}[x,y],
    /// j = 0..n-1, stay clear of every [a_i - radius, a_i + radius]?
    /// Returns the first offending (j, singularity) if not.
    struct NrHit {
        bool clear = true;
        std::uint64_t j = 0;
        std::size_t singularity = 0;
    };
    /// strong_only skips the weak singularities (the power-model conditions
    /// only constrain the strong set).
    NrHit nr_scan(int sigma, std::uint64_t n, double radius,
                  bool strong_only = false) const;

private:
    const CeilingSpec& spec_;
    const ContinuedFraction& cf_;
    CirclePoint x_;
    Fixed delta_;
    double delta_dbl_;
};

/// Denjoy-Koksma bracket for the pure model h with its single
/// singularity at 0:
///   -q_s (h(1/2q_s) - c_0) - 2 h'(1/2q_s)  >  h'^(q_s)(x)
///   h'^(q_s)(x)  >=  h'(x + j alpha) - q_s (h(1/2q_s) - c_0) + 2 h'(1/2q_s)
/// with j the closest-approach index in [0, q_s).
struct DkReport {
    double upper = 0, value = 0, lower = 0;
    std::uint64_t j_min = 0;
    bool pass = false;
};
DkReport dk_verify(const CeilingSpec& pure_h, const ContinuedFraction& cf,
                   const CirclePoint& x, std::size_t s);

/// The q_s-block bracket: (d+1) q_s h(1/2q_s) ||x-y||  >=  f^(q_s)(x) - f^(q_s)(y)
/// >=  d q_s h(1/2q_s) ||x-y||, for pairs passing the non-resonance scan at
/// radius 2 v_s.  d <= 0 picks the default sum(A-B) - min(1/10, sum(A-B)/2).
struct BlockBracketReport {
    double lhs = 0, mid = 0, rhs = 0;
    double d = 0, v_s = 0;
    std::size_t s = 0;
    bool pass = false;
};
BlockBracketReport block_bracket_check(const CeilingSpec& spec,
                                       const ContinuedFraction& cf,
                            const CirclePoint& x, const Fixed& delta, std::size_t s,
                            double d, double v_s);

/// e_R = f^(R q_s)(x) - f^(R q_s)(y) for R = 0..R_max with the per-step
/// increment bound check |e_{R+1} - e_R| < d+1 and the per-block
/// non-resonance flags.
struct DriftSequence {
    std::vector<double> e;
    std::vector<double> increments;
    std::vector<bool> block_nr_ok;
    double d = 0;
};
DriftSequence drift_sequence(const CeilingSpec& spec, const ContinuedFraction& cf,
                             const CirclePoint& x, const Fixed& delta, std::size_t s,
                             std::uint64_t R_max, double d, double v_s);

/// x_s/(4C) for the log78 rule, the v_s radius the drift scans use.
double default_v_s(const ContinuedFraction& cf, std::size_t s, double C);

}  // namespace rotlab
