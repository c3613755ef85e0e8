// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rotlab/birkhoff.hpp"
#include "rotlab/ceiling.hpp"
#include "rotlab/continued_fraction.hpp"

namespace rotlab {

enum class Direction { Forward, Backward };
enum class DriftStatus { Ok, NoDriftFound, NonResonanceBothSides };

inline const char* to_string(Direction d) {
    return d == Direction::Forward ? "forward" : "backward";
}
inline const char* to_string(DriftStatus s) {
    switch (s) {
        case DriftStatus::Ok: return "ok";
        case DriftStatus::NoDriftFound: return "no_drift_found";
        default: return "non_resonance_both_sides";
    }
}

/// The band P: |p| must land in [lo, hi].
struct Band {
    double lo = 0, hi = 0;
    bool contains(double p) const {
        double a = std::fabs(p);
        return a >= lo && a <= hi;
    }
};

/// Every constant of the drift experiments, derived from the proofs'
/// formulas by default and overridable one by one; reports embed the
/// effective values.
struct DriftParams {
    CeilingModel model = CeilingModel::Log;
    double epsilon = 0.1;
    std::int64_t N = 100;
    double C = 2.0;
    double kappa = 0;
    double d = 0;
    double m0 = 0;              // log: inf_s h(1/2q_s)/h(1/2q_{s+1}) observed
    double D1 = 0, D2 = 0;      // power: observed derivative-ratio bounds
    double Ck = 0;              // power: strength of the dominant singularity
    double H = 0;
    double c_ratio = 0;         // sup q_{s+1}/q_s observed
    std::size_t k = 1;
    Band P;
    std::size_t s0 = 0;         // first index where the log78 rule is valid
    std::size_t s1 = 0;         // minimal working scale (kappa-threshold)
    double delta_max = 0;       // pair-distance ceiling 1/(q_{s1} h(1/(2 q_{s1})))
    std::uint64_t quotient_bound = 100;  // DC(0) test for the power case

    /// Log-model instantiation: kappa = eps m0 d / (64 (d+1) H k),
    /// P = [d m0/(32C), 2(d+1)].
    static DriftParams log_defaults(const CeilingSpec& spec, const ContinuedFraction& cf,
                                    double eps = 0.1, std::int64_t N = 100,
                                    double C = 2.0);
    /// Power instantiation: kappa = eps/(2 (3 D2 + 2) k C H),
    /// P = [Ck D1^2/(16c), 12 H k (D2 + 2)].
    static DriftParams power_defaults(const CeilingSpec& spec,
                                      const ContinuedFraction& cf, double eps = 0.1,
                                      std::int64_t N = 100, double C = 2.0);
};

/// The unique s with 1/(q_{s+1} h(1/2q_{s+1})) < dist <= 1/(q_s h(1/2q_s)).
std::size_t find_scale(const CeilingSpec& spec, const ContinuedFraction& cf,
                       double dist);

struct WindowReport {
    Direction direction = Direction::Forward;
    std::uint64_t M = 0, L = 0;
    double fraction = 0;  // of n in [1, L] with |f^(+-n)(X) - f^(+-n)(Y)| < eps
    bool evaluated = false;
};

struct DriftReport {
    DriftStatus status = DriftStatus::NoDriftFound;
    std::size_t scale_s = 0;
    Direction direction = Direction::Forward;
    std::string branch;           // which non-resonance scan cleared: "forward_clear"/"backward_clear"
    std::uint64_t n0 = 0;         // block count (log) / i0 (power)
    std::uint64_t drift_time = 0; // n0 q_s (log) / the index whose value is p
    double p = 0;
    bool p_in_band = false;
    bool budget_ok = true;        // the log budget n0 q_s h(1/2q_s) <= 2(d+1)/(d dist)
    bool scale_fallback = false;  // q_{s+1} <= 2 q_s: the derived constants
                                  // assume otherwise, so such runs are labelled
    WindowReport window;          // best direction
    WindowReport window_alt;      // the other one
    std::vector<double> e_trace;  // filled when no drift is found
};

/// Drift search for the logarithmic model: scan e_R over q_s-blocks in
/// whichever time direction the non-resonance scan clears (forward first);
/// the first e in P wins; then verify the stability window at the
/// post-drift points.
DriftReport find_drift_log(const CirclePoint& x, const Fixed& delta,
                           const DriftParams& params, const CeilingSpec& spec,
                           const ContinuedFraction& cf);

/// Power-model drift: locate the single-visit index i0 in [q_{s-4}, q_{s-2})
/// whose near-singularity passage jumps the difference into P; branch by
/// (nr_pos)/(nr_neg).
DriftReport find_drift_power(const CirclePoint& x, const Fixed& delta,
                             const DriftParams& params, const CeilingSpec& spec,
                             const ContinuedFraction& cf);

/// Fraction of n in [1, L] with |f^(+-n)(X) - f^(+-n)(Y)| < eps for the
/// post-drift pair (X, X + delta); L = 0 is a vacuous pass.
WindowReport verify_switchable_window(const CirclePoint& X, const Fixed& delta,
                                      const DriftParams& params, Direction dir,
                                      std::uint64_t L, const CeilingSpec& spec,
                                      const ContinuedFraction& cf);

/// Membership in the sampling set Z: outside every B_s exclusion
/// (4 v_s-neighborhoods of singularities over the q_s-orbit) for the rule's
/// valid s not in K_alpha, up to the expanded depth.  "Not excluded up to
/// depth", exact membership being an infinite intersection.
bool z_set_member(const Fixed& x, const DriftParams& params, const CeilingSpec& spec,
                  const ContinuedFraction& cf);

struct PairOutcome {
    bool success = false;
    DriftReport report;
    std::string failure;  // empty on success
};

struct EnsembleReport {
    std::size_t pairs = 0;
    std::size_t successes = 0;
    double success_rate = 0;
    std::size_t forward = 0, backward = 0;
    std::uint64_t median_n0 = 0;
    std::size_t branch_forward = 0, branch_backward = 0;
    std::size_t fail_nonres = 0, fail_nodrift = 0, fail_window = 0,
                fail_precision = 0, fail_band = 0;
    std::vector<PairOutcome> outcomes;  // per pair, in sampling order
};

/// Samples Z-set pairs at scales >= s1, runs the drift search and the window
/// verification, and aggregates.  Success requires p in P, the budget check,
/// L/M >= kappa, M,L >= N, and a window fraction of exactly 1.
EnsembleReport swr_ensemble(const DriftParams& params, const CeilingSpec& spec,
                            const ContinuedFraction& cf, std::size_t pair_count,
                            std::uint64_t seed, unsigned threads = 1);

// --- failure-of-WR construction (power ceiling x^gamma + r) ---

struct WrParams {
    double gamma = -0.5;
    double offset = 1.0;
    std::size_t w = 8;
    double zeta = 0.01;        // protection-scan exponent slack
    double d = 0;              // > c^{1-gamma}; defaulted from the ratio
    double eps = 1e-3;         // sets the scan floor k >= eps^{-1/2}
    std::int64_t k_scan_max = 10000;
    std::uint64_t q_cap = 10000000;  // depth cap of the interval recursion
};

struct WrSamplePoint {
    Fixed x;
    std::uint64_t i0 = 0;      // visit index of [1/(2dq_w), 1/(dq_w)]
    bool wide_avoid = false;   // orbit also clears the wide radius 2c/q_w^{1-g}
                               // for all w q_w steps (recorded, not required)
};

struct WrConstruction {
    Fixed delta0;
    double delta0_dbl = 0;
    std::size_t t_index = 0, c1 = 0, l = 0;
    double d = 0, c = 0;
    double range_lo = 0, range_hi = 0;  // admissible [1/q_w^{1-g}, 2c/q_w^{1-g}]
    bool in_range = false;
    std::vector<std::pair<std::int64_t, double>> protection_violations;
    double w02_expected_measure = 0;  // q_{w-l} / (2 d q_w)
    double w02_observed_rate = 0;
    std::vector<WrSamplePoint> samples;
};

/// Constructs delta0 by the nested-interval recursion through the B_u sets
/// and samples base points whose orbit realizes the single-visit mechanism.
WrConstruction wr_failure_construct(const ContinuedFraction& cf, const WrParams& params,
                                    std::size_t sample_count, std::uint64_t seed);

struct WrVerifyReport {
    std::uint64_t i0 = 0;
    double pre_jump_max = 0;   // max over n <= i0 of the difference
    double post_jump_min = 0;  // min over i0 < n < w q_w
    bool pre_ok = false;       // < 100 c / d
    bool post_ok = false;      // > |gamma| d / 2
    bool positive = true;      // differences stay > 0
    bool monotone = false;     // the difference sequence increases
    std::uint64_t len_exit = 0;
    double len_bound = 0;      // 2 c eta^{1+gamma} ||x-y||^{-1/(1-gamma)}
    bool len_ok = false;
    double eta = 0;
};

/// Direct Birkhoff verification of the band jump, the monotonicity, and the
/// near-coincidence interval-length bound for one constructed sample.
WrVerifyReport wr_failure_verify(const Fixed& x, const Fixed& delta0,
                                 const WrParams& params, const WrConstruction& con,
                                 const ContinuedFraction& cf, std::uint64_t i0);

}  // namespace rotlab
