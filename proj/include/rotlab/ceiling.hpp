// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rotlab/circle.hpp"
#include "rotlab/fixed.hpp"

namespace rotlab {

enum class CeilingModel { Log, Power };

/// One singularity of the ceiling: position a, right strength A (approach
/// x -> a+), left strength B (approach x -> a-).  In the Power model the
/// per-side exponents may differ; Log always uses -ln.
struct Singularity {
    Fixed a;
    double a_dbl = 0;
    double A = 0, B = 0;
    double gamma_right = -0.5, gamma_left = -0.5;
};

/// Weak power-like singularity: symmetric strength on both sides with an
/// exponent closer to 0 than the strong model's (so g/h -> 0 at 0+).
struct WeakSingularity {
    Fixed a;
    double a_dbl = 0;
    double strength = 0;
    double gamma = -0.25;
};

/// Singular ceiling function
///   Log:    f(x) = r + sum_i [ -A_i ln{x-a_i} - B_i ln{a_i-x} ] + weak terms
///   Power:  f(x) = r + sum_i [ A_i {x-a_i}^g_r + B_i {a_i-x}^g_l ] + weak terms
/// with {.} the fractional part.  Positive by construction when r > 0 (Log) or
/// when any strength is positive (Power, since u^g >= 1 on (0,1)).
class CeilingSpec {
public:
    CeilingModel model = CeilingModel::Log;
    std::vector<Singularity> sing;
    std::vector<WeakSingularity> weak;
    double offset = 0;
    double gamma = -0.5;            // the strong model exponent (Power)
    double sigma_min = 0x1.0p-96;   // evaluation guard radius

    static CeilingSpec log_single(double a, double A, double B, double offset,
                                  unsigned bits = kDefaultCircleBits);
    static CeilingSpec power_single(double a, double gamma, double offset,
                                    unsigned bits = kDefaultCircleBits);

    void validate() const;
    std::size_t k_total() const { return sing.size() + weak.size(); }
    double strength_imbalance() const;  // sum_i (A_i - B_i)
    double max_strength() const;        // max_i max(A_i, B_i)

    /// The dominating singular model h: -ln u (Log) or u^gamma (Power).
    double h(double u) const;
    double h_prime(double u) const;
    /// inf_T h, evaluated at the far end u = 1 (h is decreasing).
    double c0() const { return h(1.0); }

    /// Pointwise evaluation; throws SingularityProximity when x is within
    /// sigma_min of a singularity (clamping would silently corrupt the drift
    /// experiments, so near-misses are structured errors).
    double eval_f(const CirclePoint& x) const;
    double eval_f_prime(const CirclePoint& x) const;
    /// Cheap double-argument versions for Monte Carlo paths that already hold
    /// exact distances; dist arrays follow sing then weak order.
    double f_from_dists(const double* right, const double* left) const;
    double f_prime_from_dists(const double* right, const double* left) const;

    /// Analytic integral over the circle.
    double integral_f() const;
    /// Numerical infimum of f (grid + local refinement); > 0 required for flows.
    double inf_f(std::size_t grid = 1 << 14) const;

    /// Certified H with |f'(x)| < H * sum_i(-h'({x-a_i}) - h'({a_i-x})) on a
    /// dense grid plus the analytic limits at each singularity.
    double derivative_bound_H(std::size_t grid = 1 << 16) const;

    std::string to_json() const;
    static CeilingSpec from_json(const std::string& text,
                                 unsigned bits = kDefaultCircleBits);
};

}  // namespace rotlab
