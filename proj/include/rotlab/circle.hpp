// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "rotlab/errors.hpp"
#include "rotlab/fixed.hpp"

namespace rotlab {

inline constexpr unsigned kDefaultCircleBits = 256;
inline constexpr double kDefaultOrbitTol = 0x1.0p-64;

/// High-precision position on the circle with an explicit error budget.
///
/// The budget counts roundings in units of 2^(1-B): the initial rounding of
/// the point contributes one, and a rotation step adds the step's own
/// rounding again, so after n steps from an exactly represented point the
/// bound is n * step_err * 2^(1-B).  The counter is a double so that poorly
/// certified inputs (short decimal strings) are carried honestly.
class CirclePoint {
public:
    CirclePoint() = default;
    explicit CirclePoint(Fixed pos, double err_ulps = 1)
        : pos_(std::move(pos)), err_(err_ulps) {}

    const Fixed& pos() const { return pos_; }
    unsigned bits() const { return pos_.bits(); }
    double err_ulps() const { return err_; }
    /// Bound on |represented - intended| in circle units.
    double error_bound() const { return err_ * std::ldexp(1.0, 1 - int(bits())); }

    /// Rejects a planned orbit of `steps` rotations if the accumulated error
    /// would exceed the tolerance.
    void check_budget(double steps, double step_err_ulps = 1,
                      double tol = kDefaultOrbitTol) const {
        double err = (err_ + steps * step_err_ulps) * std::ldexp(1.0, 1 - int(bits()));
        if (!(err <= tol))
            throw PrecisionExhausted("orbit error budget exceeded: bound " +
                                     std::to_string(err));
    }

    void advance(const Fixed& step, double step_err_ulps = 1) {
        pos_.add_mod1(step);
        err_ += step_err_ulps;
    }
    void retreat(const Fixed& step, double step_err_ulps = 1) {
        pos_.sub_mod1(step);
        err_ += step_err_ulps;
    }
    /// {x + n*step} in one multiply; the rounding of `step` is amplified |n|
    /// times, exactly as if stepped.
    void jump(const Fixed& step, std::int64_t n, double step_err_ulps = 1) {
        std::uint64_t m = n >= 0 ? std::uint64_t(n) : std::uint64_t(-n);
        if (n >= 0)
            pos_.add_mod1(step.mul_u64_mod1(m));
        else
            pos_.sub_mod1(step.mul_u64_mod1(m));
        err_ += double(m) * step_err_ulps;
    }

    double norm_dist() const { return pos_.norm_dist(); }
    /// Fractional part {x - a} as a double (right distance to a).
    double dist_right_of(const Fixed& a) const { return pos_.minus(a).to_double(); }

private:
    Fixed pos_;
    double err_ = 0;
};

/// min({x}, 1-{x}) of a plain double position, for quick checks.
inline double norm_dist(double x) {
    double f = x - std::floor(x);
    return f <= 0.5 ? f : 1.0 - f;
}

}  // namespace rotlab
