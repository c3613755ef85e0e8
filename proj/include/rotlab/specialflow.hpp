// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "rotlab/ceiling.hpp"
#include "rotlab/circle.hpp"
#include "rotlab/continued_fraction.hpp"

namespace rotlab {

/// Point of the flow space: base position x and height 0 <= s < f(x).
struct PhasePoint {
    CirclePoint x;
    double s = 0;
};

/// The special flow over the rotation by alpha under the ceiling f: move up
/// the fiber at unit speed with the identification (x, f(x)) ~ (Tx, 0).
class SpecialFlow {
public:
    SpecialFlow(CeilingSpec spec, const ContinuedFraction& cf);

    const CeilingSpec& spec() const { return spec_; }
    const ContinuedFraction& cf() const { return cf_; }
    double mean_height() const { return integral_; }
    double inf_height() const { return inf_f_; }

    /// Height over the base point (no allocation; safe for hot loops).
    double height(const CirclePoint& x) const;

    /// T_t(p) = (T^n x, t+s-f^(n)(x)) with f^(n)(x) <= t+s < f^(n+1)(x);
    /// the unique n is found by the monotone walk of partial sums (f > 0
    /// makes the walk exact and safe where a fixed stride would not be).
    PhasePoint step(const PhasePoint& p, double t) const;

    /// d^f((x,s),(x',s')) = d(x,x') + |s - s'|.
    static double metric(const PhasePoint& a, const PhasePoint& b);

    /// d^f(T_{t1+t2} p, T_{t2} T_{t1} p).
    double group_defect(const PhasePoint& p, double t1, double t2) const;

    /// Analytic CDF of the x-marginal of the invariant measure,
    /// F(x) = (1/int f) int_0^x f.
    double x_cdf(double x) const;

    /// i.i.d. samples of the normalized invariant measure (x by inverse-CDF
    /// bisection, s uniform on the fiber).  Deterministic in the seed.
    std::vector<PhasePoint> sample_invariant(std::uint64_t count,
                                             std::uint64_t seed) const;

private:
    CeilingSpec spec_;
    const ContinuedFraction& cf_;
    double integral_;
    double inf_f_;
    // flattened singular data for the no-allocation height evaluation
    struct Flat {
        Fixed a;
        double A, B, gr, gl;
        bool logm;
    };
    std::vector<Flat> flat_;
};

}  // namespace rotlab
