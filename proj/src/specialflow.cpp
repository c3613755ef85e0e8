// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "rotlab/specialflow.hpp"

#include <cmath>

#include "rotlab/errors.hpp"
#include "rotlab/rng.hpp"

namespace rotlab {

SpecialFlow::SpecialFlow(CeilingSpec spec, const ContinuedFraction& cf)
    : spec_(std::move(spec)), cf_(cf) {
    spec_.validate();
    integral_ = spec_.integral_f();
    inf_f_ = spec_.inf_f();
    if (!(inf_f_ > 0))
        throw ConfigInvalid("special flow needs a ceiling bounded away from zero");
    bool logm = spec_.model == CeilingModel::Log;
    for (const auto& s : spec_.sing)
        flat_.push_back({s.a, s.A, s.B, s.gamma_right, s.gamma_left, logm});
    for (const auto& w : spec_.weak)
        flat_.push_back({w.a, w.strength, w.strength, w.gamma, w.gamma, false});
}

double SpecialFlow::height(const CirclePoint& x) const {
    double acc = spec_.offset;
    for (std::size_t i = 0; i < flat_.size(); ++i) {
        const Flat& t = flat_[i];
        Fixed rel = x.pos().minus(t.a);
        double ur = rel.to_double();
        double ul = rel.to_double_complement();
        if (ur < spec_.sigma_min || ul < spec_.sigma_min)
            throw SingularityProximity(-1, i, "flow hit sigma_min neighborhood");
        if (t.logm) {
            if (t.A != 0) acc -= t.A * std::log(ur);
            if (t.B != 0) acc -= t.B * std::log(ul);
        } else {
            if (t.A != 0) acc += t.A * std::pow(ur, t.gr);
            if (t.B != 0) acc += t.B * std::pow(ul, t.gl);
        }
    }
    return acc;
}

PhasePoint SpecialFlow::step(const PhasePoint& p, double t) const {
    double target = p.s + t;
    CirclePoint cur = p.x;
    // conservative budget: the walk cannot exceed |t|/inf f + 1 steps
    double max_steps = std::fabs(t) / inf_f_ + 2;
    cur.check_budget(max_steps, std::max(1.0, cf_.alpha_err_ulps()));
    std::int64_t n = 0;
    if (target >= 0) {
        for (;;) {
            double h;
            try {
                h = height(cur);
            } catch (SingularityProximity& e) {
                throw SingularityProximity(n, e.singularity, e.what());
            }
            if (target < h) break;
            target -= h;
            cur.advance(cf_.alpha(), std::max(1.0, cf_.alpha_err_ulps()));
            ++n;
        }
    } else {
        while (target < 0) {
            cur.retreat(cf_.alpha(), std::max(1.0, cf_.alpha_err_ulps()));
            --n;
            double h;
            try {
                h = height(cur);
            } catch (SingularityProximity& e) {
                throw SingularityProximity(n, e.singularity, e.what());
            }
            target += h;
        }
    }
    return {cur, target};
}

double SpecialFlow::metric(const PhasePoint& a, const PhasePoint& b) {
    return std::fabs(signed_circle_dist(a.x.pos(), b.x.pos())) + std::fabs(a.s - b.s);
}

double SpecialFlow::group_defect(const PhasePoint& p, double t1, double t2) const {
    PhasePoint direct = step(p, t1 + t2);
    PhasePoint chained = step(step(p, t1), t2);
    return metric(direct, chained);
}

namespace {

// int_0^u of the one-sided models
double G_log(double u) { return u <= 0 ? 0.0 : u * (1.0 - std::log(u)); }
double G_pow(double u, double g) { return u <= 0 ? 0.0 : std::pow(u, 1.0 + g) / (1.0 + g); }

double frac(double v) { return v - std::floor(v); }

}  // namespace

double SpecialFlow::x_cdf(double x) const {
    if (x <= 0) return 0;
    if (x >= 1) return 1;
    double acc = spec_.offset * x;
    // Each one-sided term integrates in closed form; the fractional-part
    // argument wraps exactly once on (0, x] iff the singularity sits there,
    // contributing one full-period integral.
    auto right_term = [&](double a, double A, bool logm, double g) {
        if (A == 0) return 0.0;
        double wraps = (a > 0 && a <= x) ? 1.0 : 0.0;
        double full = logm ? 1.0 : 1.0 / (1.0 + g);
        double val = logm ? G_log(frac(x - a)) - G_log(frac(-a))
                          : G_pow(frac(x - a), g) - G_pow(frac(-a), g);
        return A * (val + wraps * full);
    };
    auto left_term = [&](double a, double B, bool logm, double g) {
        if (B == 0) return 0.0;
        // the left argument {a-t} completes a period only strictly past a
        double wraps = (a > 0 && a < x) ? 1.0 : 0.0;
        double full = logm ? 1.0 : 1.0 / (1.0 + g);
        double val = logm ? G_log(frac(a)) - G_log(frac(a - x))
                          : G_pow(frac(a), g) - G_pow(frac(a - x), g);
        return B * (val + wraps * full);
    };
    bool logm = spec_.model == CeilingModel::Log;
    for (const auto& s : spec_.sing) {
        acc += right_term(s.a_dbl, s.A, logm, s.gamma_right);
        acc += left_term(s.a_dbl, s.B, logm, s.gamma_left);
    }
    for (const auto& w : spec_.weak) {
        acc += right_term(w.a_dbl, w.strength, false, w.gamma);
        acc += left_term(w.a_dbl, w.strength, false, w.gamma);
    }
    return acc / integral_;
}

std::vector<PhasePoint> SpecialFlow::sample_invariant(std::uint64_t count,
                                                      std::uint64_t seed) const {
    Rng rng(seed);
    std::vector<PhasePoint> out;
    out.reserve(count);
    unsigned bits = cf_.bits();
    while (out.size() < count) {
        double u = rng.next_double();
        double lo = 0, hi = 1;
        for (int it = 0; it < 64; ++it) {
            double mid = 0.5 * (lo + hi);
            (x_cdf(mid) < u ? lo : hi) = mid;
        }
        double xv = 0.5 * (lo + hi);
        CirclePoint x(Fixed::from_double(xv, bits), 1);
        double h;
        try {
            h = height(x);
        } catch (const SingularityProximity&) {
            continue;  // measure-zero neighborhood; resample
        }
        out.push_back({x, rng.next_double() * h});
    }
    return out;
}

}  // namespace rotlab
