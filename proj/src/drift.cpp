// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "rotlab/drift.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <thread>

#include "rotlab/errors.hpp"
#include "rotlab/rng.hpp"
#include "rotlab/sieve.hpp"

namespace rotlab {

namespace {

double h_of(const CeilingSpec& spec, double u) { return spec.h(u); }

double tau_threshold(const CeilingSpec& spec, const ContinuedFraction& cf,
                     std::size_t s) {
    double qs = cf.q_dbl(s);
    return 1.0 / (qs * h_of(spec, 1.0 / (2.0 * qs)));
}

std::size_t first_valid_log78(const ContinuedFraction& cf) {
    for (std::size_t s = 0; s + 1 < cf.size(); ++s) {
        double qs = cf.q_dbl(s);
        double l = std::log(qs);
        if (l > 0 && 1.0 / (qs * std::pow(l, 7.0 / 8.0)) < 1.0 / qs) return s;
    }
    throw ConfigInvalid("log78 rule never becomes valid at this depth");
}

bool in_K_alpha(const ContinuedFraction& cf, std::size_t s) {
    double lnq = ln_big(cf.q(s));
    if (lnq <= 0) return false;
    return ln_big(cf.q(s + 1)) < lnq + (7.0 / 8.0) * std::log(lnq);
}

}  // namespace

DriftParams DriftParams::log_defaults(const CeilingSpec& spec,
                                      const ContinuedFraction& cf, double eps,
                                      std::int64_t N, double C) {
    double imb = spec.strength_imbalance();
    if (imb <= 0)
        throw ConfigInvalid("drift experiments need sum(A_i - B_i) > 0 "
                            "(symmetric specs are refused)");
    DriftParams p;
    p.model = CeilingModel::Log;
    p.epsilon = eps;
    p.N = N;
    p.C = C;
    p.k = spec.k_total();
    p.H = spec.derivative_bound_H();
    p.d = imb - std::min(0.1, imb / 2.0);
    p.m0 = HUGE_VAL;
    for (std::size_t s = 0; s + 1 < cf.size(); ++s)
        p.m0 = std::min(p.m0, h_of(spec, 1.0 / (2.0 * cf.q_dbl(s))) /
                                  h_of(spec, 1.0 / (2.0 * cf.q_dbl(s + 1))));
    p.kappa = eps * p.m0 * p.d / (64.0 * (p.d + 1.0) * p.H * double(p.k));
    p.P = {p.d * p.m0 / (32.0 * C), 2.0 * (p.d + 1.0)};
    p.c_ratio = cf.ratio_sup();
    p.s0 = first_valid_log78(cf);
    p.s1 = 0;
    for (std::size_t s = 1; s + 1 < cf.size(); ++s)
        if (p.kappa * cf.q_dbl(s) > double(N)) {
            p.s1 = s;
            break;
        }
    if (p.s1 == 0)
        throw ConfigInvalid("expand the continued fraction deeper: kappa q_s never "
                            "exceeds N");
    p.delta_max = tau_threshold(spec, cf, p.s1);
    if (!(p.kappa > 0 && p.kappa < 1) || !(p.P.lo > 0 && p.P.hi > p.P.lo))
        throw ConfigInvalid("derived drift constants out of range");
    return p;
}

DriftParams DriftParams::power_defaults(const CeilingSpec& spec,
                                        const ContinuedFraction& cf, double eps,
                                        std::int64_t N, double C) {
    if (spec.model != CeilingModel::Power)
        throw ConfigInvalid("power defaults need a power-model ceiling");
    DriftParams p;
    p.model = CeilingModel::Power;
    p.epsilon = eps;
    p.N = N;
    p.C = C;
    p.k = spec.k_total();
    p.H = spec.derivative_bound_H();
    if (cf.max_quotient() > p.quotient_bound)
        throw ConfigInvalid("power drift needs bounded type (DC(0)); refused");
    p.Ck = 0;
    for (const auto& s : spec.sing) p.Ck = std::max({p.Ck, s.A, s.B});
    if (p.Ck <= 0) throw ConfigInvalid("power drift needs a strong singularity");
    // Observed derivative ratios over the expanded depth; reported, not
    // asymptotic.  D1 additionally respects the jump chain, which
    // lower-bounds |h'| at the visit-window scale 2c^4/q_s; at these depths
    // the chain value is the binding one.
    p.c_ratio = cf.ratio_sup();
    double qlo = HUGE_VAL, qhi = 0, rlo = HUGE_VAL, chain = HUGE_VAL;
    for (std::size_t s = 0; s + 1 < cf.size(); ++s) {
        double qs = cf.q_dbl(s);
        double norm = qs * h_of(spec, 1.0 / (2.0 * qs));
        double ratio = -spec.h_prime(1.0 / (std::pow(C, 4.0) * qs)) / norm;
        qlo = std::min(qlo, ratio);
        qhi = std::max(qhi, ratio);
        chain = std::min(chain,
                         -spec.h_prime(std::min(0.5, 2.0 * std::pow(p.c_ratio, 4.0) / qs)) /
                             norm);
        rlo = std::min(rlo, h_of(spec, 1.0 / (2.0 * qs)) /
                                h_of(spec, 1.0 / (2.0 * cf.q_dbl(s + 1))));
    }
    p.D1 = 0.99 * std::min({qlo, rlo, chain});
    p.D2 = 1.01 * qhi;
    p.kappa = eps / (2.0 * (3.0 * p.D2 + 2.0) * double(p.k) * C * p.H);
    p.P = {p.Ck * p.D1 * p.D1 / (16.0 * p.c_ratio),
           12.0 * p.H * double(p.k) * (p.D2 + 2.0)};
    p.s0 = 1;
    p.s1 = 0;
    for (std::size_t s = 6; s + 1 < cf.size(); ++s)
        if (p.kappa * cf.q_dbl(s - 4) > double(N)) {
            p.s1 = s;
            break;
        }
    if (p.s1 == 0)
        throw ConfigInvalid("expand the continued fraction deeper: kappa q_{s-4} "
                            "never exceeds N");
    p.delta_max = tau_threshold(spec, cf, p.s1);
    if (!(p.kappa > 0 && p.kappa < 1) || !(p.P.lo > 0 && p.P.hi > p.P.lo))
        throw ConfigInvalid("derived drift constants out of range");
    return p;
}

std::size_t find_scale(const CeilingSpec& spec, const ContinuedFraction& cf,
                       double dist) {
    if (!(dist > 0)) throw OutOfRange("pair distance must be positive");
    if (dist > tau_threshold(spec, cf, 1))
        throw OutOfRange("pair too far apart for the scale table");
    for (std::size_t s = 1; s + 1 < cf.size(); ++s)
        if (dist > tau_threshold(spec, cf, s + 1)) return s;
    throw OutOfRange("pair too close together for the expanded depth");
}

WindowReport verify_switchable_window(const CirclePoint& X, const Fixed& delta,
                                      const DriftParams& params, Direction dir,
                                      std::uint64_t L, const CeilingSpec& spec,
                                      const ContinuedFraction& cf) {
    WindowReport w;
    w.direction = dir;
    w.L = L;
    w.evaluated = true;
    if (L == 0) {
        w.fraction = 1.0;  // vacuous
        return w;
    }
    PairDiff pd(spec, cf, X, delta);
    std::vector<double> out;
    pd.prefix(dir == Direction::Forward ? 1 : -1, L, out, /*allow_straddle=*/true);
    std::uint64_t good = 0;
    for (std::uint64_t n = 1; n <= L; ++n)
        if (std::fabs(out[n]) < params.epsilon) ++good;
    w.fraction = double(good) / double(L);
    return w;
}

namespace {

void attach_windows(DriftReport& rep, const CirclePoint& x, const Fixed& delta,
                    const DriftParams& params, const CeilingSpec& spec,
                    const ContinuedFraction& cf, std::uint64_t drift_time,
                    bool drift_forward) {
    // post-drift points: T^{m}x forward, T^{-(m+1)}x backward
    CirclePoint X = x;
    std::int64_t jump = drift_forward ? std::int64_t(drift_time)
                                      : -std::int64_t(drift_time + 1);
    X.jump(cf.alpha(), jump, std::max(1.0, cf.alpha_err_ulps()));
    std::uint64_t L =
        std::uint64_t(std::floor(params.kappa * double(drift_time))) + 1;
    WindowReport wa = verify_switchable_window(X, delta, params, Direction::Forward, L,
                                               spec, cf);
    WindowReport wb = verify_switchable_window(X, delta, params, Direction::Backward,
                                               L, spec, cf);
    // M per the drift proof: the drift time for the aligned direction, shrunk
    // by 1+kappa when the window runs against it
    std::uint64_t M_aligned = drift_time;
    std::uint64_t M_against =
        std::uint64_t(std::floor(double(drift_time) / (1.0 + params.kappa)));
    bool a_aligned = drift_forward;
    wa.M = a_aligned ? M_aligned : M_against;
    wb.M = a_aligned ? M_against : M_aligned;
    bool prefer_a = wa.fraction >= wb.fraction;
    rep.window = prefer_a ? wa : wb;
    rep.window_alt = prefer_a ? wb : wa;
}

}  // namespace

DriftReport find_drift_log(const CirclePoint& x, const Fixed& delta,
                           const DriftParams& params, const CeilingSpec& spec,
                           const ContinuedFraction& cf) {
    if (spec.strength_imbalance() <= 0)
        throw ConfigInvalid("find_drift_log refuses symmetric specs");
    const double dist = delta.to_double();
    DriftReport rep;
    rep.scale_s = find_scale(spec, cf, dist);
    const std::size_t s = rep.scale_s;
    rep.scale_fallback = cf.q(s + 1) <= cf.q(s).mul_u64(2);
    if (cf.q(s).bit_length() > 40)
        throw PrecisionExhausted("drift scale too deep to scan");
    const std::uint64_t qs = cf.q(s).to_u64();
    const double qs1 = cf.q_dbl(s + 1);
    const double v_s = default_v_s(cf, s, params.C);
    const std::uint64_t R_lim =
        std::max<std::uint64_t>(std::uint64_t(qs1 / (8.0 * params.C * double(qs))), 1);
    const std::uint64_t scan_n =
        std::max<std::uint64_t>(std::uint64_t(qs1 / (4.0 * params.C)), qs) + 1;

    PairDiff pd(spec, cf, x, delta);
    int sigma = 0;
    if (pd.nr_scan(1, scan_n, v_s).clear) {
        sigma = 1;
        rep.branch = "forward_clear";
        rep.direction = Direction::Forward;
    } else if (pd.nr_scan(-1, scan_n, v_s).clear) {
        sigma = -1;
        rep.branch = "backward_clear";
        rep.direction = Direction::Backward;
    } else {
        rep.status = DriftStatus::NonResonanceBothSides;
        return rep;
    }

    auto e = pd.block_prefix(sigma, qs, R_lim);
    std::uint64_t n0 = 0;
    for (std::uint64_t R = 1; R <= R_lim; ++R) {
        if (params.P.contains(e[R])) {
            n0 = R;
            rep.p = e[R];
            break;
        }
    }
    if (n0 == 0) {
        rep.status = DriftStatus::NoDriftFound;
        rep.e_trace = std::move(e);
        return rep;
    }
    rep.status = DriftStatus::Ok;
    rep.n0 = n0;
    rep.drift_time = n0 * qs;
    rep.p_in_band = true;
    // drift-time budget against the pair distance
    double hs = h_of(spec, 1.0 / (2.0 * double(qs)));
    rep.budget_ok = double(rep.drift_time) * hs <=
                  2.0 * (params.d + 1.0) / (params.d * dist);
    attach_windows(rep, x, delta, params, spec, cf, rep.drift_time, sigma > 0);
    return rep;
}

DriftReport find_drift_power(const CirclePoint& x, const Fixed& delta,
                             const DriftParams& params, const CeilingSpec& spec,
                             const ContinuedFraction& cf) {
    if (cf.max_quotient() > params.quotient_bound)
        throw ConfigInvalid("find_drift_power refuses unbounded-type rotation numbers");
    // dominant strong singularity and its heavy side
    std::size_t k_star = 0;
    double best = -1;
    for (std::size_t i = 0; i < spec.sing.size(); ++i) {
        double m = std::max(spec.sing[i].A, spec.sing[i].B);
        if (m > best) {
            best = m;
            k_star = i;
        }
    }
    if (best <= 0) throw ConfigInvalid("find_drift_power needs a strong singularity");
    const bool right_side = spec.sing[k_star].A >= spec.sing[k_star].B;
    const double dist = delta.to_double();
    DriftReport rep;
    rep.scale_s = find_scale(spec, cf, dist);
    const std::size_t s = rep.scale_s;
    if (s < 6) throw OutOfRange("power drift needs scale s >= 6");
    if (cf.q(s - 2).bit_length() > 40)
        throw PrecisionExhausted("drift scale too deep to scan");
    const std::uint64_t q_sm2 = cf.q(s - 2).to_u64();
    const std::uint64_t q_sm4 = cf.q(s - 4).to_u64();
    const double radius = 1.0 / (2.0 * params.C * cf.q_dbl(s));
    const double window = 1.0 / double(q_sm4);

    PairDiff pd(spec, cf, x, delta);
    int sigma = 0;
    if (pd.nr_scan(1, q_sm2, radius, /*strong_only=*/true).clear) {
        sigma = 1;
        rep.branch = "forward_clear";
        rep.direction = Direction::Forward;
    } else if (pd.nr_scan(-1, q_sm2, radius, /*strong_only=*/true).clear) {
        sigma = -1;
        rep.branch = "backward_clear";
        rep.direction = Direction::Backward;
    } else {
        rep.status = DriftStatus::NonResonanceBothSides;
        return rep;
    }

    // locate the single visit of [a_k, a_k + 1/q_{s-4}] (or its mirror)
    const Fixed& a = spec.sing[k_star].a;
    CirclePoint probe = x;
    probe.jump(cf.alpha(), sigma * std::int64_t(q_sm4),
               std::max(1.0, cf.alpha_err_ulps()));
    std::uint64_t i0 = 0;
    for (std::uint64_t j = q_sm4; j + 2 <= q_sm2; ++j) {
        Fixed rel = probe.pos().minus(a);
        double u = right_side ? rel.to_double() : rel.to_double_complement();
        if (u > 0 && u <= window) {
            i0 = j;
            break;
        }
        if (sigma > 0)
            probe.advance(cf.alpha(), std::max(1.0, cf.alpha_err_ulps()));
        else
            probe.retreat(cf.alpha(), std::max(1.0, cf.alpha_err_ulps()));
    }
    if (i0 == 0) {
        rep.status = DriftStatus::NoDriftFound;
        return rep;
    }
    // The singular visit sits between block counts m and m+1, where the
    // forward sum over n steps sees orbit indices 0..n-1 but the backward
    // one sees -1..-n (so the visit at -i0 first enters at count i0).
    std::uint64_t m = sigma > 0 ? i0 : i0 - 1;
    double e1 = m == 0 ? 0.0 : pd.block_prefix(sigma, m, 1)[1];
    CirclePoint xi = x;
    xi.jump(cf.alpha(), sigma * std::int64_t(m), std::max(1.0, cf.alpha_err_ulps()));
    PairDiff pstep(spec, cf, xi, delta);
    std::vector<double> one;
    pstep.prefix(sigma, 1, one, /*allow_straddle=*/true);
    double e2 = e1 + one[1];  // cocycle: one extra signed step from T^{sigma m}

    if (params.P.contains(e2)) {
        rep.status = DriftStatus::Ok;
        rep.n0 = i0;
        rep.drift_time = m + 1;
        rep.p = e2;
        rep.p_in_band = true;
        attach_windows(rep, x, delta, params, spec, cf, rep.drift_time, sigma > 0);
    } else if (params.P.contains(e1) && m > 0) {
        rep.status = DriftStatus::Ok;
        rep.n0 = i0;
        rep.drift_time = m;
        rep.p = e1;
        rep.p_in_band = true;
        attach_windows(rep, x, delta, params, spec, cf, rep.drift_time, sigma > 0);
    } else {
        rep.status = DriftStatus::NoDriftFound;
        rep.e_trace = {e1, e2};
    }
    return rep;
}

bool z_set_member(const Fixed& x, const DriftParams& params, const CeilingSpec& spec,
                  const ContinuedFraction& cf) {
    const std::size_t cap = std::min<std::size_t>(cf.size() - 2, 48);
    if (params.model == CeilingModel::Log) {
        for (std::size_t s = params.s0; s <= cap; ++s) {
            if (in_K_alpha(cf, s)) continue;
            if (cf.q(s).bit_length() > 22) break;  // exclusions are vacuous this deep
            // apply B_s only where its measure bound 16 k v_s q_s is
            // informative; smaller scales carry no usable exclusion
            if (16.0 * double(params.k) * default_v_s(cf, s, params.C) * cf.q_dbl(s) >
                0.5)
                continue;
            double radius = 4.0 * default_v_s(cf, s, params.C);
            std::uint64_t qs = cf.q(s).to_u64();
            Fixed pos = x;
            pos.sub_mod1(cf.alpha().mul_u64_mod1(qs));
            for (std::uint64_t j = 0; j < 2 * qs; ++j) {
                for (const auto& sg : spec.sing)
                    if (std::fabs(signed_circle_dist(pos, sg.a)) < radius) return false;
                for (const auto& wk : spec.weak)
                    if (std::fabs(signed_circle_dist(pos, wk.a)) < radius) return false;
                pos.add_mod1(cf.alpha());
            }
        }
        return true;
    }
    // power model: the D_s sieve only constrains the weak singularities
    if (spec.weak.empty()) return true;
    for (std::size_t s = 1; s <= cap; ++s) {
        if (cf.q(s).bit_length() > 22) break;
        std::uint64_t qs = cf.q(s).to_u64();
        double radius = 1.0 / (double(s) * double(s) * double(qs));
        Fixed pos = x;
        pos.sub_mod1(cf.alpha().mul_u64_mod1(qs));
        for (std::uint64_t j = 0; j < 2 * qs; ++j) {
            for (const auto& wk : spec.weak)
                if (std::fabs(signed_circle_dist(pos, wk.a)) < radius) return false;
            pos.add_mod1(cf.alpha());
        }
    }
    return true;
}

EnsembleReport swr_ensemble(const DriftParams& params, const CeilingSpec& spec,
                            const ContinuedFraction& cf, std::size_t pair_count,
                            std::uint64_t seed, unsigned threads) {
    EnsembleReport rep;
    rep.pairs = pair_count;
    rep.outcomes.resize(pair_count);
    if (pair_count == 0) return rep;

    std::atomic<std::size_t> next{0};
    unsigned nw = std::max(1u, std::min<unsigned>(threads, std::thread::hardware_concurrency()));
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= pair_count) return;
            Rng rng = Rng::stream(seed, i);
            PairOutcome& out = rep.outcomes[i];
            // sample a Z-set pair at a scale >= s1
            Fixed x(cf.bits());
            Fixed delta(cf.bits());
            bool sampled = false;
            for (int tries = 0; tries < 20000; ++tries) {
                x = rng.next_fixed(cf.bits());
                double dd = params.delta_max * (0.15 + 0.8 * rng.next_double());
                delta = Fixed::from_double(dd, cf.bits());
                if (!z_set_member(x, params, spec, cf)) continue;
                if (!z_set_member(x.plus(delta), params, spec, cf)) continue;
                sampled = true;
                break;
            }
            if (!sampled) {
                out.failure = "sampling";
                continue;
            }
            try {
                CirclePoint xp(x, 1);
                out.report = params.model == CeilingModel::Log
                                 ? find_drift_log(xp, delta, params, spec, cf)
                                 : find_drift_power(xp, delta, params, spec, cf);
                if (out.report.status != DriftStatus::Ok) {
                    out.failure = to_string(out.report.status);
                } else if (!out.report.p_in_band) {
                    out.failure = "band";
                } else if (!out.report.budget_ok) {
                    out.failure = "budget";
                } else if (out.report.window.fraction < 1.0) {
                    out.failure = "window";
                } else if (out.report.window.M < std::uint64_t(params.N) ||
                           out.report.window.L < std::uint64_t(params.N)) {
                    out.failure = "window_size";
                } else {
                    out.success = true;
                }
            } catch (const SingularityProximity&) {
                out.failure = "precision";
            } catch (const PrecisionExhausted&) {
                out.failure = "precision";
            } catch (const NonResonanceViolated&) {
                out.failure = "non_resonance";
            }
        }
    };
    if (nw == 1) {
        worker();
    } else {
        std::vector<std::future<void>> fs;
        for (unsigned w = 0; w < nw; ++w) fs.push_back(std::async(std::launch::async, worker));
        for (auto& f : fs) f.get();
    }

    std::vector<std::uint64_t> n0s;
    for (const auto& out : rep.outcomes) {
        if (out.success) {
            ++rep.successes;
            n0s.push_back(out.report.n0);
            (out.report.direction == Direction::Forward ? rep.forward : rep.backward)++;
            (out.report.branch == "forward_clear" ? rep.branch_forward
                                                   : rep.branch_backward)++;
        } else if (out.failure == "non_resonance_both_sides" ||
                   out.failure == "non_resonance") {
            ++rep.fail_nonres;
        } else if (out.failure == "no_drift_found") {
            ++rep.fail_nodrift;
        } else if (out.failure == "window" || out.failure == "window_size") {
            ++rep.fail_window;
        } else if (out.failure == "precision") {
            ++rep.fail_precision;
        } else if (out.failure == "band" || out.failure == "budget") {
            ++rep.fail_band;
        }
    }
    rep.success_rate = double(rep.successes) / double(pair_count);
    if (!n0s.empty()) {
        std::sort(n0s.begin(), n0s.end());
        rep.median_n0 = n0s[n0s.size() / 2];
    }
    return rep;
}

// ---------------------------------------------------------------- WR failure

WrConstruction wr_failure_construct(const ContinuedFraction& cf, const WrParams& params,
                                    std::size_t sample_count, std::uint64_t seed) {
    if (params.gamma <= -1 || params.gamma >= 0)
        throw ConfigInvalid("gamma must lie in (-1, 0)");
    if (cf.max_quotient() > 100)
        throw ConfigInvalid("the WR-failure construction needs bounded type");
    const double gamma = params.gamma;
    const std::size_t w = params.w;
    if (w + 2 >= cf.size()) throw ConfigInvalid("expand deeper for this w");

    WrConstruction con;
    con.c = cf.ratio_sup();
    con.d = params.d > 0 ? params.d : 1.05 * std::pow(con.c, 1.0 - gamma);
    if (con.d <= std::pow(con.c, 1.0 - gamma))
        throw ConfigInvalid("d must exceed c^{1-gamma}");

    // block-scale bracket: smallest l >= 1 with (q_{w-l}/q_w)^{1-gamma} <= 1/d
    con.l = 0;
    for (std::size_t l = 1; l < w; ++l) {
        double r = std::exp((1.0 - gamma) * (ln_big(cf.q(w - l)) - ln_big(cf.q(w))));
        if (r <= 1.0 / con.d) {
            con.l = l;
            break;
        }
    }
    if (con.l == 0)
        throw ConstructionFailed("block_scale", "no l satisfies the block-scale bracket");

    // scale bracket: q_{t+1} <= q_w^{1-gamma} < q_{t+2}
    double target = (1.0 - gamma) * ln_big(cf.q(w));
    std::size_t t = 0;
    for (std::size_t u = 0; u + 2 < cf.size(); ++u) {
        if (ln_big(cf.q(u + 1)) <= target && target < ln_big(cf.q(u + 2))) {
            t = u;
            break;
        }
    }
    if (t == 0)
        throw ConstructionFailed("scale_bracket",
                                 "scale index not bracketed; expand deeper");
    con.t_index = t;
    con.c1 = std::size_t(std::ceil(4.0 * con.c));

    // Nested-interval realization of [1/q_{t+1}, 2/q_{t+1}] cap bigcap B_u.
    // Exclusion radii at the nominal start level t - c1 exceed the whole
    // interval at these depths (the i = 0 orbit point alone covers it), so
    // the recursion starts at the first level whose radius fits and the
    // k-scan below verifies the protection the skipped levels encode.
    if (t <= con.c1)
        throw ConstructionFailed("recursion",
                                 "t <= c1: no room for the interval recursion");
    double q_t1 = cf.q_dbl(t + 1);
    Fixed lo = Fixed::from_rational(BigUInt(1), cf.q(t + 1), cf.bits());
    double len = 1.0 / q_t1;
    std::size_t u_start = 0;
    for (std::size_t u = t - con.c1; u + 1 < cf.size(); ++u) {
        double r_u = 1.0 / (2.0 * double(u) * double(u) * cf.q_dbl(u));
        if (r_u < len / 2) {
            u_start = u;
            break;
        }
    }
    if (u_start == 0) throw ConstructionFailed("recursion", "no feasible start level");
    const double ind_c = std::pow(con.c, double(con.c1) + 2.0);
    for (std::size_t u = u_start; u + 1 < cf.size(); ++u) {
        if (cf.q(u).bit_length() > 63 || cf.q(u).to_u64() > params.q_cap) break;
        std::uint64_t qu = cf.q(u).to_u64();
        double r_u = 1.0 / (2.0 * double(u) * double(u) * double(qu));
        // collect orbit offsets within the interval, in offset coordinates
        std::vector<std::pair<double, double>> cut;  // excluded [a, b] offsets
        for (std::uint64_t m = 0; m < 2 * qu; ++m) {
            // i = m - qu in [-q_u, q_u)
            Fixed pt = cf.alpha().mul_u64_mod1(m < qu ? qu - m : m - qu);
            if (m < qu) pt = pt.complement();  // i < 0: {i alpha} = 1 - {|i| alpha}
            double off = signed_circle_dist(pt, lo);
            if (off > -r_u && off < len + r_u)
                cut.emplace_back(std::max(0.0, off - r_u), std::min(len, off + r_u));
        }
        std::sort(cut.begin(), cut.end());
        // keep the lowest surviving subinterval that still meets the
        // induction length 1/(c^{c1+2} q_u); fall back to the longest
        double need = 1.0 / (ind_c * double(qu));
        double best_lo = 0, best_len = -1, low_lo = -1, low_len = 0, pos = 0;
        auto consider = [&](double a, double b) {
            if (b - a > best_len) {
                best_len = b - a;
                best_lo = a;
            }
            if (low_lo < 0 && b - a >= std::min(need, len * 0.05)) {
                low_lo = a;
                low_len = b - a;
            }
        };
        for (auto& [a, b] : cut) {
            if (a > pos) consider(pos, a);
            pos = std::max(pos, b);
        }
        if (len > pos) consider(pos, len);
        if (best_len <= 0)
            throw ConstructionFailed("recursion",
                                     "stage " + std::to_string(u) + " emptied");
        if (low_lo >= 0) {
            lo.add_mod1(Fixed::from_double(low_lo, cf.bits()));
            len = low_len;
        } else {
            lo.add_mod1(Fixed::from_double(best_lo, cf.bits()));
            len = best_len;
        }
    }
    con.delta0 = lo.plus(Fixed::from_double(len * 0.1, cf.bits()));
    con.delta0_dbl = con.delta0.to_double();

    // admissible-range check
    double qw1g = std::exp((1.0 - gamma) * ln_big(cf.q(w)));
    con.range_lo = 1.0 / qw1g;
    con.range_hi = 2.0 * con.c / qw1g;
    con.in_range = con.delta0_dbl >= con.range_lo && con.delta0_dbl <= con.range_hi;

    // exhaustive Diophantine-protection scan for delta0
    std::int64_t k_min = std::int64_t(std::ceil(1.0 / std::sqrt(params.eps)));
    for (std::int64_t k = k_min; k <= params.k_scan_max; ++k) {
        Fixed ka = cf.alpha().mul_u64_mod1(std::uint64_t(k));
        double bound = std::pow(double(k), -1.0 - params.zeta);
        double d1 = std::fabs(signed_circle_dist(con.delta0, ka));
        if (d1 < bound) con.protection_violations.emplace_back(k, d1);
        double d2 = std::fabs(signed_circle_dist(con.delta0, ka.complement()));
        if (d2 < bound) con.protection_violations.emplace_back(-k, d2);
    }

    // sample base points: the orbit must visit [1/(2dq_w), 1/(dq_w)] within
    // q_{w-l} steps, and the pair interval must avoid the singularity for
    // w q_w steps (exactly what the monotonicity needs); whether the orbit
    // also clears the wide radius is recorded per sample, not required.
    const std::uint64_t qw = cf.q(w).to_u64();
    const std::uint64_t qwl = cf.q(w - con.l).to_u64();
    const double win_lo = 1.0 / (2.0 * con.d * double(qw));
    const double win_hi = 1.0 / (con.d * double(qw));
    const double fat = 2.0 * con.c / qw1g;
    con.w02_expected_measure = double(qwl) / (2.0 * con.d * double(qw));

    Rng rng(seed);
    std::uint64_t tries = 0, w02_hits = 0;
    while (con.samples.size() < sample_count && tries < 400000) {
        ++tries;
        Fixed x = rng.next_fixed(cf.bits());
        // visit index
        std::uint64_t i0 = 0;
        bool hit = false;
        Fixed pos = x;
        for (std::uint64_t j = 0; j < qwl; ++j) {
            double u = pos.to_double();
            if (u >= win_lo && u <= win_hi) {
                i0 = j;
                hit = true;
                break;
            }
            pos.add_mod1(cf.alpha());
        }
        if (!hit) continue;
        ++w02_hits;
        // no-straddle of the singularity for w q_w steps, plus the fattened flag
        bool clear = true, wide_avoid = true;
        pos = x;
        for (std::uint64_t j = 0; j < std::uint64_t(w) * qw; ++j) {
            double ul = pos.to_double_complement();
            double ur = pos.to_double();
            if (ul <= con.delta0_dbl || ur == 0.0) {
                clear = false;
                break;
            }
            if (std::min(ur, ul) < fat) wide_avoid = false;
            pos.add_mod1(cf.alpha());
        }
        if (!clear) continue;
        con.samples.push_back({x, i0, wide_avoid});
    }
    con.w02_observed_rate = tries ? double(w02_hits) / double(tries) : 0;
    if (con.samples.size() < sample_count)
        throw ConstructionFailed("W0",
                                 "sampled " + std::to_string(con.samples.size()) +
                                     " of " + std::to_string(sample_count));
    return con;
}

WrVerifyReport wr_failure_verify(const Fixed& x, const Fixed& delta0,
                                 const WrParams& params, const WrConstruction& con,
                                 const ContinuedFraction& cf, std::uint64_t i0) {
    CeilingSpec spec = CeilingSpec::power_single(0.0, params.gamma, params.offset,
                                                 cf.bits());
    const std::uint64_t total = std::uint64_t(params.w) * cf.q(params.w).to_u64();
    PairDiff pd(spec, cf, CirclePoint(x, 1), delta0);
    std::vector<double> diff;
    pd.prefix(1, total - 1, diff);

    WrVerifyReport rep;
    rep.i0 = i0;
    rep.pre_jump_max = 0;
    rep.post_jump_min = HUGE_VAL;
    rep.monotone = true;
    for (std::uint64_t n = 1; n < total; ++n) {
        if (n <= i0)
            rep.pre_jump_max = std::max(rep.pre_jump_max, diff[n]);
        else
            rep.post_jump_min = std::min(rep.post_jump_min, diff[n]);
        if (n >= 1 && diff[n] <= 0) rep.positive = false;
        if (diff[n] < diff[n - 1] - 1e-12) rep.monotone = false;
    }
    rep.pre_ok = rep.pre_jump_max < 100.0 * con.c / con.d;
    rep.post_ok = rep.post_jump_min > std::fabs(params.gamma) * con.d / 2.0;

    // near-coincidence window length against the analytic bound
    rep.eta = std::fabs(params.gamma) * con.d / 4.0;
    rep.len_exit = total;
    for (std::uint64_t n = 1; n < total; ++n) {
        if (std::fabs(diff[n]) >= rep.eta) {
            rep.len_exit = n;
            break;
        }
    }
    rep.len_bound = 2.0 * con.c * std::pow(rep.eta, 1.0 + params.gamma) *
                    std::pow(delta0.to_double(), -1.0 / (1.0 - params.gamma));
    rep.len_ok = double(rep.len_exit) < rep.len_bound;
    return rep;
}

}  // namespace rotlab
