// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "rotlab/birkhoff.hpp"

#include <algorithm>
#include <cmath>

#include "rotlab/errors.hpp"
#include "rotlab/kernels.hpp"

namespace rotlab {

namespace {

struct Acc {
    double sum = 0, comp = 0;
    void add(double v) {
        double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double get() const { return sum + comp; }
};

// Flattened singular terms: strong singularities keep their per-side
// strengths, weak ones become symmetric power terms.
struct Term {
    Fixed a;
    double A, B;
    double gr, gl;
    bool logm;
};

std::vector<Term> flatten(const CeilingSpec& spec) {
    std::vector<Term> out;
    bool logm = spec.model == CeilingModel::Log;
    for (const auto& s : spec.sing)
        out.push_back({s.a, s.A, s.B, s.gamma_right, s.gamma_left, logm});
    for (const auto& w : spec.weak)
        out.push_back({w.a, w.strength, w.strength, w.gamma, w.gamma, false});
    return out;
}

// Streams exact fixed-point distances of an orbit to each singular position.
struct OrbitRunner {
    OrbitRunner(const std::vector<Term>& terms, const Fixed& alpha, const Fixed& pos)
        : alpha_(alpha) {
        rel_.reserve(terms.size());
        for (const auto& t : terms) rel_.push_back(pos.minus(t.a));
    }

    // forward: emit distances of the current point, then advance
    void fill_fwd(std::size_t m, std::vector<std::vector<double>>& ur,
                  std::vector<std::vector<double>>& ul) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t i = 0; i < rel_.size(); ++i) {
                ur[i][j] = rel_[i].to_double();
                ul[i][j] = rel_[i].to_double_complement();
            }
            for (auto& r : rel_) r.add_mod1(alpha_);
        }
    }
    // backward: advance first (the backward sum starts at T^{-1})
    void fill_bwd(std::size_t m, std::vector<std::vector<double>>& ur,
                  std::vector<std::vector<double>>& ul) {
        for (std::size_t j = 0; j < m; ++j) {
            for (auto& r : rel_) r.sub_mod1(alpha_);
            for (std::size_t i = 0; i < rel_.size(); ++i) {
                ur[i][j] = rel_[i].to_double();
                ul[i][j] = rel_[i].to_double_complement();
            }
        }
    }

    std::vector<Fixed> rel_;
    Fixed alpha_;
};

[[noreturn]] void throw_proximity(std::int64_t global_j, std::size_t sing) {
    throw SingularityProximity(global_j, sing,
                               "orbit point within sigma_min of singularity " +
                                   std::to_string(sing) + " at step " +
                                   std::to_string(global_j));
}

// kernel-backed sum of the chunk's contribution to f^(n) (without offset)
double chunk_f_sum(const CeilingSpec& spec, const std::vector<Term>& terms,
                   const std::vector<std::vector<double>>& ur,
                   const std::vector<std::vector<double>>& ul, std::size_t m,
                   std::int64_t base_j, int sigma) {
    const auto& K = kernels::active();
    Acc acc;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Term& t = terms[i];
        double mn = std::min(K.min_elem(ur[i].data(), m), K.min_elem(ul[i].data(), m));
        if (mn < spec.sigma_min) {
            for (std::size_t j = 0; j < m; ++j)
                if (std::min(ur[i][j], ul[i][j]) < spec.sigma_min)
                    throw_proximity(base_j + sigma * std::int64_t(j + (sigma < 0)), i);
        }
        if (t.logm) {
            if (t.A != 0) acc.add(t.A * K.sum_neg_log(ur[i].data(), m));
            if (t.B != 0) acc.add(t.B * K.sum_neg_log(ul[i].data(), m));
        } else {
            if (t.A != 0) acc.add(t.A * K.sum_pow(ur[i].data(), m, t.gr));
            if (t.B != 0) acc.add(t.B * K.sum_pow(ul[i].data(), m, t.gl));
        }
    }
    return acc.get();
}

double chunk_fprime_sum(const std::vector<Term>& terms,
                        const std::vector<std::vector<double>>& ur,
                        const std::vector<std::vector<double>>& ul, std::size_t m,
                        const CeilingSpec& spec, std::int64_t base_j, int sigma) {
    const auto& K = kernels::active();
    Acc acc;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Term& t = terms[i];
        double mn = std::min(K.min_elem(ur[i].data(), m), K.min_elem(ul[i].data(), m));
        if (mn < spec.sigma_min) {
            for (std::size_t j = 0; j < m; ++j)
                if (std::min(ur[i][j], ul[i][j]) < spec.sigma_min)
                    throw_proximity(base_j + sigma * std::int64_t(j + (sigma < 0)), i);
        }
        if (t.logm) {
            if (t.A != 0) acc.add(-t.A * K.sum_recip(ur[i].data(), m));
            if (t.B != 0) acc.add(t.B * K.sum_recip(ul[i].data(), m));
        } else {
            if (t.A != 0) acc.add(t.A * t.gr * K.sum_pow(ur[i].data(), m, t.gr - 1));
            if (t.B != 0) acc.add(-t.B * t.gl * K.sum_pow(ul[i].data(), m, t.gl - 1));
        }
    }
    return acc.get();
}

template <bool Prime>
double fast_sum(const CeilingSpec& spec, const ContinuedFraction& cf,
                const CirclePoint& x, std::int64_t n, const SumOptions& opt) {
    if (n == 0) return 0.0;
    const int sigma = n > 0 ? 1 : -1;
    const std::uint64_t steps = n > 0 ? std::uint64_t(n) : std::uint64_t(-n);
    x.check_budget(double(steps), std::max(1.0, cf.alpha_err_ulps()), opt.orbit_tol);

    auto terms = flatten(spec);
    OrbitRunner run(terms, cf.alpha(), x.pos());
    std::vector<std::vector<double>> ur(terms.size()), ul(terms.size());
    for (auto& b : ur) b.resize(opt.chunk);
    for (auto& b : ul) b.resize(opt.chunk);

    // Ostrowski blocks, largest scale first; each block is summed in chunks
    // and folded in with compensated accumulation.
    Acc total;
    std::uint64_t done = 0;
    for (auto [s, count] : ostrowski_blocks(cf, steps)) {
        std::uint64_t block = cf.q(s).to_u64() * count;
        std::uint64_t left = block;
        while (left > 0) {
            std::size_t m = std::size_t(std::min<std::uint64_t>(left, opt.chunk));
            if (sigma > 0)
                run.fill_fwd(m, ur, ul);
            else
                run.fill_bwd(m, ur, ul);
            total.add(Prime ? chunk_fprime_sum(terms, ur, ul, m, spec,
                                               std::int64_t(done), sigma)
                            : chunk_f_sum(spec, terms, ur, ul, m, std::int64_t(done),
                                          sigma));
            done += m;
            left -= m;
        }
    }
    if (!Prime && spec.offset != 0) total.add(spec.offset * double(steps));
    return sigma > 0 ? total.get() : -total.get();
}

}  // namespace

std::vector<std::pair<std::size_t, std::uint64_t>> ostrowski_blocks(
    const ContinuedFraction& cf, std::uint64_t n) {
    std::vector<std::pair<std::size_t, std::uint64_t>> out;
    std::size_t s = cf.size() - 1;
    while (s > 0 && (cf.q(s).bit_length() > 63 || cf.q(s).to_u64() > n)) --s;
    std::uint64_t left = n;
    for (std::size_t i = s + 1; i-- > 0 && left > 0;) {
        std::uint64_t qs = cf.q(i).to_u64();
        if (qs > left) continue;
        out.emplace_back(i, left / qs);
        left %= qs;
    }
    return out;
}

double birkhoff_sum_naive(const CeilingSpec& spec, const ContinuedFraction& cf,
                          const CirclePoint& x, std::int64_t n) {
    if (n == 0) return 0.0;
    const int sigma = n > 0 ? 1 : -1;
    const std::uint64_t steps = n > 0 ? std::uint64_t(n) : std::uint64_t(-n);
    x.check_budget(double(steps), std::max(1.0, cf.alpha_err_ulps()));
    CirclePoint p = x;
    Acc acc;
    for (std::uint64_t j = 0; j < steps; ++j) {
        if (sigma < 0) p.retreat(cf.alpha(), 1);
        try {
            acc.add(spec.eval_f(p));
        } catch (SingularityProximity& e) {
            throw_proximity(sigma > 0 ? std::int64_t(j) : -std::int64_t(j + 1),
                            e.singularity);
        }
        if (sigma > 0) p.advance(cf.alpha(), 1);
    }
    return sigma > 0 ? acc.get() : -acc.get();
}

double birkhoff_sum_prime_naive(const CeilingSpec& spec, const ContinuedFraction& cf,
                                const CirclePoint& x, std::int64_t n) {
    if (n == 0) return 0.0;
    const int sigma = n > 0 ? 1 : -1;
    const std::uint64_t steps = n > 0 ? std::uint64_t(n) : std::uint64_t(-n);
    x.check_budget(double(steps), std::max(1.0, cf.alpha_err_ulps()));
    CirclePoint p = x;
    Acc acc;
    for (std::uint64_t j = 0; j < steps; ++j) {
        if (sigma < 0) p.retreat(cf.alpha(), 1);
        try {
            acc.add(spec.eval_f_prime(p));
        } catch (SingularityProximity& e) {
            throw_proximity(sigma > 0 ? std::int64_t(j) : -std::int64_t(j + 1),
                            e.singularity);
        }
        if (sigma > 0) p.advance(cf.alpha(), 1);
    }
    return sigma > 0 ? acc.get() : -acc.get();
}

double birkhoff_sum(const CeilingSpec& spec, const ContinuedFraction& cf,
                    const CirclePoint& x, std::int64_t n, const SumOptions& opt) {
    return fast_sum<false>(spec, cf, x, n, opt);
}

double birkhoff_sum_prime(const CeilingSpec& spec, const ContinuedFraction& cf,
                          const CirclePoint& x, std::int64_t n, const SumOptions& opt) {
    return fast_sum<true>(spec, cf, x, n, opt);
}

PairDiff::PairDiff(const CeilingSpec& spec, const ContinuedFraction& cf, CirclePoint x,
                   const Fixed& delta)
    : spec_(spec), cf_(cf), x_(std::move(x)), delta_(delta),
      delta_dbl_(delta.to_double()) {
    if (delta_.is_zero()) throw ConfigInvalid("pair distance must be nonzero");
}

void PairDiff::prefix(int sigma, std::uint64_t n, std::vector<double>& out,
                      bool allow_straddle) const {
    x_.check_budget(double(n), std::max(1.0, cf_.alpha_err_ulps()));
    auto terms = flatten(spec_);
    std::vector<Fixed> rx, ry;
    Fixed ypos = x_.pos().plus(delta_);
    for (const auto& t : terms) {
        rx.push_back(x_.pos().minus(t.a));
        ry.push_back(ypos.minus(t.a));
    }
    out.assign(n + 1, 0.0);
    Acc acc;
    const double d = delta_dbl_;
    for (std::uint64_t j = 0; j < n; ++j) {
        if (sigma < 0)
            for (std::size_t i = 0; i < terms.size(); ++i) {
                rx[i].sub_mod1(cf_.alpha());
                ry[i].sub_mod1(cf_.alpha());
            }
        std::int64_t gj = sigma > 0 ? std::int64_t(j) : -std::int64_t(j + 1);
        double step = 0;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const Term& t = terms[i];
            // exact straddle test: adding delta wrapped past the singularity
            if (ry[i] < rx[i]) {
                if (!allow_straddle)
                    throw NonResonanceViolated(gj, i,
                                               "interval orbit straddles singularity " +
                                                   std::to_string(i));
                // direct two-point difference for the straddled term
                double urx = rx[i].to_double();
                double ulx = rx[i].to_double_complement();
                double ury = ry[i].to_double();
                double uly = ry[i].to_double_complement();
                if (std::min({urx, ulx, ury, uly}) < spec_.sigma_min)
                    throw_proximity(gj, i);
                auto side = [&](double u, double g) {
                    return t.logm ? -std::log(u) : std::pow(u, g);
                };
                step += t.A * (side(urx, t.gr) - side(ury, t.gr)) +
                        t.B * (side(ulx, t.gl) - side(uly, t.gl));
                continue;
            }
            double urx = rx[i].to_double();
            double uly = ry[i].to_double_complement();
            if (urx < spec_.sigma_min || uly < spec_.sigma_min) throw_proximity(gj, i);
            if (t.logm) {
                if (t.A != 0) step += t.A * std::log1p(d / urx);
                if (t.B != 0) step -= t.B * std::log1p(d / uly);
            } else {
                // (u+d)^g - u^g is f(y)-f(x) on the right side, f(x)-f(y) on
                // the left one (whose exact distance comes from the y orbit)
                if (t.A != 0)
                    step -= t.A * std::pow(urx, t.gr) *
                            std::expm1(t.gr * std::log1p(d / urx));
                if (t.B != 0)
                    step += t.B * std::pow(uly, t.gl) *
                            std::expm1(t.gl * std::log1p(d / uly));
            }
        }
        if (sigma > 0)
            for (std::size_t i = 0; i < terms.size(); ++i) {
                rx[i].add_mod1(cf_.alpha());
                ry[i].add_mod1(cf_.alpha());
            }
        acc.add(step);
        out[j + 1] = sigma > 0 ? acc.get() : -acc.get();
    }
}

std::vector<double> PairDiff::block_prefix(int sigma, std::uint64_t stride,
                                           std::uint64_t R_max,
                                           const SumOptions& opt) const {
    x_.check_budget(double(stride) * double(R_max),
                    std::max(1.0, cf_.alpha_err_ulps()), opt.orbit_tol);
    auto terms = flatten(spec_);
    const auto& K = kernels::active();
    std::vector<Fixed> rx, ry;
    Fixed ypos = x_.pos().plus(delta_);
    for (const auto& t : terms) {
        rx.push_back(x_.pos().minus(t.a));
        ry.push_back(ypos.minus(t.a));
    }
    const double d = delta_dbl_;
    std::vector<double> urx(opt.chunk), uly(opt.chunk);
    std::vector<double> e(R_max + 1, 0.0);
    Acc acc;
    std::uint64_t done = 0;
    for (std::uint64_t R = 0; R < R_max; ++R) {
        std::uint64_t left = stride;
        while (left > 0) {
            std::size_t m = std::size_t(std::min<std::uint64_t>(left, opt.chunk));
            Acc chunk;
            for (std::size_t i = 0; i < terms.size(); ++i) {
                const Term& t = terms[i];
                // stream this term's distances for the chunk
                Fixed cx = rx[i], cy = ry[i];
                for (std::size_t j = 0; j < m; ++j) {
                    if (sigma < 0) {
                        cx.sub_mod1(cf_.alpha());
                        cy.sub_mod1(cf_.alpha());
                    }
                    if (cy < cx)
                        throw NonResonanceViolated(
                            sigma > 0 ? std::int64_t(done + j)
                                      : -std::int64_t(done + j + 1),
                            i, "interval orbit straddles singularity");
                    urx[j] = cx.to_double();
                    uly[j] = cy.to_double_complement();
                    if (sigma > 0) {
                        cx.add_mod1(cf_.alpha());
                        cy.add_mod1(cf_.alpha());
                    }
                }
                rx[i] = cx;
                ry[i] = cy;
                double mn = std::min(K.min_elem(urx.data(), m), K.min_elem(uly.data(), m));
                if (mn < spec_.sigma_min) {
                    for (std::size_t j = 0; j < m; ++j)
                        if (std::min(urx[j], uly[j]) < spec_.sigma_min)
                            throw_proximity(sigma > 0 ? std::int64_t(done + j)
                                                      : -std::int64_t(done + j + 1),
                                            i);
                }
                if (t.logm) {
                    if (t.A != 0) chunk.add(t.A * K.sum_log1p_ratio(urx.data(), m, d));
                    if (t.B != 0) chunk.add(-t.B * K.sum_log1p_ratio(uly.data(), m, d));
                } else {
                    if (t.A != 0)
                        chunk.add(-t.A * K.sum_pow_diff(urx.data(), m, d, t.gr));
                    if (t.B != 0)
                        chunk.add(t.B * K.sum_pow_diff(uly.data(), m, d, t.gl));
                }
            }
            acc.add(chunk.get());
            done += m;
            left -= m;
        }
        e[R + 1] = sigma > 0 ? acc.get() : -acc.get();
    }
    return e;
}

PairDiff::NrHit PairDiff::nr_scan(int sigma, std::uint64_t n, double radius,
                                  bool strong_only) const {
    x_.check_budget(double(n), std::max(1.0, cf_.alpha_err_ulps()));
    auto terms = flatten(spec_);
    std::vector<Fixed> rx;
    for (const auto& t : terms) rx.push_back(x_.pos().minus(t.a));
    const double d = delta_dbl_;
    for (std::uint64_t j = 0; j < n; ++j) {
        if (sigma < 0)
            for (auto& r : rx) r.sub_mod1(cf_.alpha());
        std::size_t limit = strong_only ? spec_.sing.size() : terms.size();
        for (std::size_t i = 0; i < limit; ++i) {
            double ur = rx[i].to_double();
            double ul = rx[i].to_double_complement();
            if (ur <= radius || ul <= radius + d) {
                std::int64_t gj = sigma > 0 ? std::int64_t(j) : -std::int64_t(j + 1);
                return {false, std::uint64_t(gj < 0 ? -gj : gj), i};
            }
        }
        if (sigma > 0)
            for (auto& r : rx) r.add_mod1(cf_.alpha());
    }
    return {};
}

DkReport dk_verify(const CeilingSpec& pure_h, const ContinuedFraction& cf,
                   const CirclePoint& x, std::size_t s) {
    if (pure_h.sing.size() != 1 || !pure_h.weak.empty() || pure_h.sing[0].B != 0 ||
        pure_h.sing[0].A != 1.0 || !pure_h.sing[0].a.is_zero())
        throw ConfigInvalid("dk_verify expects the pure model: one singularity at 0, A=1, B=0");
    if (s + 1 > cf.size()) throw ConfigInvalid("dk_verify: s exceeds expanded depth");
    std::uint64_t qs = cf.q(s).to_u64();
    x.check_budget(double(qs), std::max(1.0, cf.alpha_err_ulps()));

    std::vector<double> ur(qs);
    Fixed rel = x.pos();  // singularity at 0
    std::uint64_t jmin = 0;
    for (std::uint64_t j = 0; j < qs; ++j) {
        ur[j] = rel.to_double();
        if (ur[j] < ur[jmin]) jmin = j;
        rel.add_mod1(cf.alpha());
    }
    if (ur[jmin] < pure_h.sigma_min) throw_proximity(std::int64_t(jmin), 0);
    const auto& K = kernels::active();
    bool logm = pure_h.model == CeilingModel::Log;
    double g = pure_h.gamma;
    double value = logm ? -K.sum_recip(ur.data(), qs)
                        : g * K.sum_pow(ur.data(), qs, g - 1.0);
    double hs = pure_h.h(1.0 / (2.0 * double(qs)));
    double hps = pure_h.h_prime(1.0 / (2.0 * double(qs)));
    double c0 = pure_h.c0();
    DkReport rep;
    rep.value = value;
    rep.j_min = jmin;
    rep.upper = -double(qs) * (hs - c0) - 2.0 * hps;
    rep.lower = pure_h.h_prime(ur[jmin]) - double(qs) * (hs - c0) + 2.0 * hps;
    rep.pass = rep.upper > value && value >= rep.lower;
    return rep;
}

double default_v_s(const ContinuedFraction& cf, std::size_t s, double C) {
    double qs = cf.q_dbl(s);
    double l = std::log(qs);
    if (l <= 0) throw ConfigInvalid("v_s undefined at q_s = 1");
    return 1.0 / (qs * std::pow(l, 7.0 / 8.0)) / (4.0 * C);
}

BlockBracketReport block_bracket_check(const CeilingSpec& spec,
                                       const ContinuedFraction& cf,
                            const CirclePoint& x, const Fixed& delta, std::size_t s,
                            double d, double v_s) {
    if (spec.strength_imbalance() <= 0)
        throw ConfigInvalid("block bracket needs sum(A_i - B_i) > 0");
    if (d <= 0) {
        double im = spec.strength_imbalance();
        d = im - std::min(0.1, im / 2.0);
    }
    std::uint64_t qs = cf.q(s).to_u64();
    PairDiff pd(spec, cf, x, delta);
    auto hit = pd.nr_scan(1, qs, 2.0 * v_s);
    if (!hit.clear)
        throw NonResonanceViolated(std::int64_t(hit.j), hit.singularity,
                                   "(nr1) fails at j = " + std::to_string(hit.j));
    auto e = pd.block_prefix(1, qs, 1);
    BlockBracketReport rep;
    rep.s = s;
    rep.d = d;
    rep.v_s = v_s;
    rep.mid = e[1];
    double scale = double(qs) * spec.h(1.0 / (2.0 * double(qs))) * pd.delta();
    rep.lhs = (d + 1.0) * scale;
    rep.rhs = d * scale;
    rep.pass = rep.lhs >= rep.mid && rep.mid >= rep.rhs;
    return rep;
}

DriftSequence drift_sequence(const CeilingSpec& spec, const ContinuedFraction& cf,
                             const CirclePoint& x, const Fixed& delta, std::size_t s,
                             std::uint64_t R_max, double d, double v_s) {
    if (d <= 0) {
        double im = spec.strength_imbalance();
        d = im - std::min(0.1, im / 2.0);
    }
    std::uint64_t qs = cf.q(s).to_u64();
    PairDiff pd(spec, cf, x, delta);
    DriftSequence out;
    out.d = d;
    out.e = pd.block_prefix(1, qs, R_max);
    for (std::uint64_t R = 0; R < R_max; ++R) {
        out.increments.push_back(out.e[R + 1] - out.e[R]);
        // per-block interval-orbit scan at the (nr1) radius
        CirclePoint xb = x;
        xb.jump(cf.alpha(), std::int64_t(R * qs), std::max(1.0, cf.alpha_err_ulps()));
        PairDiff pb(spec, cf, xb, delta);
        out.block_nr_ok.push_back(pb.nr_scan(1, qs, 2.0 * v_s).clear);
    }
    return out;
}

}  // namespace rotlab
