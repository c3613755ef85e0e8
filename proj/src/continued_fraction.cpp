// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "rotlab/continued_fraction.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace rotlab {

namespace {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

u64 isqrt_u128(u128 n) {
    if (n == 0) return 0;
    u64 x = u64(std::sqrt(double(n)));
    // settle the floor exactly
    while (u128(x) * x > n) --x;
    while (u128(x + 1) * (x + 1) <= n) ++x;
    return x;
}

/// Exact partial-quotient generator for (P + sqrt(N))/Q, N not a square.
class SurdCF {
public:
    SurdCF(i128 P, i128 Q, i128 N) : P_(P), Q_(Q), N_(N), s_(isqrt_u128(u128(N))) {}

    u64 next() {
        i128 a = Q_ > 0 ? floor_div(P_ + i128(s_), Q_) : floor_div(P_ + i128(s_) + 1, Q_);
        i128 Pn = a * Q_ - P_;
        Q_ = (N_ - Pn * Pn) / Q_;
        P_ = Pn;
        return u64(a);
    }

private:
    i128 P_, Q_, N_;
    u64 s_;
};

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t nxt = s.find(sep, pos);
        if (nxt == std::string_view::npos) nxt = s.size();
        out.push_back(s.substr(pos, nxt - pos));
        pos = nxt + 1;
    }
    return out;
}

i64 parse_i64(std::string_view s) {
    i64 v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigInvalid("bad integer in rotation descriptor: '" + std::string(s) + "'");
    return v;
}

}  // namespace

RotationDescriptor parse_rotation(std::string_view text) {
    if (text.rfind("surd:", 0) == 0) {
        auto parts = split(text.substr(5), ',');
        if (parts.size() != 4) throw ConfigInvalid("surd descriptor needs p,q,D,r");
        SurdDescriptor d;
        d.p = parse_i64(parts[0]);
        d.q = parse_i64(parts[1]);
        d.D = parse_i64(parts[2]);
        d.r = parse_i64(parts[3]);
        return d;
    }
    if (text.rfind("cf:", 0) == 0) {
        QuotientListDescriptor d;
        for (auto part : split(text.substr(3), ',')) {
            i64 a = parse_i64(part);
            if (a < 1) throw ConfigInvalid("partial quotients must be >= 1");
            d.a.push_back(u64(a));
        }
        if (d.a.empty()) throw ConfigInvalid("empty quotient list");
        return d;
    }
    if (text.rfind("dec:", 0) == 0) {
        std::string_view body = text.substr(4);
        if (body.size() > 1 && body.front() == '"' && body.back() == '"')
            body = body.substr(1, body.size() - 2);
        if (body.rfind("0.", 0) != 0 || body.size() < 3)
            throw ConfigInvalid("decimal descriptor must look like 0.ddd...");
        DecimalDescriptor d;
        d.digits = std::string(body.substr(2));
        for (char ch : d.digits)
            if (ch < '0' || ch > '9') throw ConfigInvalid("bad decimal digit");
        return d;
    }
    throw ConfigInvalid("unknown rotation descriptor: '" + std::string(text) + "'");
}

std::string descriptor_string(const RotationDescriptor& d) {
    if (auto* s = std::get_if<SurdDescriptor>(&d))
        return "surd:" + std::to_string(s->p) + "," + std::to_string(s->q) + "," +
               std::to_string(s->D) + "," + std::to_string(s->r);
    if (auto* c = std::get_if<QuotientListDescriptor>(&d)) {
        std::string out = "cf:";
        for (std::size_t i = 0; i < c->a.size(); ++i)
            out += (i ? "," : "") + std::to_string(c->a[i]);
        return out;
    }
    return "dec:0." + std::get<DecimalDescriptor>(d).digits;
}

double ln_big(const BigUInt& v) {
    if (v.is_zero()) return -std::numeric_limits<double>::infinity();
    unsigned bl = v.bit_length();
    if (bl <= 64) return std::log(double(v.to_u64()));
    BigUInt top = v >> (bl - 64);
    return std::log(double(top.to_u64())) + double(bl - 64) * M_LN2;
}

IntervalCF::IntervalCF(BigUInt lo_num, BigUInt lo_den, BigUInt hi_num, BigUInt hi_den)
    : ln_(std::move(lo_num)), ld_(std::move(lo_den)),
      hn_(std::move(hi_num)), hd_(std::move(hi_den)) {}

std::optional<std::uint64_t> IntervalCF::next() {
    if (dead_) return std::nullopt;
    // x in (L, H), L = ln/ld, H = hn/hd, 0 <= L < H <= 1.
    // a = floor(1/x); open endpoints so exact-integer reciprocals are excluded.
    if (ln_.is_zero()) {
        // lower endpoint 0 means a is unbounded above; cannot certify.
        dead_ = true;
        return std::nullopt;
    }
    auto [qh, rh] = BigUInt::divmod(hd_, hn_);  // 1/H = qh + rh/hn
    auto [ql, rl] = BigUInt::divmod(ld_, ln_);  // 1/L = ql + rl/ln
    // a >= floor(1/H) always (the open endpoint only matters on the L side);
    // a <= floor(1/L), bumped down when 1/L is an exact integer.
    BigUInt a_min = qh;
    BigUInt a_max = rl.is_zero() ? ql - BigUInt(1) : ql;
    if (a_min != a_max || !a_min.fits_u64()) {
        dead_ = true;
        return std::nullopt;
    }
    u64 a = a_min.to_u64();
    // next interval: {1/x} in ({1/H}, {1/L}) = (rh/hn, rl/ln), where an exact
    // zero upper endpoint means 1 (1/L was an integer, fractional part -> 1^-).
    BigUInt nln = rh, nld = hn_;
    BigUInt nhn = rl.is_zero() ? ln_ : rl;  // rl==0: upper endpoint is 1
    BigUInt nhd = ln_;
    ln_ = std::move(nln);
    ld_ = std::move(nld);
    hn_ = std::move(nhn);
    hd_ = std::move(nhd);
    return a;
}

namespace {

struct Expansion {
    std::vector<u64> quot;       // exposed a_1..a_depth
    std::vector<u64> ext;        // superset used for alpha rounding / tails
    BigUInt lo_n, lo_d, hi_n, hi_d;  // exact enclosure of alpha
};

void convergents_of(const std::vector<u64>& a, std::vector<BigUInt>& p,
                    std::vector<BigUInt>& q) {
    p.assign(1, BigUInt(0));
    q.assign(1, BigUInt(1));
    BigUInt pm1(1), qm1(0);  // index -1
    for (std::size_t s = 0; s < a.size(); ++s) {
        BigUInt pn = p.back().mul_u64(a[s]) + pm1;
        BigUInt qn = q.back().mul_u64(a[s]) + qm1;
        pm1 = p.back();
        qm1 = q.back();
        p.push_back(std::move(pn));
        q.push_back(std::move(qn));
    }
}

// Enclosure of all irrationals whose expansion starts with `a`: the interval
// between the final convergent and the mediant with the previous one.
void prefix_enclosure(const std::vector<u64>& a, Expansion& e) {
    std::vector<BigUInt> p, q;
    convergents_of(a, p, q);
    BigUInt mn = p.back() + p[p.size() - 2];
    BigUInt md = q.back() + q[q.size() - 2];
    // order: compare p_n/q_n vs mediant
    if (p.back() * md < mn * q.back()) {
        e.lo_n = p.back();
        e.lo_d = q.back();
        e.hi_n = std::move(mn);
        e.hi_d = std::move(md);
    } else {
        e.lo_n = std::move(mn);
        e.lo_d = std::move(md);
        e.hi_n = p.back();
        e.hi_d = q.back();
    }
}

Expansion expand_surd(const SurdDescriptor& sd, std::size_t depth, unsigned bits) {
    if (sd.r == 0) throw ConfigInvalid("surd descriptor with r = 0");
    if (std::llabs(sd.p) > 100000 || std::llabs(sd.q) > 100000 ||
        std::llabs(sd.r) > 100000 || sd.D < 0 || sd.D > 1000000000)
        throw ConfigInvalid("surd descriptor out of supported range");
    u64 sD = isqrt_u128(u128(sd.D));
    if (sd.q == 0 || u128(sD) * sD == u128(sd.D))
        throw RationalInput("descriptor denotes a rational number");
    // alpha = (p + q sqrt(D)) / r = (P + sqrt(N)) / Q with N = q^2 D,
    // P = sign-adjusted p; make the sqrt coefficient +1 by negating if needed.
    i128 P = sd.p, Q = sd.r;
    i128 N = i128(sd.q) * sd.q * sd.D;
    if (sd.q < 0) {
        P = -P;
        Q = -Q;
    }
    // establish the invariant Q | N - P^2
    if ((N - P * P) % Q != 0) {
        P *= Q > 0 ? Q : -Q;
        N *= Q * Q;
        Q *= Q > 0 ? Q : -Q;
    }
    SurdCF gen(P, Q, N);
    if (gen.next() != 0)
        throw ConfigInvalid("rotation number must lie in (0,1)");
    Expansion e;
    std::size_t target_bits = bits / 2 + 8;
    BigUInt pm1(1), p0(0), qm1(0), q0(1);
    while (e.ext.size() < depth || q0.bit_length() < target_bits) {
        u64 a = gen.next();
        e.ext.push_back(a);
        BigUInt pn = p0.mul_u64(a) + pm1;
        BigUInt qn = q0.mul_u64(a) + qm1;
        pm1 = std::move(p0);
        qm1 = std::move(q0);
        p0 = std::move(pn);
        q0 = std::move(qn);
        if (e.ext.size() > depth + 8 * std::size_t(bits)) break;  // unreachable guard
    }
    e.quot.assign(e.ext.begin(), e.ext.begin() + depth);
    // enclosure from the two deepest convergents
    if (pm1 * q0 < p0 * qm1) {
        e.lo_n = std::move(pm1);
        e.lo_d = std::move(qm1);
        e.hi_n = std::move(p0);
        e.hi_d = std::move(q0);
    } else {
        e.lo_n = std::move(p0);
        e.lo_d = std::move(q0);
        e.hi_n = std::move(pm1);
        e.hi_d = std::move(qm1);
    }
    return e;
}

Expansion expand_decimal(const DecimalDescriptor& dd, std::size_t depth, unsigned bits) {
    BigUInt num = BigUInt::from_decimal(dd.digits);
    BigUInt den(1);
    for (std::size_t i = 0; i < dd.digits.size(); ++i) den = den.mul_u64(10);
    if (num.is_zero() || num >= den)
        throw ConfigInvalid("decimal rotation number must lie in (0,1)");
    BigUInt lo = num - BigUInt(1), hi = num + BigUInt(1);
    if (lo.is_zero() || hi >= den)
        throw ConfigInvalid("decimal too close to 0 or 1 for its certified radius");
    Expansion e;
    e.lo_n = lo;
    e.lo_d = den;
    e.hi_n = hi;
    e.hi_d = den;
    IntervalCF icf(lo, den, hi, den);
    std::size_t target = depth + (bits / 2) / 3 + 4;  // a few spare terms if certifiable
    while (e.ext.size() < target) {
        auto a = icf.next();
        if (!a) break;
        e.ext.push_back(*a);
    }
    if (e.ext.size() < depth)
        throw PrecisionExhausted(
            "decimal string certifies only " + std::to_string(e.ext.size()) +
            " quotients, " + std::to_string(depth) + " requested");
    e.quot.assign(e.ext.begin(), e.ext.begin() + depth);
    return e;
}

Expansion expand_list(const QuotientListDescriptor& ld, std::size_t depth) {
    if (ld.a.size() < depth)
        throw PrecisionExhausted("quotient list shorter than requested depth");
    Expansion e;
    e.ext = ld.a;
    e.quot.assign(ld.a.begin(), ld.a.begin() + depth);
    prefix_enclosure(e.ext, e);
    return e;
}

}  // namespace

ContinuedFraction cf_expand(const RotationDescriptor& src, std::size_t depth,
                            unsigned bits) {
    if (depth < 1) throw ConfigInvalid("depth must be >= 1");
    if (bits < 64 || bits % 64 != 0 || bits > 8192)
        throw ConfigInvalid("precision bits must be a multiple of 64 in [64, 8192]");
    Expansion e;
    if (auto* s = std::get_if<SurdDescriptor>(&src))
        e = expand_surd(*s, depth, bits);
    else if (auto* l = std::get_if<QuotientListDescriptor>(&src))
        e = expand_list(*l, depth);
    else
        e = expand_decimal(std::get<DecimalDescriptor>(src), depth, bits);

    ContinuedFraction cf;
    cf.desc_ = src;
    cf.quot_ = e.quot;
    convergents_of(e.ext, cf.rp_, cf.rq_);
    cf.rp_.resize(depth + 1);
    cf.rq_.resize(depth + 1);
    cf.shift_ = (e.quot[0] == 1) ? 1 : 0;
    cf.encl_ = {e.lo_n, e.lo_d, e.hi_n, e.hi_d};
    cf.alpha_ = Fixed::from_rational(e.lo_n, e.lo_d, bits);
    // error budget: interval width plus the directed rounding, in ulps of 2^(1-bits)
    double wlog2 = (ln_big(e.hi_n * e.lo_d - e.lo_n * e.hi_d) -
                    ln_big(e.lo_d) - ln_big(e.hi_d)) / M_LN2;
    cf.alpha_err_ = std::exp2(wlog2 + double(bits) - 1.0) + 2.0;
    cf.ext_quot_ = std::move(e.ext);
    return cf;
}

double ContinuedFraction::ratio_sup() const {
    double best = 0;
    for (std::size_t s = 0; s + 1 < size(); ++s) {
        double r = std::exp(ln_big(q(s + 1)) - ln_big(q(s)));
        best = std::max(best, r);
    }
    return best;
}

std::uint64_t ContinuedFraction::max_quotient() const {
    return *std::max_element(quot_.begin(), quot_.end());
}

std::vector<BestApproxRow> verify_best_approx(const ContinuedFraction& cf,
                                              std::size_t s_max) {
    if (s_max + 2 > cf.size())
        throw ConfigInvalid("verify_best_approx: s_max exceeds expanded depth");
    std::vector<BestApproxRow> rows;
    const auto& ext = cf.expanded_quotients();
    for (std::size_t s = 0; s <= s_max; ++s) {
        std::size_t t = s + (cf.index_shifted() ? 1 : 0);
        // ||Q_s alpha|| = 1 / (alpha_{t+1} q_t + q_{t-1}) with alpha_{t+1} the
        // complete quotient; enclose it from the known quotient tail.
        BigUInt An(ext[t]), Ad(1);         // running tail convergent
        BigUInt Apn(1), Apd(0);            // previous
        for (std::size_t j = t + 1; j < std::min(ext.size(), t + 40); ++j) {
            BigUInt nn = An.mul_u64(ext[j]) + Apn;
            BigUInt nd = Ad.mul_u64(ext[j]) + Apd;
            Apn = std::move(An);
            Apd = std::move(Ad);
            An = std::move(nn);
            Ad = std::move(nd);
        }
        // endpoints: tail value lies strictly between An/Ad and (An+Apn)/(Ad+Apd)
        BigUInt Bn = An + Apn, Bd = Ad + Apd;
        bool first_is_lo = An * Bd < Bn * Ad;
        const BigUInt& lo_n = first_is_lo ? An : Bn;
        const BigUInt& lo_d = first_is_lo ? Ad : Bd;
        const BigUInt& hi_n = first_is_lo ? Bn : An;
        const BigUInt& hi_d = first_is_lo ? Bd : Ad;

        const BigUInt& qt = cf.q(s);
        BigUInt qtm1 = t == 0 ? BigUInt(0) : cf.raw_q(t - 1);
        // value in [ hi_d/(hi_n qt + hi_d qtm1), lo_d/(lo_n qt + lo_d qtm1) ]
        BigUInt den_hi = hi_n * qt + hi_d * qtm1;  // for value lower endpoint
        BigUInt den_lo = lo_n * qt + lo_d * qtm1;  // for value upper endpoint

        const BigUInt& Qs1 = cf.q(s + 1);
        BigUInt sumQ = cf.q(s) + Qs1;

        BestApproxRow row;
        row.s = s;
        row.lower = std::exp(-ln_big(sumQ));
        row.upper = std::exp(-ln_big(Qs1));
        row.value_lo = std::exp(ln_big(hi_d) - ln_big(den_hi));
        row.value_hi = std::exp(ln_big(lo_d) - ln_big(den_lo));
        // lower_ok:  hi_d/den_hi >= 1/sumQ  <=>  hi_d * sumQ >= den_hi
        row.lower_ok = hi_d * sumQ >= den_hi;
        // upper_ok:  lo_d/den_lo <= 1/Q_{s+1}  <=>  den_lo >= lo_d * Q_{s+1}
        row.upper_ok = den_lo >= lo_d * Qs1;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace rotlab
