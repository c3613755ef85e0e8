// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// NEON kernels (aarch64): a 2-lane transliteration of the AVX2 variant with
// the same polynomial cores, so the equivalence tests carry over unchanged.
#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "rotlab/kernels.hpp"

namespace rotlab::kernels {

namespace {

const float64x2_t kOne = vdupq_n_f64(1.0);

const float64x2_t kLn2Hi = vdupq_n_f64(6.93147180369123816490e-01);
const float64x2_t kLn2Lo = vdupq_n_f64(1.90821492927058770002e-10);
const float64x2_t kLog2e = vdupq_n_f64(1.44269504088896340736);

inline float64x2_t vblend(uint64x2_t m, float64x2_t a, float64x2_t b) {
    return vbslq_f64(m, a, b);
}

inline float64x2_t vscale_pow2(float64x2_t x, float64x2_t k) {
    int64x2_t ik = vcvtq_s64_f64(k);
    int64x2_t bits = vshlq_n_s64(vaddq_s64(ik, vdupq_n_s64(1023)), 52);
    return vmulq_f64(x, vreinterpretq_f64_s64(bits));
}

inline float64x2_t vln_core(float64x2_t m) {
    float64x2_t s = vdivq_f64(vsubq_f64(m, kOne), vaddq_f64(m, kOne));
    float64x2_t w = vmulq_f64(s, s);
    float64x2_t p = vdupq_n_f64(2.0 / 21.0);
    const double c[] = {2.0 / 19, 2.0 / 17, 2.0 / 15, 2.0 / 13, 2.0 / 11,
                        2.0 / 9,  2.0 / 7,  2.0 / 5,  2.0 / 3,  2.0};
    for (double ci : c) p = vfmaq_f64(vdupq_n_f64(ci), p, w);
    return vmulq_f64(s, p);
}

inline float64x2_t vlog(float64x2_t x) {
    uint64x2_t bits = vreinterpretq_u64_f64(x);
    uint64x2_t ebits = vshrq_n_u64(bits, 52);
    float64x2_t eb = vcvtq_f64_u64(ebits);
    uint64x2_t mant = vorrq_u64(vandq_u64(bits, vdupq_n_u64(0x000fffffffffffffULL)),
                                vdupq_n_u64(0x3ff0000000000000ULL));
    float64x2_t m = vreinterpretq_f64_u64(mant);
    uint64x2_t ge = vcgeq_f64(m, vdupq_n_f64(1.4142135623730951));
    m = vblend(ge, vmulq_f64(m, vdupq_n_f64(0.5)), m);
    float64x2_t e = vsubq_f64(eb, vdupq_n_f64(1023.0));
    e = vaddq_f64(e, vblend(ge, kOne, vdupq_n_f64(0.0)));
    float64x2_t lnm = vln_core(m);
    float64x2_t t = vfmaq_f64(lnm, e, kLn2Lo);
    return vfmaq_f64(t, e, kLn2Hi);
}

inline float64x2_t vexp(float64x2_t x) {
    float64x2_t k = vrndnq_f64(vmulq_f64(x, kLog2e));
    float64x2_t r = vfmsq_f64(x, k, kLn2Hi);
    r = vfmsq_f64(r, k, kLn2Lo);
    float64x2_t p = vdupq_n_f64(1.0 / 6227020800.0);
    const double c[] = {1.0 / 479001600, 1.0 / 39916800, 1.0 / 3628800, 1.0 / 362880,
                        1.0 / 40320,     1.0 / 5040,     1.0 / 720,     1.0 / 120,
                        1.0 / 24,        1.0 / 6,        1.0 / 2,       1.0,
                        1.0};
    for (double ci : c) p = vfmaq_f64(vdupq_n_f64(ci), p, r);
    return vscale_pow2(p, k);
}

inline float64x2_t vlog1p(float64x2_t t) {
    uint64x2_t small = vcltq_f64(t, vdupq_n_f64(0.414));
    float64x2_t s = vdivq_f64(t, vaddq_f64(t, vdupq_n_f64(2.0)));
    float64x2_t w = vmulq_f64(s, s);
    float64x2_t p = vdupq_n_f64(2.0 / 21.0);
    const double c[] = {2.0 / 19, 2.0 / 17, 2.0 / 15, 2.0 / 13, 2.0 / 11,
                        2.0 / 9,  2.0 / 7,  2.0 / 5,  2.0 / 3,  2.0};
    for (double ci : c) p = vfmaq_f64(vdupq_n_f64(ci), p, w);
    float64x2_t small_val = vmulq_f64(s, p);
    float64x2_t big_val = vlog(vaddq_f64(kOne, t));
    return vblend(small, small_val, big_val);
}

inline float64x2_t vexpm1(float64x2_t x) {
    uint64x2_t small = vcleq_f64(vabsq_f64(x), vdupq_n_f64(0.35));
    float64x2_t p = vdupq_n_f64(1.0 / 6227020800.0);
    const double c[] = {1.0 / 479001600, 1.0 / 39916800, 1.0 / 3628800, 1.0 / 362880,
                        1.0 / 40320,     1.0 / 5040,     1.0 / 720,     1.0 / 120,
                        1.0 / 24,        1.0 / 6,        1.0 / 2,       1.0};
    for (double ci : c) p = vfmaq_f64(vdupq_n_f64(ci), p, x);
    float64x2_t small_val = vmulq_f64(x, p);
    float64x2_t big_val = vsubq_f64(vexp(x), kOne);
    return vblend(small, small_val, big_val);
}

struct VAcc {
    float64x2_t sum = vdupq_n_f64(0.0);
    float64x2_t comp = vdupq_n_f64(0.0);
    inline void add(float64x2_t v) {
        float64x2_t t = vaddq_f64(sum, v);
        uint64x2_t ge = vcgeq_f64(vabsq_f64(sum), vabsq_f64(v));
        float64x2_t e1 = vaddq_f64(vsubq_f64(sum, t), v);
        float64x2_t e2 = vaddq_f64(vsubq_f64(v, t), sum);
        comp = vaddq_f64(comp, vblend(ge, e1, e2));
        sum = t;
    }
    double get() const {
        double s[2], k[2];
        vst1q_f64(s, sum);
        vst1q_f64(k, comp);
        double acc = 0, c = 0;
        for (int i = 0; i < 2; ++i) {
            double v = s[i] + k[i];
            double t = acc + v;
            c += std::fabs(acc) >= std::fabs(v) ? (acc - t) + v : (v - t) + acc;
            acc = t;
        }
        return acc + c;
    }
};

double n_sum_neg_log(const double* u, std::size_t n) {
    VAcc a;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) a.add(vnegq_f64(vlog(vld1q_f64(u + i))));
    double acc = a.get(), c = 0;
    for (; i < n; ++i) {
        double v = -std::log(u[i]);
        double t = acc + v;
        c += std::fabs(acc) >= std::fabs(v) ? (acc - t) + v : (v - t) + acc;
        acc = t;
    }
    return acc + c;
}

double n_sum_recip(const double* u, std::size_t n) {
    VAcc a;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) a.add(vdivq_f64(kOne, vld1q_f64(u + i)));
    double acc = a.get();
    for (; i < n; ++i) acc += 1.0 / u[i];
    return acc;
}

double n_sum_pow(const double* u, std::size_t n, double e) {
    VAcc a;
    const float64x2_t ve = vdupq_n_f64(e);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) a.add(vexp(vmulq_f64(ve, vlog(vld1q_f64(u + i)))));
    double acc = a.get();
    for (; i < n; ++i) acc += std::pow(u[i], e);
    return acc;
}

double n_sum_log1p_ratio(const double* u, std::size_t n, double d) {
    VAcc a;
    const float64x2_t vd = vdupq_n_f64(d);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) a.add(vlog1p(vdivq_f64(vd, vld1q_f64(u + i))));
    double acc = a.get(), c = 0;
    for (; i < n; ++i) {
        double v = std::log1p(d / u[i]);
        double t = acc + v;
        c += std::fabs(acc) >= std::fabs(v) ? (acc - t) + v : (v - t) + acc;
        acc = t;
    }
    return acc + c;
}

double n_sum_pow_diff(const double* u, std::size_t n, double d, double g) {
    VAcc a;
    const float64x2_t vd = vdupq_n_f64(d);
    const float64x2_t vg = vdupq_n_f64(g);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t x = vld1q_f64(u + i);
        float64x2_t p = vexp(vmulq_f64(vg, vlog(x)));
        float64x2_t l = vlog1p(vdivq_f64(vd, x));
        a.add(vmulq_f64(p, vexpm1(vmulq_f64(vg, l))));
    }
    double acc = a.get(), c = 0;
    for (; i < n; ++i) {
        double v = std::pow(u[i], g) * std::expm1(g * std::log1p(d / u[i]));
        double t = acc + v;
        c += std::fabs(acc) >= std::fabs(v) ? (acc - t) + v : (v - t) + acc;
        acc = t;
    }
    return acc + c;
}

double n_min_elem(const double* u, std::size_t n) {
    std::size_t i = 0;
    double m = u[0];
    if (n >= 2) {
        float64x2_t vm = vld1q_f64(u);
        for (i = 2; i + 2 <= n; i += 2) vm = vminq_f64(vm, vld1q_f64(u + i));
        m = std::min(vgetq_lane_f64(vm, 0), vgetq_lane_f64(vm, 1));
    }
    for (; i < n; ++i) m = u[i] < m ? u[i] : m;
    return m;
}

std::size_t n_count_le(const double* u, std::size_t n, double thr) {
    const float64x2_t vt = vdupq_n_f64(thr);
    std::size_t i = 0, cnt = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t le = vcleq_f64(vld1q_f64(u + i), vt);
        cnt += (vgetq_lane_u64(le, 0) & 1u) + (vgetq_lane_u64(le, 1) & 1u);
    }
    for (; i < n; ++i) cnt += u[i] <= thr;
    return cnt;
}

}  // namespace

const Batch& neon_batch() {
    static const Batch b{"neon",          n_sum_neg_log, n_sum_recip, n_sum_pow,
                         n_sum_log1p_ratio, n_sum_pow_diff, n_min_elem,  n_count_le};
    return b;
}

}  // namespace rotlab::kernels

#endif  // aarch64
