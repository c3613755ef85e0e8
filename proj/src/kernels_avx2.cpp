// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// AVX2+FMA kernels.  Vector ln/exp cores follow the usual fdlibm reduction
// (atanh form for ln on [sqrt2/2, sqrt2), degree-13 Taylor for exp on
// [-ln2/2, ln2/2]) and stay within a couple of ulps, which the equivalence
// tests against the libm reference pin down.  Inputs must be positive
// normal doubles; the distance buffers produced by the orbit engines are.
#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "rotlab/kernels.hpp"

namespace rotlab::kernels {

namespace {

const __m256d kOne = _mm256_set1_pd(1.0);
const __m256d kHalf = _mm256_set1_pd(0.5);

// fdlibm split of ln 2
const __m256d kLn2Hi = _mm256_set1_pd(6.93147180369123816490e-01);
const __m256d kLn2Lo = _mm256_set1_pd(1.90821492927058770002e-10);
const __m256d kLog2e = _mm256_set1_pd(1.44269504088896340736);

inline __m256d vabs(__m256d x) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

// k must be integral-valued double in [-1021, 1023]
inline __m256d vscale_pow2(__m256d x, __m256d k) {
    // 1.5 * 2^52 keeps k + magic inside [2^52, 2^53) for either sign of k,
    // so the bit difference is the integer
    const __m256d magic = _mm256_set1_pd(0x1.8p52);
    __m256i ik = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(k, magic)),
                                  _mm256_castpd_si256(magic));
    __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(ik, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(x, _mm256_castsi256_pd(bits));
}

// atanh-core: returns ln(m) for m in [sqrt2/2, sqrt2)
inline __m256d vln_core(__m256d m) {
    __m256d s = _mm256_div_pd(_mm256_sub_pd(m, kOne), _mm256_add_pd(m, kOne));
    __m256d w = _mm256_mul_pd(s, s);
    // 2 * atanh(s) = s * (2 + w*(2/3 + w*(2/5 + ...)))   through w^10
    __m256d p = _mm256_set1_pd(2.0 / 21.0);
    const double c[] = {2.0 / 19, 2.0 / 17, 2.0 / 15, 2.0 / 13, 2.0 / 11,
                        2.0 / 9,  2.0 / 7,  2.0 / 5,  2.0 / 3,  2.0};
    for (double ci : c) p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(ci));
    return _mm256_mul_pd(s, p);
}

inline __m256d vlog(__m256d x) {
    const __m256i mant_mask = _mm256_set1_epi64x(0x000fffffffffffffLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3ff0000000000000LL);
    const __m256d magic = _mm256_set1_pd(0x1.0p52);
    __m256i bits = _mm256_castpd_si256(x);
    __m256i ebits = _mm256_srli_epi64(bits, 52);
    // biased exponent as double via the 2^52 trick
    __m256d eb = _mm256_sub_pd(
        _mm256_castsi256_pd(_mm256_or_si256(ebits, _mm256_castpd_si256(magic))), magic);
    __m256d m =
        _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
    // shift mantissa into [sqrt2/2, sqrt2)
    __m256d gt = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GE_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, kHalf), gt);
    __m256d e = _mm256_sub_pd(eb, _mm256_set1_pd(1023.0));
    e = _mm256_add_pd(e, _mm256_and_pd(gt, kOne));
    __m256d lnm = vln_core(m);
    __m256d t = _mm256_fmadd_pd(e, kLn2Lo, lnm);
    return _mm256_fmadd_pd(e, kLn2Hi, t);
}

inline __m256d vexp(__m256d x) {
    __m256d k = _mm256_round_pd(_mm256_mul_pd(x, kLog2e),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, kLn2Hi, x);
    r = _mm256_fnmadd_pd(k, kLn2Lo, r);
    // Taylor through r^13/13!
    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
    const double c[] = {1.0 / 479001600, 1.0 / 39916800, 1.0 / 3628800, 1.0 / 362880,
                        1.0 / 40320,     1.0 / 5040,     1.0 / 720,     1.0 / 120,
                        1.0 / 24,        1.0 / 6,        1.0 / 2,       1.0,
                        1.0};
    for (double ci : c) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(ci));
    return vscale_pow2(p, k);
}

// log1p(t) for t >= 0
inline __m256d vlog1p(__m256d t) {
    __m256d small = _mm256_cmp_pd(t, _mm256_set1_pd(0.414), _CMP_LT_OQ);
    // small branch: s = t/(2+t), result = 2 atanh(s) via the shared core poly
    __m256d s = _mm256_div_pd(t, _mm256_add_pd(t, _mm256_set1_pd(2.0)));
    __m256d w = _mm256_mul_pd(s, s);
    __m256d p = _mm256_set1_pd(2.0 / 21.0);
    const double c[] = {2.0 / 19, 2.0 / 17, 2.0 / 15, 2.0 / 13, 2.0 / 11,
                        2.0 / 9,  2.0 / 7,  2.0 / 5,  2.0 / 3,  2.0};
    for (double ci : c) p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(ci));
    __m256d small_val = _mm256_mul_pd(s, p);
    __m256d big_val = vlog(_mm256_add_pd(kOne, t));
    return _mm256_blendv_pd(big_val, small_val, small);
}

// expm1(x) accurate for small |x|, falls back to exp(x)-1 otherwise
inline __m256d vexpm1(__m256d x) {
    __m256d small = _mm256_cmp_pd(vabs(x), _mm256_set1_pd(0.35), _CMP_LE_OQ);
    // x * sum_{j>=1} x^{j-1}/j!  through j = 13
    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
    const double c[] = {1.0 / 479001600, 1.0 / 39916800, 1.0 / 3628800, 1.0 / 362880,
                        1.0 / 40320,     1.0 / 5040,     1.0 / 720,     1.0 / 120,
                        1.0 / 24,        1.0 / 6,        1.0 / 2,       1.0};
    for (double ci : c) p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(ci));
    __m256d small_val = _mm256_mul_pd(x, p);
    __m256d big_val = _mm256_sub_pd(vexp(x), kOne);
    return _mm256_blendv_pd(big_val, small_val, small);
}

struct VAcc {
    __m256d sum = _mm256_setzero_pd();
    __m256d comp = _mm256_setzero_pd();
    inline void add(__m256d v) {
        __m256d t = _mm256_add_pd(sum, v);
        __m256d ge = _mm256_cmp_pd(vabs(sum), vabs(v), _CMP_GE_OQ);
        __m256d e1 = _mm256_add_pd(_mm256_sub_pd(sum, t), v);
        __m256d e2 = _mm256_add_pd(_mm256_sub_pd(v, t), sum);
        comp = _mm256_add_pd(comp, _mm256_blendv_pd(e2, e1, ge));
        sum = t;
    }
    double get() const {
        alignas(32) double s[4], k[4];
        _mm256_store_pd(s, sum);
        _mm256_store_pd(k, comp);
        double acc = 0, c = 0;
        for (int i = 0; i < 4; ++i) {
            double v = s[i] + k[i];
            double t = acc + v;
            if (std::fabs(acc) >= std::fabs(v))
                c += (acc - t) + v;
            else
                c += (v - t) + acc;
            acc = t;
        }
        return acc + c;
    }
};

double a_sum_neg_log(const double* u, std::size_t n) {
    VAcc a;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        a.add(_mm256_sub_pd(_mm256_setzero_pd(), vlog(_mm256_loadu_pd(u + i))));
    double acc = a.get(), c = 0;
    for (; i < n; ++i) {
        double v = -std::log(u[i]);
        double t = acc + v;
        c += std::fabs(acc) >= std::fabs(v) ? (acc - t) + v : (v - t) + acc;
        acc = t;
    }
    return acc + c;
}

double a_sum_recip(const double* u, std::size_t n) {
    VAcc a;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) a.add(_mm256_div_pd(kOne, _mm256_loadu_pd(u + i)));
    double acc = a.get();
    for (; i < n; ++i) acc += 1.0 / u[i];
    return acc;
}

double a_sum_pow(const double* u, std::size_t n, double e) {
    VAcc a;
    const __m256d ve = _mm256_set1_pd(e);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        a.add(vexp(_mm256_mul_pd(ve, vlog(_mm256_loadu_pd(u + i)))));
    double acc = a.get();
    for (; i < n; ++i) acc += std::pow(u[i], e);
    return acc;
}

double a_sum_log1p_ratio(const double* u, std::size_t n, double d) {
    VAcc a;
    const __m256d vd = _mm256_set1_pd(d);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        a.add(vlog1p(_mm256_div_pd(vd, _mm256_loadu_pd(u + i))));
    double acc = a.get(), c = 0;
    for (; i < n; ++i) {
        double v = std::log1p(d / u[i]);
        double t = acc + v;
        c += std::fabs(acc) >= std::fabs(v) ? (acc - t) + v : (v - t) + acc;
        acc = t;
    }
    return acc + c;
}

double a_sum_pow_diff(const double* u, std::size_t n, double d, double g) {
    VAcc a;
    const __m256d vd = _mm256_set1_pd(d);
    const __m256d vg = _mm256_set1_pd(g);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(u + i);
        __m256d p = vexp(_mm256_mul_pd(vg, vlog(x)));
        __m256d l = vlog1p(_mm256_div_pd(vd, x));
        a.add(_mm256_mul_pd(p, vexpm1(_mm256_mul_pd(vg, l))));
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

double a_min_elem(const double* u, std::size_t n) {
    std::size_t i = 0;
    double m = u[0];
    if (n >= 4) {
        __m256d vm = _mm256_loadu_pd(u);
        for (i = 4; i + 4 <= n; i += 4) vm = _mm256_min_pd(vm, _mm256_loadu_pd(u + i));
        alignas(32) double lane[4];
        _mm256_store_pd(lane, vm);
        m = lane[0];
        for (int j = 1; j < 4; ++j) m = lane[j] < m ? lane[j] : m;
    }
    for (; i < n; ++i) m = u[i] < m ? u[i] : m;
    return m;
}

std::size_t a_count_le(const double* u, std::size_t n, double thr) {
    const __m256d vt = _mm256_set1_pd(thr);
    std::size_t i = 0, cnt = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d le = _mm256_cmp_pd(_mm256_loadu_pd(u + i), vt, _CMP_LE_OQ);
        cnt += std::size_t(__builtin_popcount(unsigned(_mm256_movemask_pd(le))));
    }
    for (; i < n; ++i) cnt += u[i] <= thr;
    return cnt;
}

}  // namespace

const Batch& avx2_batch() {
    static const Batch b{"avx2",          a_sum_neg_log, a_sum_recip, a_sum_pow,
                         a_sum_log1p_ratio, a_sum_pow_diff, a_min_elem,  a_count_le};
    return b;
}

}  // namespace rotlab::kernels

#endif  // x86_64
