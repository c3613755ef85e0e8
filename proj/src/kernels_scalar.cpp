// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Reference kernels: straight loops over libm with Neumaier compensation.
// These define the semantics the SIMD variants are tested against.
#include <cmath>
#include <cstddef>

#include "rotlab/kernels.hpp"

namespace rotlab::kernels {

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

double s_sum_neg_log(const double* u, std::size_t n) {
    Acc a;
    for (std::size_t i = 0; i < n; ++i) a.add(-std::log(u[i]));
    return a.get();
}

double s_sum_recip(const double* u, std::size_t n) {
    Acc a;
    for (std::size_t i = 0; i < n; ++i) a.add(1.0 / u[i]);
    return a.get();
}

double s_sum_pow(const double* u, std::size_t n, double e) {
    Acc a;
    for (std::size_t i = 0; i < n; ++i) a.add(std::pow(u[i], e));
    return a.get();
}

double s_sum_log1p_ratio(const double* u, std::size_t n, double d) {
    Acc a;
    for (std::size_t i = 0; i < n; ++i) a.add(std::log1p(d / u[i]));
    return a.get();
}

double s_sum_pow_diff(const double* u, std::size_t n, double d, double g) {
    Acc a;
    for (std::size_t i = 0; i < n; ++i)
        a.add(std::pow(u[i], g) * std::expm1(g * std::log1p(d / u[i])));
    return a.get();
}

double s_min_elem(const double* u, std::size_t n) {
    double m = u[0];
    for (std::size_t i = 1; i < n; ++i) m = u[i] < m ? u[i] : m;
    return m;
}

std::size_t s_count_le(const double* u, std::size_t n, double thr) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += u[i] <= thr;
    return c;
}

}  // namespace

const Batch& scalar() {
    static const Batch b{"scalar",        s_sum_neg_log, s_sum_recip, s_sum_pow,
                         s_sum_log1p_ratio, s_sum_pow_diff, s_min_elem,  s_count_le};
    return b;
}

}  // namespace rotlab::kernels
