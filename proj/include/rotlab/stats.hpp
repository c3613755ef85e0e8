// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace rotlab {

/// One-sample Kolmogorov-Smirnov statistic against an analytic CDF.
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    double d = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double F = cdf(samples[i]);
        d = std::max(d, std::fabs(F - double(i) / n));
        d = std::max(d, std::fabs(double(i + 1) / n - F));
    }
    return d;
}

/// Asymptotic p-value of the KS statistic (Stephens' small-sample correction).
inline double ks_pvalue(double D, std::uint64_t n) {
    double sn = std::sqrt(double(n));
    double lambda = (sn + 0.12 + 0.11 / sn) * D;
    double p = 0;
    for (int k = 1; k <= 100; ++k) {
        double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
        p += term;
        if (std::fabs(term) < 1e-12) break;
    }
    return std::clamp(p, 0.0, 1.0);
}

struct LinearFit {
    double slope = 0, intercept = 0;
};

inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinearFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

struct MeanErr {
    double mean = 0, stderr_ = 0;
    std::uint64_t n = 0;
};

inline MeanErr mean_stderr(const std::vector<double>& v) {
    MeanErr m;
    m.n = v.size();
    if (v.empty()) return m;
    double s = 0;
    for (double x : v) s += x;
    m.mean = s / double(v.size());
    double ss = 0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.stderr_ = v.size() > 1 ? std::sqrt(ss / (double(v.size() - 1) * double(v.size()))) : 0;
    return m;
}

/// Binomial standard error of a proportion.
inline double binom_stderr(double p, std::uint64_t n) {
    return n ? std::sqrt(std::max(0.0, p * (1.0 - p)) / double(n)) : 0.0;
}

}  // namespace rotlab
