// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace rotlab::kernels {

/// Batch primitives behind the Birkhoff-sum and Monte-Carlo inner loops.
/// All summing kernels use compensated (Neumaier) accumulation; the scalar
/// variant is the libm-backed reference, SIMD variants are selected at
/// runtime and equivalence-tested against it.
struct Batch {
    const char* name;
    // sum of -ln(u_i)
    double (*sum_neg_log)(const double* u, std::size_t n);
    // sum of 1/u_i
    double (*sum_recip)(const double* u, std::size_t n);
    // sum of u_i^e
    double (*sum_pow)(const double* u, std::size_t n, double e);
    // sum of log1p(d/u_i)           (pair differences, log model)
    double (*sum_log1p_ratio)(const double* u, std::size_t n, double d);
    // sum of (u_i+d)^g - u_i^g      (pair differences, power model)
    double (*sum_pow_diff)(const double* u, std::size_t n, double d, double g);
    // min element (n >= 1)
    double (*min_elem)(const double* u, std::size_t n);
    // count of u_i <= thr
    std::size_t (*count_le)(const double* u, std::size_t n, double thr);
};

/// libm reference.
const Batch& scalar();

/// Best variant the current CPU supports (scalar, avx2, neon).
const Batch& active();

/// All variants runnable on this CPU, reference first.
std::vector<const Batch*> available();

/// Force a variant by name ("scalar", "avx2", "neon"); throws if unavailable.
void force(const std::string& name);

}  // namespace rotlab::kernels
