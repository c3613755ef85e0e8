// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <string>
#include <vector>

#include "rotlab/errors.hpp"
#include "rotlab/kernels.hpp"

namespace rotlab::kernels {

#if defined(ROTLAB_HAVE_AVX2) && (defined(__x86_64__) || defined(_M_X64))
const Batch& avx2_batch();
#endif
#if defined(__aarch64__)
const Batch& neon_batch();
#endif

namespace {

const Batch* g_forced = nullptr;

const Batch* best_supported() {
#if defined(ROTLAB_HAVE_AVX2) && (defined(__x86_64__) || defined(_M_X64))
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return &avx2_batch();
#endif
#if defined(__aarch64__)
    return &neon_batch();
#endif
    return &scalar();
}

}  // namespace

const Batch& active() {
    if (g_forced) return *g_forced;
    static const Batch* best = [] {
        if (const char* env = std::getenv("ROTLAB_KERNELS")) {
            for (const Batch* b : available())
                if (std::string(env) == b->name) return b;
        }
        return best_supported();
    }();
    return *best;
}

std::vector<const Batch*> available() {
    std::vector<const Batch*> out{&scalar()};
#if defined(ROTLAB_HAVE_AVX2) && (defined(__x86_64__) || defined(_M_X64))
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        out.push_back(&avx2_batch());
#endif
#if defined(__aarch64__)
    out.push_back(&neon_batch());
#endif
    return out;
}

void force(const std::string& name) {
    if (name.empty() || name == "auto") {
        g_forced = nullptr;
        return;
    }
    for (const Batch* b : available()) {
        if (name == b->name) {
            g_forced = b;
            return;
        }
    }
    throw ConfigInvalid("kernel backend '" + name + "' not available on this CPU");
}

}  // namespace rotlab::kernels
