// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "rotlab/specialflow.hpp"

namespace rotlab {

/// Rectangle under the graph: base interval [lo, lo+len) x heights [0, h0).
/// h0 must stay below inf f over the interval so the measure is analytic.
struct RectSet {
    Fixed lo;
    Fixed len;
    double lo_dbl = 0, len_dbl = 0;
    double h0 = 0;

    static RectSet make(double lo, double len, double h0, const SpecialFlow& flow);
    double measure(const SpecialFlow& flow) const {
        return len_dbl * h0 / flow.mean_height();
    }
    bool contains(const PhasePoint& p) const {
        return p.s < h0 && p.x.pos().minus(lo) < len;
    }
};

struct CorrRow {
    double t1 = 0, t2 = 0;
    int order = 2;
    double estimate = 0;
    double stderr_ = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t aborts = 0;
};

/// mu^f(A cap T_{-t} B) - mu^f(A) mu^f(B) by sampling A uniformly, flowing t,
/// and testing membership in B.  sigma_min aborts are resampled and counted;
/// a rate above 0.1% fails the run (that signals a precision bug, not
/// dynamics).
CorrRow correlation2(const SpecialFlow& flow, const RectSet& A, const RectSet& B,
                     double t, std::uint64_t samples, std::uint64_t seed,
                     unsigned threads = 1);

/// mu^f(A0 cap T_{-t1} A1 cap T_{-t2} A2) - prod mu^f(A_i), 0 < t1 < t2.
CorrRow correlation3(const SpecialFlow& flow, const RectSet& A0, const RectSet& A1,
                     const RectSet& A2, double t1, double t2, std::uint64_t samples,
                     std::uint64_t seed, unsigned threads = 1);

/// Batch of order-2 or order-3 rows over a time grid (order 3 uses (t, 2t)),
/// with one seed stream per row.
std::vector<CorrRow> decay_scan(const SpecialFlow& flow, const RectSet& A,
                                const RectSet& B, const std::vector<double>& t_grid,
                                int order, std::uint64_t samples, std::uint64_t seed,
                                unsigned threads = 1);

}  // namespace rotlab
