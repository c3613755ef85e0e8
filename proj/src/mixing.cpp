// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "rotlab/mixing.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <thread>

#include "rotlab/errors.hpp"
#include "rotlab/rng.hpp"
#include "rotlab/stats.hpp"

namespace rotlab {

RectSet RectSet::make(double lo, double len, double h0, const SpecialFlow& flow) {
    if (!(len > 0 && len <= 1) || h0 < 0)
        throw ConfigInvalid("rectangle needs 0 < len <= 1 and h0 >= 0");
    RectSet r;
    unsigned bits = flow.cf().bits();
    r.lo = Fixed::from_double(lo - std::floor(lo), bits);
    r.len = Fixed::from_double(len < 1 ? len : 1 - 1e-15, bits);
    r.lo_dbl = lo - std::floor(lo);
    r.len_dbl = len;
    r.h0 = h0;
    // h0 must sit below the interval's minimum of f, so the measure is exact
    const int probes = 4096;
    for (int i = 0; i <= probes; ++i) {
        double x = r.lo_dbl + len * double(i) / probes;
        CirclePoint p(Fixed::from_double(x - std::floor(x), bits), 1);
        try {
            if (flow.height(p) < h0)
                throw ConfigInvalid("rectangle height exceeds inf f on its base");
        } catch (const SingularityProximity&) {
            throw ConfigInvalid("rectangle base touches a singularity");
        }
    }
    return r;
}

namespace {

// Deterministic parallel map over a fixed number of sample chunks: the chunk
// count (not the thread count) defines the seed streams, so results are
// independent of --threads.
constexpr std::uint64_t kChunks = 64;

template <typename Fn>
std::pair<std::uint64_t, std::uint64_t> run_chunks(std::uint64_t samples,
                                                   std::uint64_t seed, unsigned threads,
                                                   Fn&& per_sample) {
    std::vector<std::uint64_t> hits(kChunks, 0), aborts(kChunks, 0);
    std::atomic<std::uint64_t> next{0};
    unsigned nw = std::max(1u, std::min<unsigned>(threads, std::thread::hardware_concurrency()));
    auto worker = [&] {
        for (;;) {
            std::uint64_t c = next.fetch_add(1);
            if (c >= kChunks) return;
            std::uint64_t count = samples / kChunks + (c < samples % kChunks ? 1 : 0);
            Rng rng = Rng::stream(seed, c);
            std::uint64_t h = 0, a = 0;
            for (std::uint64_t i = 0; i < count;) {
                int r = per_sample(rng);
                if (r < 0) {
                    ++a;
                    if (a > count / 100 + 16)
                        throw PrecisionExhausted("abort rate above 1% within a chunk");
                    continue;
                }
                h += std::uint64_t(r);
                ++i;
            }
            hits[c] = h;
            aborts[c] = a;
        }
    };
    if (nw == 1) {
        worker();
    } else {
        std::vector<std::future<void>> fs;
        for (unsigned w = 0; w < nw; ++w) fs.push_back(std::async(std::launch::async, worker));
        for (auto& f : fs) f.get();
    }
    std::uint64_t h = 0, a = 0;
    for (std::uint64_t c = 0; c < kChunks; ++c) {
        h += hits[c];
        a += aborts[c];
    }
    return {h, a};
}

PhasePoint sample_in_rect(const RectSet& A, const SpecialFlow& flow, Rng& rng) {
    double u = rng.next_double();
    double s = rng.next_double() * A.h0;
    // compose in fixed point so a joint rotation of the experiment by an
    // exactly representable angle shifts samples bit-for-bit
    Fixed x = A.lo.plus(Fixed::from_double(u * A.len_dbl, flow.cf().bits()));
    return {CirclePoint(x, 1), s};
}

}  // namespace

CorrRow correlation2(const SpecialFlow& flow, const RectSet& A, const RectSet& B,
                     double t, std::uint64_t samples, std::uint64_t seed,
                     unsigned threads) {
    auto [hits, aborts] = run_chunks(samples, seed, threads, [&](Rng& rng) -> int {
        PhasePoint p = sample_in_rect(A, flow, rng);
        try {
            PhasePoint q = flow.step(p, t);
            return B.contains(q) ? 1 : 0;
        } catch (const SingularityProximity&) {
            return -1;
        } catch (const PrecisionExhausted&) {
            return -1;
        }
    });
    if (double(aborts) > 0.001 * double(samples) + 2)
        throw PrecisionExhausted("flow abort rate above 0.1%: " + std::to_string(aborts));
    double muA = A.measure(flow), muB = B.measure(flow);
    double p = double(hits) / double(samples);
    CorrRow row;
    row.t1 = t;
    row.order = 2;
    row.estimate = muA * p - muA * muB;
    row.stderr_ = muA * binom_stderr(p, samples);
    row.samples = samples;
    row.seed = seed;
    row.aborts = aborts;
    return row;
}

CorrRow correlation3(const SpecialFlow& flow, const RectSet& A0, const RectSet& A1,
                     const RectSet& A2, double t1, double t2, std::uint64_t samples,
                     std::uint64_t seed, unsigned threads) {
    if (!(t1 >= 0 && t2 >= t1)) throw ConfigInvalid("correlation3 needs 0 <= t1 <= t2");
    auto [hits, aborts] = run_chunks(samples, seed, threads, [&](Rng& rng) -> int {
        PhasePoint p = sample_in_rect(A0, flow, rng);
        try {
            PhasePoint q1 = flow.step(p, t1);
            if (!A1.contains(q1)) return 0;
            PhasePoint q2 = flow.step(q1, t2 - t1);
            return A2.contains(q2) ? 1 : 0;
        } catch (const SingularityProximity&) {
            return -1;
        } catch (const PrecisionExhausted&) {
            return -1;
        }
    });
    if (double(aborts) > 0.001 * double(samples) + 2)
        throw PrecisionExhausted("flow abort rate above 0.1%: " + std::to_string(aborts));
    double mu0 = A0.measure(flow), mu1 = A1.measure(flow), mu2 = A2.measure(flow);
    double p = double(hits) / double(samples);
    CorrRow row;
    row.t1 = t1;
    row.t2 = t2;
    row.order = 3;
    row.estimate = mu0 * p - mu0 * mu1 * mu2;
    row.stderr_ = mu0 * binom_stderr(p, samples);
    row.samples = samples;
    row.seed = seed;
    row.aborts = aborts;
    return row;
}

std::vector<CorrRow> decay_scan(const SpecialFlow& flow, const RectSet& A,
                                const RectSet& B, const std::vector<double>& t_grid,
                                int order, std::uint64_t samples, std::uint64_t seed,
                                unsigned threads) {
    if (order != 2 && order != 3) throw ConfigInvalid("decay_scan order must be 2 or 3");
    std::vector<CorrRow> rows;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        // one seed stream per time value, keyed by the value itself so a
        // reordered grid gives the same rows reordered
        std::uint64_t row_seed =
            seed ^ (0x9e3779b97f4a7c15ULL * std::uint64_t(std::llround(t_grid[i] * 4096.0)));
        rows.push_back(order == 2
                           ? correlation2(flow, A, B, t_grid[i], samples, row_seed, threads)
                           : correlation3(flow, A, B, B, t_grid[i], 2 * t_grid[i], samples,
                                          row_seed, threads));
    }
    return rows;
}

}  // namespace rotlab
