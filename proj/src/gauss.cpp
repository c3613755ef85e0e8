// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "rotlab/gauss.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <thread>

#include "rotlab/errors.hpp"
#include "rotlab/rng.hpp"
#include "rotlab/sieve.hpp"
#include "rotlab/stats.hpp"

namespace rotlab {

std::vector<double> gauss_invariant_sample(std::uint64_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(std::exp2(rng.next_double()) - 1.0);
    return out;
}

std::vector<double> e_membership_partial_sums(const ContinuedFraction& cf,
                                              std::size_t depth) {
    if (depth == 0) return {};
    return sieve(cf, XRule::log78(), depth).e_partial;
}

std::vector<std::uint64_t> gauss_quotients(const Fixed& x, std::size_t depth) {
    if (x.is_zero()) throw ConfigInvalid("gauss_quotients needs x in (0,1)");
    BigUInt X = x.to_int();
    BigUInt den = BigUInt::pow2(x.bits());
    IntervalCF icf(X, den, X + BigUInt(1), den);
    std::vector<std::uint64_t> out;
    out.reserve(depth);
    while (out.size() < depth) {
        auto a = icf.next();
        if (!a)
            throw PrecisionExhausted("certified " + std::to_string(out.size()) +
                                     " Gauss quotients, wanted " + std::to_string(depth));
        out.push_back(*a);
    }
    return out;
}

namespace {

constexpr std::uint64_t kChunks = 64;

template <typename Fn>
void parallel_chunks(std::uint64_t total, unsigned threads, Fn&& chunk_fn) {
    std::atomic<std::uint64_t> next{0};
    unsigned nw = std::max(1u, std::min<unsigned>(threads, std::thread::hardware_concurrency()));
    auto worker = [&] {
        for (;;) {
            std::uint64_t c = next.fetch_add(1);
            if (c >= kChunks) return;
            std::uint64_t count = total / kChunks + (c < total % kChunks ? 1 : 0);
            chunk_fn(c, count);
        }
    };
    if (nw == 1) {
        worker();
    } else {
        std::vector<std::future<void>> fs;
        for (unsigned w = 0; w < nw; ++w) fs.push_back(std::async(std::launch::async, worker));
        for (auto& f : fs) f.get();
    }
}

}  // namespace

std::vector<CorrRatioRow> gauss_correlation_grid(double a, std::size_t k_max,
                                                 std::uint64_t samples,
                                                 std::uint64_t seed, unsigned threads) {
    if (!(a > 0 && a <= 1)) throw ConfigInvalid("correlation grid needs 0 < a <= 1");
    if (k_max > 15) throw ConfigInvalid("correlation grid supports k_max <= 15");
    const std::size_t nmask = std::size_t(1) << (k_max + 1);
    // per-chunk histograms of the indicator bitmask over orbit depths 0..k_max
    std::vector<std::vector<std::uint64_t>> hist(kChunks,
                                                 std::vector<std::uint64_t>(nmask, 0));
    parallel_chunks(samples, threads, [&](std::uint64_t c, std::uint64_t count) {
        Rng rng = Rng::stream(seed, c);
        auto& h = hist[c];
        for (std::uint64_t i = 0; i < count; ++i) {
            double x = std::exp2(rng.next_double()) - 1.0;
            std::size_t mask = 0;
            for (std::size_t k = 0; k <= k_max; ++k) {
                if (x < a) mask |= std::size_t(1) << k;
                x = x > 0 ? 1.0 / x - std::floor(1.0 / x) : 0.0;
            }
            ++h[mask];
        }
    });
    std::vector<std::uint64_t> total(nmask, 0);
    for (const auto& h : hist)
        for (std::size_t m = 0; m < nmask; ++m) total[m] += h[m];
    const double mu = gauss_cdf(a);
    std::vector<CorrRatioRow> rows;
    for (std::size_t k = 0; k <= k_max; ++k) {
        for (std::size_t l = 0; l <= k_max; ++l) {
            std::uint64_t hits = 0;
            for (std::size_t m = 0; m < nmask; ++m)
                if ((m >> k & 1) && (m >> l & 1)) hits += total[m];
            double p = double(hits) / double(samples);
            rows.push_back({k, l, p / (mu * mu), binom_stderr(p, samples) / (mu * mu)});
        }
    }
    return rows;
}

std::vector<BlockStatRow> block_quotient_stat(std::size_t n_min, std::size_t n_max,
                                              double d, std::uint64_t samples,
                                              std::uint64_t seed, unsigned bits,
                                              unsigned threads) {
    if (n_min < 1 || n_max < n_min) throw ConfigInvalid("block stat needs 1 <= n_min <= n_max");
    const std::size_t depth = (n_max + 1) * (n_max + 1);
    const std::size_t rows_n = n_max - n_min + 1;
    // precomputed thresholds d * k^{7/8}
    std::vector<double> thr(depth + 1, 0);
    for (std::size_t k = 1; k <= depth; ++k) thr[k] = d * std::pow(double(k), 7.0 / 8.0);

    std::vector<std::vector<std::uint64_t>> hits(kChunks,
                                                 std::vector<std::uint64_t>(rows_n, 0));
    std::vector<std::uint64_t> aborts(kChunks, 0);
    parallel_chunks(samples, threads, [&](std::uint64_t c, std::uint64_t count) {
        Rng rng = Rng::stream(seed, c);
        auto& h = hits[c];
        std::vector<std::uint64_t> quot(depth);
        for (std::uint64_t i = 0; i < count;) {
            // invariant-measure sample extended to full precision: the top 50
            // bits come from 2^u - 1, everything below is uniform (the
            // invariant density is flat at scale 2^-50, and a hard cutoff
            // would fake a giant partial quotient where the entropy stops)
            double x0 = std::exp2(rng.next_double()) - 1.0;
            if (x0 < 1e-9) {
                ++aborts[c];
                continue;
            }
            Fixed x = rng.next_fixed(bits);
            x.raw().back() &= (std::uint64_t(1) << 14) - 1;  // keep bits below 2^-50
            x.add_mod1(Fixed::from_double(std::ldexp(std::floor(std::ldexp(x0, 50)), -50),
                                          bits));
            bool ok = true;
            try {
                BigUInt X = x.to_int();
                BigUInt den = BigUInt::pow2(bits);
                IntervalCF icf(X, den, X + BigUInt(1), den);
                for (std::size_t k = 0; k < depth; ++k) {
                    auto q = icf.next();
                    if (!q) throw PrecisionExhausted("expansion died");
                    quot[k] = *q;
                }
            } catch (const PrecisionExhausted&) {
                ok = false;
            }
            if (!ok) {
                ++aborts[c];
                if (aborts[c] > count / 100 + 16)
                    throw PrecisionExhausted("block stat abort rate above 1% in chunk");
                continue;
            }
            for (std::size_t n = n_min; n <= n_max; ++n) {
                int big = 0;
                for (std::size_t k = n * n; k <= (n + 1) * (n + 1) && k >= 1; ++k) {
                    // quot[k-1] is a_k
                    if (double(quot[k - 1]) >= thr[k]) ++big;
                }
                if (big >= 2) ++h[n - n_min];
            }
            ++i;
        }
    });
    std::uint64_t total_aborts = 0;
    for (auto a : aborts) total_aborts += a;
    if (double(total_aborts) > 0.001 * double(samples) + 2)
        throw PrecisionExhausted("block stat abort rate above 0.1%");
    std::vector<BlockStatRow> rows;
    for (std::size_t n = n_min; n <= n_max; ++n) {
        std::uint64_t hn = 0;
        for (const auto& h : hits) hn += h[n - n_min];
        double p = double(hn) / double(samples);
        rows.push_back({n, p, binom_stderr(p, samples), hn});
    }
    return rows;
}

}  // namespace rotlab
