// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "rotlab/fixed.hpp"

namespace rotlab {

/// xoshiro256** seeded through splitmix64.  Hand-rolled (and no
/// std::uniform_* adapters) so that sample streams are bit-identical across
/// standard libraries and runs, which the determinism contract requires.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& si : s_) si = splitmix(x);
    }

    /// Independent, reproducible substream: stream k of a seed never collides
    /// with stream l != k in any practical sense.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        return Rng(seed ^ (0x9e3779b97f4a7c15ULL * (stream_id + 0x632be59bd9b4e019ULL)));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0,1), 53 random bits.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform B-bit point on the circle.
    Fixed next_fixed(unsigned bits) {
        Fixed f(bits);
        for (auto& limb : f.raw()) limb = next_u64();
        return f;
    }

    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

private:
    static std::uint64_t splitmix(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t s_[4];
};

}  // namespace rotlab
