// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "rotlab/bigint.hpp"

namespace rotlab {

/// Unsigned fixed-point fraction in [0,1) with B = 64*n bits.
///
/// The representation is exact and closed under addition and subtraction
/// mod 1, so a rotation orbit x + j*alpha accumulates no arithmetic error at
/// all; the only error source is the initial rounding of alpha to B bits,
/// which callers track separately (see CirclePoint).
class Fixed {
public:
    Fixed() = default;
    explicit Fixed(unsigned bits) : d_(bits / 64, 0) {}

    static Fixed from_double(double x, unsigned bits);
    /// floor(num * 2^bits / den) for num < den; *exact set iff no rounding.
    static Fixed from_rational(const BigUInt& num, const BigUInt& den, unsigned bits,
                               bool* exact = nullptr);
    static Fixed from_integer_fraction(const BigUInt& x, unsigned bits);

    unsigned bits() const { return unsigned(d_.size()) * 64; }
    bool is_zero() const;

    /// x += y mod 1; returns true when the addition wrapped.
    bool add_mod1(const Fixed& y);
    /// x -= y mod 1; returns true when the subtraction borrowed (wrapped).
    bool sub_mod1(const Fixed& y);

    int cmp(const Fixed& rhs) const;
    friend bool operator<(const Fixed& a, const Fixed& b) { return a.cmp(b) < 0; }
    friend bool operator==(const Fixed& a, const Fixed& b) { return a.cmp(b) == 0; }
    friend bool operator!=(const Fixed& a, const Fixed& b) { return a.cmp(b) != 0; }

    Fixed plus(const Fixed& y) const {
        Fixed r = *this;
        r.add_mod1(y);
        return r;
    }
    Fixed minus(const Fixed& y) const {
        Fixed r = *this;
        r.sub_mod1(y);
        return r;
    }
    /// {1 - x}; maps 0 to 0.
    Fixed complement() const;
    /// {n * x}, exact.
    Fixed mul_u64_mod1(std::uint64_t n) const;

    /// Nearest double, correct to ~1 ulp even for values around 2^-1000.
    double to_double() const;
    /// to_double of {1 - x} without materializing the complement.
    double to_double_complement() const;
    /// min(x, 1-x) as a double.
    double norm_dist() const;

    BigUInt to_int() const;
    std::uint64_t limb(std::size_t i) const { return d_[i]; }
    std::uint64_t top_limb() const { return d_.back(); }
    std::vector<std::uint64_t>& raw() { return d_; }
    const std::vector<std::uint64_t>& raw() const { return d_; }

private:
    // Little-endian limbs; value = (sum d_[i] 2^{64 i}) / 2^{64 n}.
    std::vector<std::uint64_t> d_;
};

/// Signed circle distance from y to x: the representative of x - y in
/// (-1/2, 1/2], as a double.
double signed_circle_dist(const Fixed& x, const Fixed& y);

}  // namespace rotlab
