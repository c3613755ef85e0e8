// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "rotlab/fixed.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace rotlab {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

Fixed Fixed::from_double(double x, unsigned bits) {
    if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("Fixed::from_double needs [0,1)");
    Fixed r(bits);
    for (std::size_t i = r.d_.size(); i-- > 0;) {
        x = std::ldexp(x, 64);
        double f = std::floor(x);
        r.d_[i] = u64(f);
        x -= f;
    }
    return r;
}

Fixed Fixed::from_rational(const BigUInt& num, const BigUInt& den, unsigned bits,
                           bool* exact) {
    if (num >= den) throw std::invalid_argument("Fixed::from_rational needs num < den");
    auto [q, r] = BigUInt::divmod(num * BigUInt::pow2(bits), den);
    if (exact) *exact = r.is_zero();
    return from_integer_fraction(q, bits);
}

Fixed Fixed::from_integer_fraction(const BigUInt& x, unsigned bits) {
    Fixed r(bits);
    for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] = x.limb(i);
    return r;
}

bool Fixed::is_zero() const {
    for (u64 v : d_)
        if (v) return false;
    return true;
}

bool Fixed::add_mod1(const Fixed& y) {
    u64 carry = 0;
    for (std::size_t i = 0; i < d_.size(); ++i) {
        u128 s = u128(d_[i]) + y.d_[i] + carry;
        d_[i] = u64(s);
        carry = u64(s >> 64);
    }
    return carry != 0;
}

bool Fixed::sub_mod1(const Fixed& y) {
    u64 borrow = 0;
    for (std::size_t i = 0; i < d_.size(); ++i) {
        u128 r = u128(y.d_[i]) + borrow;
        if (u128(d_[i]) >= r) {
            d_[i] = u64(u128(d_[i]) - r);
            borrow = 0;
        } else {
            d_[i] = u64((u128(1) << 64) + d_[i] - r);
            borrow = 1;
        }
    }
    return borrow != 0;
}

int Fixed::cmp(const Fixed& rhs) const {
    for (std::size_t i = d_.size(); i-- > 0;)
        if (d_[i] != rhs.d_[i]) return d_[i] < rhs.d_[i] ? -1 : 1;
    return 0;
}

Fixed Fixed::complement() const {
    Fixed r(bits());
    r.sub_mod1(*this);
    return r;
}

Fixed Fixed::mul_u64_mod1(u64 n) const {
    Fixed r(bits());
    u64 carry = 0;
    for (std::size_t i = 0; i < d_.size(); ++i) {
        u128 cur = u128(d_[i]) * n + carry;
        r.d_[i] = u64(cur);
        carry = u64(cur >> 64);
    }
    return r;  // overflow limbs are the integer part, dropped mod 1
}

double Fixed::to_double() const {
    std::size_t top = d_.size();
    while (top > 0 && d_[top - 1] == 0) --top;
    if (top == 0) return 0.0;
    unsigned lead = std::countl_zero(d_[top - 1]);
    // Assemble 128 bits starting at the leading bit, then scale.
    u128 m = u128(d_[top - 1]) << (64 + lead);
    if (top >= 2) m |= u128(d_[top - 2]) << lead;
    if (lead && top >= 3) m |= u128(d_[top - 3]) >> (64 - lead);
    int exp2 = -int(64 * (d_.size() - top) + lead) - 128;
    return std::ldexp(double(u64(m >> 64)) * 0x1p64 + double(u64(m)), exp2);
}

double Fixed::to_double_complement() const {
    // limbs of 2^B - x: below the lowest nonzero limb L all zero, limb L is
    // its two's complement, limbs above are bitwise NOT
    std::size_t low = 0;
    while (low < d_.size() && d_[low] == 0) ++low;
    if (low == d_.size()) return 0.0;  // x == 0 -> {1 - 0} = 0
    auto climb = [&](std::size_t i) -> std::uint64_t {
        if (i < low) return 0;
        if (i == low) return ~d_[i] + 1;
        return ~d_[i];
    };
    std::size_t top = d_.size();
    while (top > 0 && climb(top - 1) == 0) --top;
    if (top == 0) return 0.0;
    unsigned lead = std::countl_zero(climb(top - 1));
    u128 m = u128(climb(top - 1)) << (64 + lead);
    if (top >= 2) m |= u128(climb(top - 2)) << lead;
    if (lead && top >= 3) m |= u128(climb(top - 3)) >> (64 - lead);
    int exp2 = -int(64 * (d_.size() - top) + lead) - 128;
    return std::ldexp(double(u64(m >> 64)) * 0x1p64 + double(u64(m)), exp2);
}

double Fixed::norm_dist() const {
    if (d_.back() >> 63) return to_double_complement();
    return to_double();
}

BigUInt Fixed::to_int() const {
    BigUInt r;
    r.raw() = d_;
    r.normalize();
    return r;
}

double signed_circle_dist(const Fixed& x, const Fixed& y) {
    Fixed d = x.minus(y);
    if (d.top_limb() >> 63) return -d.complement().to_double();
    return d.to_double();
}

}  // namespace rotlab
