// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rotlab {

/// Arbitrary-precision unsigned integer on 64-bit limbs (little-endian,
/// normalized: no trailing zero limbs, empty vector means zero).
///
/// Only the operations the lab needs: ring arithmetic, comparisons,
/// shifts and full division.  Division is schoolbook (Knuth algorithm D),
/// which is plenty for the few-thousand-bit operands used here.
class BigUInt {
public:
    BigUInt() = default;
    BigUInt(std::uint64_t v) { if (v) d_.push_back(v); }  // NOLINT(google-explicit-constructor)

    static BigUInt from_decimal(std::string_view s);
    static BigUInt pow2(unsigned bits);

    bool is_zero() const { return d_.empty(); }
    std::size_t limbs() const { return d_.size(); }
    std::uint64_t limb(std::size_t i) const { return i < d_.size() ? d_[i] : 0; }
    unsigned bit_length() const;
    bool fits_u64() const { return d_.size() <= 1; }
    std::uint64_t to_u64() const { return d_.empty() ? 0 : d_[0]; }
    double to_double() const;

    /// -1, 0, +1 as *this compares to rhs.
    int cmp(const BigUInt& rhs) const;

    BigUInt& operator+=(const BigUInt& rhs);
    /// Requires *this >= rhs.
    BigUInt& operator-=(const BigUInt& rhs);
    BigUInt& operator<<=(unsigned bits);
    BigUInt& operator>>=(unsigned bits);

    friend BigUInt operator+(BigUInt a, const BigUInt& b) { return a += b; }
    friend BigUInt operator-(BigUInt a, const BigUInt& b) { return a -= b; }
    friend BigUInt operator<<(BigUInt a, unsigned b) { return a <<= b; }
    friend BigUInt operator>>(BigUInt a, unsigned b) { return a >>= b; }
    friend BigUInt operator*(const BigUInt& a, const BigUInt& b);

    friend bool operator==(const BigUInt& a, const BigUInt& b) { return a.cmp(b) == 0; }
    friend bool operator!=(const BigUInt& a, const BigUInt& b) { return a.cmp(b) != 0; }
    friend bool operator<(const BigUInt& a, const BigUInt& b) { return a.cmp(b) < 0; }
    friend bool operator<=(const BigUInt& a, const BigUInt& b) { return a.cmp(b) <= 0; }
    friend bool operator>(const BigUInt& a, const BigUInt& b) { return a.cmp(b) > 0; }
    friend bool operator>=(const BigUInt& a, const BigUInt& b) { return a.cmp(b) >= 0; }

    BigUInt mul_u64(std::uint64_t m) const;

    /// Quotient and remainder; throws std::domain_error on division by zero.
    static std::pair<BigUInt, BigUInt> divmod(const BigUInt& num, const BigUInt& den);

    std::string to_string() const;

    /// Access for the fixed-point layer.
    std::vector<std::uint64_t>& raw() { return d_; }
    const std::vector<std::uint64_t>& raw() const { return d_; }
    void normalize();

private:
    std::vector<std::uint64_t> d_;
};

/// Signed wrapper; zero is canonically non-negative.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v);  // NOLINT(google-explicit-constructor)
    BigInt(BigUInt mag, bool neg) : mag_(std::move(mag)), neg_(neg && !mag_.is_zero()) {}

    const BigUInt& mag() const { return mag_; }
    bool negative() const { return neg_; }
    bool is_zero() const { return mag_.is_zero(); }
    int sign() const { return mag_.is_zero() ? 0 : (neg_ ? -1 : 1); }

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    BigInt operator-() const { return BigInt(mag_, !neg_); }

    int cmp(const BigInt& rhs) const;
    friend bool operator<(const BigInt& a, const BigInt& b) { return a.cmp(b) < 0; }
    friend bool operator==(const BigInt& a, const BigInt& b) { return a.cmp(b) == 0; }

    double to_double() const;
    std::string to_string() const;

private:
    BigUInt mag_;
    bool neg_ = false;
};

}  // namespace rotlab
