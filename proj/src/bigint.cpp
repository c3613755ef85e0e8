// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "rotlab/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace rotlab {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

void BigUInt::normalize() {
    while (!d_.empty() && d_.back() == 0) d_.pop_back();
}

BigUInt BigUInt::pow2(unsigned bits) {
    BigUInt r;
    r.d_.assign(bits / 64 + 1, 0);
    r.d_.back() = u64(1) << (bits % 64);
    r.normalize();
    return r;
}

unsigned BigUInt::bit_length() const {
    if (d_.empty()) return 0;
    return unsigned(64 * (d_.size() - 1)) + (64 - std::countl_zero(d_.back()));
}

double BigUInt::to_double() const {
    // Top 64 bits suffice; rounding error below 2^-53 relative.
    if (d_.empty()) return 0.0;
    unsigned bl = bit_length();
    if (bl <= 64) return double(d_[0]);
    unsigned sh = bl - 64;
    std::size_t li = sh / 64;
    unsigned lo = sh % 64;
    u64 top = d_[li] >> lo;
    if (lo) top |= d_[li + 1] << (64 - lo);
    return std::ldexp(double(top), int(sh));
}

int BigUInt::cmp(const BigUInt& rhs) const {
    if (d_.size() != rhs.d_.size()) return d_.size() < rhs.d_.size() ? -1 : 1;
    for (std::size_t i = d_.size(); i-- > 0;)
        if (d_[i] != rhs.d_[i]) return d_[i] < rhs.d_[i] ? -1 : 1;
    return 0;
}

BigUInt& BigUInt::operator+=(const BigUInt& rhs) {
    if (d_.size() < rhs.d_.size()) d_.resize(rhs.d_.size(), 0);
    u64 carry = 0;
    for (std::size_t i = 0; i < d_.size(); ++i) {
        u128 s = u128(d_[i]) + (i < rhs.d_.size() ? rhs.d_[i] : 0) + carry;
        d_[i] = u64(s);
        carry = u64(s >> 64);
    }
    if (carry) d_.push_back(carry);
    return *this;
}

BigUInt& BigUInt::operator-=(const BigUInt& rhs) {
    if (cmp(rhs) < 0) throw std::domain_error("BigUInt underflow");
    u64 borrow = 0;
    for (std::size_t i = 0; i < d_.size(); ++i) {
        u128 r = u128(rhs.limb(i)) + borrow;
        if (u128(d_[i]) >= r) {
            d_[i] = u64(u128(d_[i]) - r);
            borrow = 0;
        } else {
            d_[i] = u64((u128(1) << 64) + d_[i] - r);
            borrow = 1;
        }
    }
    normalize();
    return *this;
}

BigUInt operator*(const BigUInt& a, const BigUInt& b) {
    if (a.is_zero() || b.is_zero()) return {};
    BigUInt r;
    r.d_.assign(a.d_.size() + b.d_.size(), 0);
    for (std::size_t i = 0; i < a.d_.size(); ++i) {
        u64 carry = 0;
        for (std::size_t j = 0; j < b.d_.size(); ++j) {
            u128 cur = u128(a.d_[i]) * b.d_[j] + r.d_[i + j] + carry;
            r.d_[i + j] = u64(cur);
            carry = u64(cur >> 64);
        }
        r.d_[i + b.d_.size()] += carry;
    }
    r.normalize();
    return r;
}

BigUInt BigUInt::mul_u64(u64 m) const {
    if (m == 0 || is_zero()) return {};
    BigUInt r;
    r.d_.resize(d_.size() + 1, 0);
    u64 carry = 0;
    for (std::size_t i = 0; i < d_.size(); ++i) {
        u128 cur = u128(d_[i]) * m + carry;
        r.d_[i] = u64(cur);
        carry = u64(cur >> 64);
    }
    r.d_[d_.size()] = carry;
    r.normalize();
    return r;
}

BigUInt& BigUInt::operator<<=(unsigned bits) {
    if (is_zero() || bits == 0) return *this;
    unsigned limbs = bits / 64, sh = bits % 64;
    std::size_t n = d_.size();
    d_.resize(n + limbs + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
        u64 hi = sh ? (d_[i] >> (64 - sh)) : 0;
        d_[i + limbs + 1] |= hi;
        d_[i + limbs] = d_[i] << sh;
    }
    for (unsigned i = 0; i < limbs; ++i) d_[i] = 0;
    normalize();
    return *this;
}

BigUInt& BigUInt::operator>>=(unsigned bits) {
    unsigned limbs = bits / 64, sh = bits % 64;
    if (limbs >= d_.size()) {
        d_.clear();
        return *this;
    }
    d_.erase(d_.begin(), d_.begin() + limbs);
    if (sh) {
        for (std::size_t i = 0; i < d_.size(); ++i) {
            d_[i] >>= sh;
            if (i + 1 < d_.size()) d_[i] |= d_[i + 1] << (64 - sh);
        }
    }
    normalize();
    return *this;
}

namespace {

// Knuth algorithm D on normalized operands (divisor top bit set).
void divmod_knuth(std::vector<u64>& un, const std::vector<u64>& vn,
                  std::vector<u64>& q) {
    const std::size_t n = vn.size();
    const std::size_t m = un.size() - n - 1;
    q.assign(m + 1, 0);
    const u64 vhi = vn[n - 1];
    const u64 vlo = n >= 2 ? vn[n - 2] : 0;
    for (std::size_t j = m + 1; j-- > 0;) {
        u128 num = (u128(un[j + n]) << 64) | un[j + n - 1];
        u64 qhat = vhi == ~u64(0) && (num >> 64) == vhi ? ~u64(0) : u64(num / vhi);
        u128 rhat = num - u128(qhat) * vhi;
        while (rhat <= ~u64(0) &&
               u128(qhat) * vlo > ((rhat << 64) | (n >= 2 ? un[j + n - 2] : 0))) {
            --qhat;
            rhat += vhi;
        }
        // Multiply-subtract; qhat may still be one too large.
        u128 borrow = 0, carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            u128 p = u128(qhat) * vn[i] + carry;
            carry = p >> 64;
            u128 sub = u128(un[i + j]) - u64(p) - borrow;
            un[i + j] = u64(sub);
            borrow = (sub >> 64) ? 1 : 0;
        }
        u128 sub = u128(un[j + n]) - carry - borrow;
        un[j + n] = u64(sub);
        if (sub >> 64) {
            // Add back.
            --qhat;
            u128 c = 0;
            for (std::size_t i = 0; i < n; ++i) {
                u128 s = u128(un[i + j]) + vn[i] + c;
                un[i + j] = u64(s);
                c = s >> 64;
            }
            un[j + n] += u64(c);
        }
        q[j] = qhat;
    }
}

}  // namespace

std::pair<BigUInt, BigUInt> BigUInt::divmod(const BigUInt& num, const BigUInt& den) {
    if (den.is_zero()) throw std::domain_error("BigUInt division by zero");
    if (num.cmp(den) < 0) return {BigUInt{}, num};
    if (den.d_.size() == 1) {
        BigUInt q;
        q.d_.resize(num.d_.size());
        u128 rem = 0;
        for (std::size_t i = num.d_.size(); i-- > 0;) {
            u128 cur = (rem << 64) | num.d_[i];
            q.d_[i] = u64(cur / den.d_[0]);
            rem = cur % den.d_[0];
        }
        q.normalize();
        return {q, BigUInt(u64(rem))};
    }
    const unsigned shift = std::countl_zero(den.d_.back());
    BigUInt u = num << shift, v = den << shift;
    std::vector<u64> un = u.d_;
    un.push_back(0);
    BigUInt q, r;
    divmod_knuth(un, v.d_, q.d_);
    q.normalize();
    un.resize(v.d_.size());
    r.d_ = std::move(un);
    r.normalize();
    r >>= shift;
    return {q, r};
}

BigUInt BigUInt::from_decimal(std::string_view s) {
    BigUInt r;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad decimal digit");
        r = r.mul_u64(10);
        r += BigUInt(u64(c - '0'));
    }
    return r;
}

std::string BigUInt::to_string() const {
    if (is_zero()) return "0";
    BigUInt cur = *this;
    std::string out;
    const BigUInt chunk(u64(10'000'000'000'000'000'000ULL));
    while (!cur.is_zero()) {
        auto [q, r] = divmod(cur, chunk);
        u64 part = r.to_u64();
        for (int i = 0; i < 19 && !(q.is_zero() && part == 0); ++i) {
            out.push_back(char('0' + part % 10));
            part /= 10;
        }
        if (q.is_zero() && part == 0) break;
        cur = q;
    }
    if (out.empty()) out = "0";
    std::reverse(out.begin(), out.end());
    return out;
}

BigInt::BigInt(std::int64_t v)
    : mag_(v < 0 ? BigUInt(u64(-(v + 1)) + 1) : BigUInt(u64(v))), neg_(v < 0) {}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.neg_ == b.neg_) return BigInt(a.mag_ + b.mag_, a.neg_);
    int c = a.mag_.cmp(b.mag_);
    if (c == 0) return BigInt{};
    return c > 0 ? BigInt(a.mag_ - b.mag_, a.neg_) : BigInt(b.mag_ - a.mag_, b.neg_);
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    return BigInt(a.mag_ * b.mag_, a.neg_ != b.neg_);
}

int BigInt::cmp(const BigInt& rhs) const {
    if (sign() != rhs.sign()) return sign() < rhs.sign() ? -1 : 1;
    int c = mag_.cmp(rhs.mag_);
    return neg_ ? -c : c;
}

double BigInt::to_double() const {
    double m = mag_.to_double();
    return neg_ ? -m : m;
}

std::string BigInt::to_string() const {
    return neg_ ? "-" + mag_.to_string() : mag_.to_string();
}

}  // namespace rotlab
