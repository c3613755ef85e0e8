// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rotlab/bigint.hpp"
#include "rotlab/circle.hpp"
#include "rotlab/errors.hpp"
#include "rotlab/fixed.hpp"

namespace rotlab {

/// alpha = (p + q*sqrt(D)) / r, exact.
struct SurdDescriptor {
    std::int64_t p = 0, q = 0, D = 0, r = 1;
};

/// A known prefix of the partial-quotient sequence.
struct QuotientListDescriptor {
    std::vector<std::uint64_t> a;
};

/// Decimal string "0.dddd..."; certified radius one unit in the last digit.
struct DecimalDescriptor {
    std::string digits;  // fractional digits only
};

using RotationDescriptor =
    std::variant<SurdDescriptor, QuotientListDescriptor, DecimalDescriptor>;

/// Grammar: "surd:p,q,D,r" | "cf:a1,a2,..." | "dec:0.6180339887...".
RotationDescriptor parse_rotation(std::string_view text);
std::string descriptor_string(const RotationDescriptor& d);

/// Natural log of a big integer (handles values far beyond double range).
double ln_big(const BigUInt& v);

/// Quotient stream of an exact rational interval (L, H) in (0,1).
/// Yields partial quotients valid for every irrational in the interval;
/// returns nullopt once the interval no longer pins the next quotient.
class IntervalCF {
public:
    IntervalCF(BigUInt lo_num, BigUInt lo_den, BigUInt hi_num, BigUInt hi_den);
    std::optional<std::uint64_t> next();

private:
    BigUInt ln_, ld_, hn_, hd_;
    bool dead_ = false;
};

/// Exact continued-fraction data for an irrational rotation number.
///
/// Raw convergents obey q_{s+1} = a_{s+1} q_s + q_{s-1}; the public q()/p()
/// accessors expose the deduplicated strictly increasing best-approximation
/// sequence (when a_1 = 1 the raw sequence starts 1,1 and the duplicate is
/// collapsed; index_shifted() reports that the raw recursion index differs).
class ContinuedFraction {
public:
    const RotationDescriptor& descriptor() const { return desc_; }
    std::size_t depth() const { return quot_.size(); }
    const std::vector<std::uint64_t>& quotients() const { return quot_; }

    // Raw convergents, s = 0..depth (q_0 = 1, p_0 = 0).
    const BigUInt& raw_q(std::size_t s) const { return rq_[s]; }
    const BigUInt& raw_p(std::size_t s) const { return rp_[s]; }

    // Deduplicated best-approximation sequence, s = 0..size()-1.
    std::size_t size() const { return rq_.size() - shift_; }
    const BigUInt& q(std::size_t s) const { return rq_[s + shift_]; }
    const BigUInt& p(std::size_t s) const { return rp_[s + shift_]; }
    double q_dbl(std::size_t s) const { return q(s).to_double(); }
    bool index_shifted() const { return shift_ != 0; }

    /// max q_{s+1}/q_s over the expanded range (the bounded-type ratio c).
    double ratio_sup() const;
    std::uint64_t max_quotient() const;

    const Fixed& alpha() const { return alpha_; }
    double alpha_err_ulps() const { return alpha_err_; }
    CirclePoint alpha_point() const { return CirclePoint(alpha_, alpha_err_); }
    unsigned bits() const { return alpha_.bits(); }

    /// Exact rational enclosure of alpha from the expanded quotients.
    struct RatInterval {
        BigUInt lo_num, lo_den, hi_num, hi_den;
    };
    const RatInterval& enclosure() const { return encl_; }

    /// Superset of quotients() kept internally to sharpen exact checks and
    /// the rounding of alpha (surds extend well past the requested depth).
    const std::vector<std::uint64_t>& expanded_quotients() const { return ext_quot_; }

    friend ContinuedFraction cf_expand(const RotationDescriptor& src, std::size_t depth,
                                       unsigned bits);

private:
    RotationDescriptor desc_;
    std::vector<std::uint64_t> quot_;
    std::vector<std::uint64_t> ext_quot_;
    std::vector<BigUInt> rq_, rp_;
    std::size_t shift_ = 0;
    Fixed alpha_;
    double alpha_err_ = 1;
    RatInterval encl_;
};

/// Expands the descriptor to `depth` partial quotients with exact convergents.
/// Throws RationalInput when the source is rational, PrecisionExhausted when a
/// quotient at the requested depth cannot be certified.
ContinuedFraction cf_expand(const RotationDescriptor& src, std::size_t depth,
                            unsigned bits = kDefaultCircleBits);

inline ContinuedFraction cf_expand(std::string_view text, std::size_t depth,
                                   unsigned bits = kDefaultCircleBits) {
    return cf_expand(parse_rotation(text), depth, bits);
}

/// One row of the best-approximation bracket check
///   1/(q_s + q_{s+1}) <= ||q_s alpha|| <= 1/q_{s+1},
/// evaluated in exact rational arithmetic on the convergents (s is a
/// deduplicated index).  value_lo/value_hi are a certified enclosure of
/// ||q_s alpha|| for display.
struct BestApproxRow {
    std::size_t s;
    double lower, upper;
    double value_lo, value_hi;
    bool lower_ok, upper_ok;
    bool pass() const { return lower_ok && upper_ok; }
};

std::vector<BestApproxRow> verify_best_approx(const ContinuedFraction& cf,
                                              std::size_t s_max);

}  // namespace rotlab
