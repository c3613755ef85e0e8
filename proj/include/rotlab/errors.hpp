// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rotlab {

/// Base class for structured failures; everything the CLI maps to exit code 2
/// (usage/config) or surfaces as a labelled experiment abort derives from it.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rotation-number descriptor denotes a rational (expansion terminates).
struct RationalInput : Error {
    using Error::Error;
};

/// Not enough certified bits to answer the request (decimal too short, orbit
/// too long, Gauss orbit too deep, ...).
struct PrecisionExhausted : Error {
    using Error::Error;
};

/// An orbit point came within sigma_min of a ceiling singularity.  Carries the
/// orbit index so callers can resample or report the offending step.
struct SingularityProximity : Error {
    SingularityProximity(std::int64_t orbit_index, std::size_t singularity,
                         const std::string& what)
        : Error(what), orbit_index(orbit_index), singularity(singularity) {}
    std::int64_t orbit_index;
    std::size_t singularity;
};

/// The non-resonance pre-scan found the interval orbit straddling or touching
/// a singularity neighborhood.
struct NonResonanceViolated : Error {
    NonResonanceViolated(std::int64_t orbit_index, std::size_t singularity,
                         const std::string& what)
        : Error(what), orbit_index(orbit_index), singularity(singularity) {}
    std::int64_t orbit_index;
    std::size_t singularity;
};

/// Pair distance outside the expanded scale table.
struct OutOfRange : Error {
    using Error::Error;
};

/// A pluggable sieve rule produced x_s >= 1/q_s.
struct RuleViolation : Error {
    using Error::Error;
};

/// A finite stage of the WR-failure interval recursion emptied.
struct ConstructionFailed : Error {
    ConstructionFailed(std::string stage, const std::string& what)
        : Error(what), stage(std::move(stage)) {}
    std::string stage;
};

/// Config file or CLI arguments failed validation.
struct ConfigInvalid : Error {
    using Error::Error;
};

}  // namespace rotlab
