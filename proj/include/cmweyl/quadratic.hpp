#pragma once

// Invariants of real quadratic fields Q(sqrt D) from binary quadratic forms:
// the regulator from the continued-fraction period of (b + sqrt D)/2, and the
// class number from the cycles of reduced indefinite forms.

#include <cstdint>

namespace cmweyl::quadratic {

struct RealQuadraticInvariants {
    long long disc = 0;
    double regulator = 0.0;  // log of the fundamental unit eps > 1
    int unit_norm = 0;       // N(eps) = +-1
    std::int64_t narrow_class_number = 0;
    std::int64_t class_number = 0;
    std::int64_t period_length = 0;
};

/// Regulator and unit norm only. Throws DataError unless D > 1 is fundamental.
RealQuadraticInvariants regulator(long long disc);

/// Regulator, narrow and wide class numbers.
RealQuadraticInvariants invariants(long long disc);

}  // namespace cmweyl::quadratic
