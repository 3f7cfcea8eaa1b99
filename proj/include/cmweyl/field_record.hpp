#pragma once

#include <cmweyl/polynomial.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cmweyl {

/// Residue degrees of the primes above p, for primes where the defining
/// polynomial does not determine the factorization (p divides its index).
struct LocalFactor {
    std::uint32_t p;
    std::vector<int> residue_degrees;

    bool operator==(const LocalFactor&) const = default;
};

/// A number field as served by the catalog. Totally real records have
/// r1 = degree and r2 = 0.
struct FieldRecord {
    std::string label;
    int degree = 0;
    std::int64_t discriminant = 0;  // |d_F|
    poly::IntPoly poly;             // monic, constant term first
    std::string galois_label;       // "dTn"
    std::optional<std::int64_t> class_number;
    std::optional<double> regulator;
    int r1 = 0;
    int r2 = 0;
    int roots_of_unity = 2;
    std::vector<LocalFactor> local_factors;

    bool operator==(const FieldRecord&) const = default;
};

}  // namespace cmweyl
