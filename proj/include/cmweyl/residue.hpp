#pragma once

// Partial sums of the CM-field residue constant r_d(G): the sum over totally
// real fields F with Galois group G of Res_{s=1} zeta_F / (2^d zeta_F(2) d_F^2).

#include <cmweyl/catalog.hpp>
#include <cmweyl/zeta.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cmweyl::residue {

struct Contribution {
    std::string label;
    std::int64_t discriminant = 0;
    double value = 0.0;        // R_d(F) / d_F^2
    double error_bound = 0.0;  // from the zeta_F(2) bracket
    bool operator==(const Contribution&) const = default;
};

struct ResidueReport {
    int degree = 0;
    std::string group;  // dT label
    std::size_t n_fields = 0;
    std::int64_t min_disc = 0;
    std::int64_t max_disc = 0;
    double partial_sum = 0.0;
    double error_bound = 0.0;
    /// Heuristic remainder beyond max_disc from a power-law fit of the field
    /// count; reported only, never added to partial_sum. NaN when the fit
    /// has no finite integral.
    double tail_estimate = 0.0;
    double count_exponent = 0.0;  // fitted a in N(T) ~ c T^a
    std::vector<Contribution> per_field;
    std::optional<double> proportion;
    bool operator==(const ResidueReport&) const = default;
};

struct SumOptions {
    double tol = 1e-3;     // absolute bound on each zeta_F(2)
    unsigned threads = 0;  // 0 = hardware concurrency
    zeta::ZetaConfig zeta;
};

/// R_d(F) / d_F^2 with R_d(F) = Res zeta_F / (2^d zeta_F(2)).
Contribution field_contribution(const FieldRecord& record, double tol, const zeta::ZetaConfig& config = {});

/// Sum of field contributions in ascending discriminant order. The catalog
/// must be nonempty and carry a single Galois label.
ResidueReport residue_partial_sum(const catalog::Catalog& catalog, const SumOptions& options = {});

/// Least-squares fit of log N(T) = log c + a log T over the upper half of the
/// report's fields; returns (c, a).
std::pair<double, double> fit_count_growth(const std::vector<Contribution>& fields);

/// Share of each group in the degree-wide total; also stores it in the reports.
std::vector<std::pair<std::string, double>> proportions(std::vector<ResidueReport>& reports);

}  // namespace cmweyl::residue
