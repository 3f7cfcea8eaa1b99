#pragma once

// Dedekind zeta data for totally real fields: quadratic characters, L(1, chi_D)
// and L(2, chi_D), Euler products for zeta_F(2), and Res_{s=1} zeta_F(s) from the
// analytic class number formula.

#include <cmweyl/arith.hpp>
#include <cmweyl/field_record.hpp>
#include <cmweyl/polynomial.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace cmweyl::zeta {

using arith::kronecker;

/// A numerically evaluated quantity with a rigorous bound on |value - exact|.
struct EulerProductValue {
    double value = 0.0;
    double tail_bound = 0.0;
    std::size_t primes_used = 0;
};

struct SplittingType {
    std::uint32_t p = 0;
    std::vector<int> degrees;  // residue degrees of the distinct primes above p
    bool ramified = false;
    bool index_divisor = false;  // p divides [O_F : Z[x]/(poly)]; degrees then unreliable
};

struct ZetaConfig {
    std::uint32_t prime_cap = 20'000'000;
};

/// L(s, chi_D) for s in {1, 2}. s = 1 uses the finite character-sum formulas
/// (log-sine sum for D > 0, the sum of a chi(a) for D < 0); s = 2 sums whole
/// periods and bounds the tail by |D| / (2 N^2). Throws DataError for
/// non-fundamental D, for s outside {1, 2}, and for the pole at (D, s) = (1, 1).
EulerProductValue l_value(long long disc, int s, double tol);

/// Factorization shape of the prime p in the order Z[x]/(poly). When
/// `field_discriminant` is given, p is flagged as an index divisor if p^2
/// divides disc(poly) / d_F.
SplittingType splitting_type(const poly::IntPoly& poly, std::uint32_t p,
                             std::optional<std::int64_t> field_discriminant = std::nullopt);

/// Upper bound on log(zeta_F(2) / prod_{p <= cutoff} local factors) for a field
/// of the given degree.
double euler_tail_log(std::uint32_t cutoff, int degree);

/// zeta_F(2) as an Euler product over primes up to a cut-off chosen so that the
/// reported tail_bound is at most `tol`. Index-divisor primes use the record's
/// local factors; without them the local factor is bracketed between the inert
/// and totally split extremes and the gap widens tail_bound. Throws DataError
/// if `tol` cannot be met within the prime cap.
EulerProductValue zeta_f_at_2(const FieldRecord& record, double tol, const ZetaConfig& config = {});

/// Euler product with a fixed prime cut-off, for convergence studies.
EulerProductValue zeta_f_at_2_with_cutoff(const FieldRecord& record, std::uint32_t cutoff);

/// 2^{r1} (2 pi)^{r2} h R / (w sqrt|d_F|). Throws DataError "incomplete record"
/// when h or R is missing.
double residue_zeta(const FieldRecord& record);

}  // namespace cmweyl::zeta
