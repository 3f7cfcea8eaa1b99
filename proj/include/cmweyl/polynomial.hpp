#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cmweyl::poly {

using BigInt = boost::multiprecision::cpp_int;

/// Integer polynomial, coefficients from the constant term upward.
using IntPoly = std::vector<long long>;

int degree(const IntPoly& f);
bool is_monic(const IntPoly& f);

/// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f), exact.
BigInt discriminant(const IntPoly& f);

/// Number of distinct real roots, by a Sturm sequence over the rationals.
int real_root_count(const IntPoly& f);

/// Human-readable form, highest degree first: "x^3 - x^2 - 2*x + 1".
std::string to_string(const IntPoly& f);

/// Factorization shape of a monic f modulo a prime p.
struct ModPShape {
    std::vector<int> degrees;  // degrees of the distinct monic irreducible factors, ascending
    bool squarefree = true;    // false when some factor is repeated
};

/// Distinct-degree factorization of f mod p. Works for non-squarefree
/// reductions too: gcd(x^{p^k} - x, f) counts each irreducible factor once.
/// Callers that know p does not divide disc(f) may pass `squarefree_known`
/// to stop as soon as the unaccounted degree must be a single factor.
ModPShape factor_shape_mod_p(const IntPoly& f, std::uint32_t p, bool squarefree_known = false);

}  // namespace cmweyl::poly
