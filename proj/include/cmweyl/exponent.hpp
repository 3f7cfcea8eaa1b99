#pragma once

// Exact exponents in the asymptotic count of CM fields: the power saving C1
// from a torsion exponent and a field-count exponent, the convexity-breaking
// alpha and beta, and their combinations C2 and C3. Also a small database of
// known upper bounds N_d(X, G) << X^M.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cmweyl::exponent {

// Under C++20, == and != between this type and a plain int recurse through
// the rewritten-operator rules; compare against Rational values instead.
using Rational = boost::rational<boost::multiprecision::cpp_int>;

/// Accepts "p/q", "-p/q" or an integer. Throws ParseError.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

struct ExponentInput {
    int d = 0;
    Rational delta{0};      // 2-torsion exponent, in [0, 1/2]
    Rational malle{1};      // field-count exponent M(G), positive
    Rational subconvex{0};  // subconvexity saving, in [0, 1/2]

    /// delta + M < 2.
    bool hypothesis_ok() const;
};

/// Throws DataError when a field is out of range or the hypothesis fails.
void require_valid(const ExponentInput& in);

Rational c1(const ExponentInput& in);
Rational alpha(const ExponentInput& in);
/// The per-group form, with alpha taken at this group's M.
Rational beta(const ExponentInput& in);

struct GroupExponents {
    std::string group;
    ExponentInput input;
    Rational c1, alpha, beta;
    Rational c2;          // min(C1, 1 - beta) with this group's beta
    Rational c2_uniform;  // min(C1, 1 - beta_max) with the degree-wide beta
};

struct ExponentSet {
    int d = 0;
    std::vector<GroupExponents> groups;
    Rational beta_max;  // max of beta over the supplied groups
    Rational c3;        // min of c2 over the supplied groups; same for both forms
    // The group attaining c3, whose C1, alpha, beta and C2 are reported as
    // the headline values.
    std::string binding_group;
    std::string provenance;

    const GroupExponents& binding() const;
};

/// `inputs` pairs a group name with its exponents; all must share d. Throws
/// DataError naming the first group that violates the hypothesis.
ExponentSet c2_c3(const std::vector<std::pair<std::string, ExponentInput>>& inputs);

/// One row of the known-bounds database.
struct MalleBound {
    Rational malle;
    std::string rule;    // which general statement or table row applies
    std::string source;  // citation key
    std::optional<Rational> delta_bound;  // strict upper bound on delta when the row needs one
};

/// Structural data the general rules depend on.
struct GroupTraits {
    int degree = 0;
    std::uint64_t order = 0;
    bool abelian = false;
    std::optional<int> dihedral_prime;  // G = D_l acting on l points
    std::optional<int> s3_times_abelian;  // G = S3 x A on 3|A| points; holds |A|
    std::optional<int> s4_times_abelian;  // G = S4 x A on 4|A| points; holds |A|
};

/// Every general rule that applies, smallest exponent first.
std::vector<MalleBound> general_bounds(const GroupTraits& traits);

/// Rows for specific groups of degree 6 to 8 that need a small torsion exponent.
struct TorsionRangeRow {
    std::string label;
    std::uint64_t order;
    std::string name;
    Rational malle;
    Rational delta_bound;
};
const std::vector<TorsionRangeRow>& torsion_range_table();

/// Best known bound for a transitive group given as "dTn" or a common name.
/// Degrees up to 5 resolve through the transitive-group catalog; higher
/// degrees accept cyclic "dT1"/"Cd", dihedral "lT2"/"Dl" for prime l, and the
/// torsion-range rows. Throws DataError for unknown pairs.
MalleBound table_lookup(int d, std::string_view group);
std::vector<MalleBound> table_lookup_all(int d, std::string_view group);

}  // namespace cmweyl::exponent
