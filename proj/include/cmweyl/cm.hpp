#pragma once

// Quartic CM fields E = F(sqrt alpha) over real quadratic F = Q(sqrt D) with
// alpha totally negative: enumeration up to a discriminant bound, relative
// discriminants, Galois type, and the Weyl / non-Weyl split of the counts.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cmweyl::cm {

using BigInt = boost::multiprecision::cpp_int;
// Representatives can be far larger than 64 bits when the fundamental unit
// is. As with any rational over cpp_int, compare against Q values, never
// against plain integers: C++20 rewritten operators recurse on the latter.
using Q = boost::rational<BigInt>;

enum class GaloisType { C4, V4, D4 };
std::string to_string(GaloisType type);

/// True iff x + y sqrt(D) is the square of an element of Q(sqrt D). D must be
/// a positive non-square; (x, y) = (0, 0) counts as a square.
bool is_square_in_F(const Q& x, const Q& y, long long disc);

/// The fundamental unit (x + y sqrt D) / 2 > 1 of Q(sqrt D).
struct FundamentalUnit {
    BigInt x = 0;
    BigInt y = 0;
    int norm = 0;
    long double value = 0;
};
/// Throws DataError unless D > 1 is fundamental.
FundamentalUnit fundamental_unit(long long disc);

/// alpha = a + b sqrt(D) up to squares of F.
struct SquareClassRep {
    long long base_D = 0;
    Q a, b;
    bool totally_negative = false;
    bool operator==(const SquareClassRep&) const = default;
};

struct CMFieldRecord {
    long long base_D = 0;
    SquareClassRep square_class;
    std::int64_t abs_disc = 0;  // base_D^2 * rel_norm
    std::int64_t rel_norm = 0;  // norm of the relative discriminant of E/F
    GaloisType galois_type = GaloisType::D4;
    bool weyl = false;  // galois_type == D4
    bool operator==(const CMFieldRecord&) const = default;
};

/// Norm of the relative discriminant of F(sqrt alpha)/F for integral nonzero
/// alpha = (x + y sqrt D) / 2. Throws SizeLimitError when N(alpha) does not
/// fit in 64 bits.
std::int64_t relative_discriminant_norm(long long disc, const BigInt& x, const BigInt& y);

/// Normal over Q iff N(alpha) is a square in F; then V4 when N(alpha) is a
/// rational square and C4 when it is D times one.
GaloisType classify_galois(const CMFieldRecord& record);

/// The record for F(sqrt alpha) with alpha = a + b sqrt(D). Throws DataError
/// unless D > 1 is fundamental and alpha is totally negative.
CMFieldRecord make_record(long long disc, const Q& a, const Q& b);

/// One record per totally imaginary quadratic extension E/F of F = Q(sqrt D)
/// with |d_E| <= max_disc, ordered by (abs_disc, alpha). Representatives are
/// integral, of least |N(alpha)|, then least |a|, then b >= 0.
std::vector<CMFieldRecord> enumerate_cm(long long disc, std::int64_t max_disc);

/// All base fields with D^2 <= max_disc, in parallel over D; the merge is
/// ordered by (abs_disc, base_D, alpha) and does not depend on scheduling.
std::vector<CMFieldRecord> enumerate_all(std::int64_t max_disc, unsigned threads = 0);

struct CountReport {
    std::int64_t X = 0;
    std::int64_t n_cm = 0;  // extensions E/F
    std::int64_t n_weyl = 0;
    std::int64_t n_not_weyl = 0;
    std::int64_t n_c4 = 0, n_v4 = 0, n_d4 = 0;
    std::int64_t n_isomorphism_classes = 0;  // conjugate D4 extensions merged
    double ratio_weyl = 0.0;
    /// Least-squares exponent of n_not_weyl against X over the checkpoints;
    /// NaN with fewer than two usable checkpoints.
    double slope_fit = 0.0;
    std::vector<std::pair<std::int64_t, std::int64_t>> checkpoints;  // (X, n_not_weyl)
};

struct CountOptions {
    unsigned threads = 0;
    /// Bounds for the slope fit; empty means X, X/2, ..., X/64 (those >= 125).
    std::vector<std::int64_t> checkpoints;
};

/// Counts over records already enumerated to at least X.
CountReport count_records(const std::vector<CMFieldRecord>& records, std::int64_t X, const CountOptions& options = {});
/// Throws DataError for X < 125.
CountReport count_report(std::int64_t X, const CountOptions& options = {});

}  // namespace cmweyl::cm
