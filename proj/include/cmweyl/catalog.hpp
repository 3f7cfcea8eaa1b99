#pragma once

// Totally real field catalogs: tab-separated snapshot files, synthesized real
// quadratic fields, and an HTTP field-database client with an on-disk cache.
//
// File format, one record per line, '#' starts a comment:
//   label  degree  disc  poly  galois  h  R  r1,r2  [local]
// poly lists coefficients constant term first, comma separated; local gives
// residue degrees at primes dividing the polynomial index, "2:1,2;3:3".
// The first comment line of a file is kept as the catalog's source string.

#include <cmweyl/field_record.hpp>

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cmweyl::catalog {

struct Catalog {
    std::vector<FieldRecord> records;  // sorted by (discriminant, label)
    std::string source;
    int degree = 0;
    std::optional<std::string> group_filter;  // dT label
};

/// Smallest totally real discriminant in degrees 2..5; 0 for other degrees.
std::int64_t minimal_discriminant(int degree);

/// Parses one data line. Throws ParseError carrying `line_no`.
FieldRecord parse_record(std::string_view line, std::size_t line_no = 0);
std::string format_record(const FieldRecord& record);

/// Throws DataError naming the record's label when an invariant fails:
/// positive discriminant above the degree minimum, disc(poly) = d_F * square,
/// r1 = degree real roots, r2 = 0, a Galois label known for the degree, and
/// class number and regulator present (and positive) in degree >= 3.
void validate(const FieldRecord& record);

/// `group` accepts a dT label ("3T1") or a group name ("C3").
Catalog parse(std::istream& in, int degree, const std::optional<std::string>& group = {},
              std::string source = {});
Catalog load(const std::filesystem::path& path, int degree, const std::optional<std::string>& group = {});
void save(const Catalog& catalog, const std::filesystem::path& path);

/// Union of two catalogs of one degree; a label present in both must carry
/// identical records.
Catalog merge(const Catalog& a, const Catalog& b);

/// Restriction to records with discriminant <= max_disc.
Catalog truncate(const Catalog& catalog, std::int64_t max_disc);

/// Every real quadratic field Q(sqrt D) with 5 <= D <= max_disc, with class
/// number and regulator from reduced forms and continued fractions.
Catalog synthesize_quadratic(std::int64_t max_disc);

struct RemoteOptions {
    /// Defaults to $CMWEYL_CACHE_DIR when set; empty disables caching.
    std::filesystem::path cache_dir;
    int max_attempts = 3;
    std::chrono::milliseconds backoff{200};
    std::chrono::seconds timeout{10};
};

RemoteOptions default_remote_options();

/// GET {base_url}/fields?degree=d&disc_min=1&disc_max=N, expecting
///   {"records": [{"label", "degree", "disc", "poly": [c0, c1, ...],
///                 "galois", "class_number", "regulator", "signature": [r1, r2],
///                 "local": [{"p", "degrees": [...]}]}]}
/// Records outside the totally real signature are skipped; everything else
/// goes through `validate`. A cached TSV for (d, N) short-circuits the request.
/// Throws TransportError after `max_attempts` failures and ParseError on a
/// malformed payload.
Catalog fetch_remote(const std::string& base_url, int degree, std::int64_t max_disc,
                     const RemoteOptions& options = default_remote_options());

/// Parses the JSON payload described above.
Catalog parse_remote_payload(std::string_view body, int degree, std::int64_t max_disc, std::string source);

}  // namespace cmweyl::catalog
