#include <cmweyl/catalog.hpp>
#include <cmweyl/arith.hpp>
#include <cmweyl/error.hpp>
#include <cmweyl/perm.hpp>
#include <cmweyl/polynomial.hpp>
#include <cmweyl/quadratic.hpp>

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace cmweyl::catalog {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_int(std::string_view s, const char* what, std::size_t line_no) {
    s = trim(s);
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ParseError(std::string("bad ") + what + " '" + std::string(s) + "'", line_no);
    return value;
}

double parse_real(std::string_view s, const char* what, std::size_t line_no) {
    s = trim(s);
    const std::string copy(s);
    char* end = nullptr;
    const double value = std::strtod(copy.c_str(), &end);
    if (copy.empty() || end != copy.c_str() + copy.size())
        throw ParseError(std::string("bad ") + what + " '" + copy + "'", line_no);
    return value;
}

bool is_missing(std::string_view s) {
    s = trim(s);
    return s.empty() || s == "-" || s == "NA";
}

std::string resolve_group(const std::string& group, int degree) {
    return perm::find_transitive(group, degree).label;
}

void sort_and_check(Catalog& cat) {
    std::sort(cat.records.begin(), cat.records.end(), [](const FieldRecord& a, const FieldRecord& b) {
        return a.discriminant != b.discriminant ? a.discriminant < b.discriminant : a.label < b.label;
    });
    std::map<std::string_view, int> seen;
    for (const auto& r : cat.records)
        if (++seen[r.label] > 1) throw DataError("duplicate label " + r.label);
}

std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

}  // namespace

std::int64_t minimal_discriminant(int degree) {
    switch (degree) {
        case 2: return 5;
        case 3: return 49;
        case 4: return 725;
        case 5: return 14641;
        default: return 0;
    }
}

FieldRecord parse_record(std::string_view line, std::size_t line_no) {
    const auto cols = split(line, '\t');
    if (cols.size() < 8 || cols.size() > 9)
        throw ParseError("expected 8 or 9 tab-separated fields, found " + std::to_string(cols.size()), line_no);
    FieldRecord r;
    r.label = std::string(trim(cols[0]));
    if (r.label.empty()) throw ParseError("empty label", line_no);
    r.degree = parse_int<int>(cols[1], "degree", line_no);
    r.discriminant = parse_int<std::int64_t>(cols[2], "discriminant", line_no);
    for (auto c : split(cols[3], ',')) r.poly.push_back(parse_int<long long>(c, "coefficient", line_no));
    r.galois_label = std::string(trim(cols[4]));
    if (!is_missing(cols[5])) r.class_number = parse_int<std::int64_t>(cols[5], "class number", line_no);
    if (!is_missing(cols[6])) r.regulator = parse_real(cols[6], "regulator", line_no);
    const auto sig = split(cols[7], ',');
    if (sig.size() != 2) throw ParseError("signature must be r1,r2", line_no);
    r.r1 = parse_int<int>(sig[0], "r1", line_no);
    r.r2 = parse_int<int>(sig[1], "r2", line_no);
    if (cols.size() == 9 && !trim(cols[8]).empty()) {
        for (auto entry : split(trim(cols[8]), ';')) {
            const auto colon = entry.find(':');
            if (colon == std::string_view::npos) throw ParseError("local factor needs p:f,...", line_no);
            LocalFactor lf;
            lf.p = parse_int<std::uint32_t>(entry.substr(0, colon), "prime", line_no);
            for (auto f : split(entry.substr(colon + 1), ','))
                lf.residue_degrees.push_back(parse_int<int>(f, "residue degree", line_no));
            r.local_factors.push_back(std::move(lf));
        }
    }
    return r;
}

std::string format_record(const FieldRecord& r) {
    std::ostringstream out;
    out.precision(17);
    out << r.label << '\t' << r.degree << '\t' << r.discriminant << '\t';
    for (std::size_t i = 0; i < r.poly.size(); ++i) out << (i ? "," : "") << r.poly[i];
    out << '\t' << r.galois_label << '\t';
    if (r.class_number) out << *r.class_number; else out << '-';
    out << '\t';
    if (r.regulator) out << *r.regulator; else out << '-';
    out << '\t' << r.r1 << ',' << r.r2 << '\t';
    for (std::size_t i = 0; i < r.local_factors.size(); ++i) {
        const auto& lf = r.local_factors[i];
        out << (i ? ";" : "") << lf.p << ':';
        for (std::size_t j = 0; j < lf.residue_degrees.size(); ++j) out << (j ? "," : "") << lf.residue_degrees[j];
    }
    return out.str();
}

void validate(const FieldRecord& r) {
    auto fail = [&](const std::string& why) { throw DataError(r.label + ": " + why); };
    if (r.degree < 1) fail("degree must be positive");
    if (r.discriminant <= 0) fail("discriminant must be positive");
    if (r.discriminant < minimal_discriminant(r.degree))
        fail("discriminant " + std::to_string(r.discriminant) + " below the degree-" + std::to_string(r.degree) +
             " minimum " + std::to_string(minimal_discriminant(r.degree)));
    if (poly::degree(r.poly) != r.degree || !poly::is_monic(r.poly)) fail("polynomial must be monic of the field degree");
    if (r.r1 != r.degree || r.r2 != 0) fail("signature is not totally real");

    const poly::BigInt disc = poly::discriminant(r.poly);
    if (disc <= 0) fail("polynomial discriminant is not positive");
    if (disc % r.discriminant != 0) fail("field discriminant does not divide disc(poly)");
    const poly::BigInt index_sq = disc / r.discriminant;
    const poly::BigInt root = boost::multiprecision::sqrt(index_sq);
    if (root * root != index_sq) fail("disc(poly) / d_F is not a square");
    if (poly::real_root_count(r.poly) != r.degree) fail("polynomial does not have " + std::to_string(r.degree) + " real roots");

    if (r.degree <= 5) {
        const perm::TransitiveGroup* group = nullptr;
        for (const auto& g : perm::transitive_catalog())
            if (g.label == r.galois_label && g.degree == r.degree) group = &g;
        if (!group) fail("unknown Galois label '" + r.galois_label + "' for degree " + std::to_string(r.degree));
        if (factorial(r.degree) % group->order != 0) fail("Galois group order does not divide d!");
    } else if (r.galois_label.find('T') == std::string::npos) {
        fail("Galois label '" + r.galois_label + "' is not of the form dTn");
    }

    if (r.degree >= 3 && (!r.class_number || !r.regulator)) fail("incomplete record (class number or regulator missing)");
    if (r.class_number && *r.class_number < 1) fail("class number must be positive");
    if (r.regulator && !(*r.regulator > 0.0)) fail("regulator must be positive");
    for (const auto& lf : r.local_factors) {
        int total = 0;
        for (int f : lf.residue_degrees) {
            if (f < 1) fail("residue degree must be positive");
            total += f;
        }
        if (lf.p < 2 || total > r.degree) fail("inconsistent local factor at p = " + std::to_string(lf.p));
    }
}

Catalog parse(std::istream& in, int degree, const std::optional<std::string>& group, std::string source) {
    Catalog cat;
    cat.degree = degree;
    cat.source = std::move(source);
    if (group) cat.group_filter = resolve_group(*group, degree);
    std::string line;
    std::size_t line_no = 0;
    bool first_comment = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty()) continue;
        if (view.front() == '#') {
            if (first_comment && cat.source.empty()) cat.source = std::string(trim(view.substr(1)));
            first_comment = false;
            continue;
        }
        FieldRecord r = parse_record(view, line_no);
        if (r.degree != degree)
            throw DataError(r.label + ": degree " + std::to_string(r.degree) + " in a degree-" +
                            std::to_string(degree) + " catalog (line " + std::to_string(line_no) + ")");
        validate(r);
        if (cat.group_filter && r.galois_label != *cat.group_filter) continue;
        cat.records.push_back(std::move(r));
    }
    sort_and_check(cat);
    return cat;
}

Catalog load(const std::filesystem::path& path, int degree, const std::optional<std::string>& group) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open catalog " + path.string());
    Catalog cat = parse(in, degree, group);
    if (cat.source.empty()) cat.source = path.string();
    return cat;
}

void save(const Catalog& catalog, const std::filesystem::path& path) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw DataError("cannot write " + tmp);
        out << "# " << catalog.source << '\n';
        for (const auto& r : catalog.records) out << format_record(r) << '\n';
        if (!out) throw DataError("write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

Catalog merge(const Catalog& a, const Catalog& b) {
    if (a.degree != b.degree) throw DataError("cannot merge catalogs of different degrees");
    Catalog out;
    out.degree = a.degree;
    out.source = a.source == b.source ? a.source : a.source + " + " + b.source;
    if (a.group_filter == b.group_filter) out.group_filter = a.group_filter;
    std::map<std::string, FieldRecord> by_label;
    for (const auto* cat : {&a, &b})
        for (const auto& r : cat->records) {
            auto [it, inserted] = by_label.emplace(r.label, r);
            if (!inserted && !(it->second == r)) throw DataError("conflicting records for label " + r.label);
        }
    for (auto& [label, r] : by_label) out.records.push_back(std::move(r));
    sort_and_check(out);
    return out;
}

Catalog truncate(const Catalog& catalog, std::int64_t max_disc) {
    Catalog out = catalog;
    std::erase_if(out.records, [&](const FieldRecord& r) { return r.discriminant > max_disc; });
    return out;
}

Catalog synthesize_quadratic(std::int64_t max_disc) {
    Catalog cat;
    cat.degree = 2;
    cat.group_filter = "2T1";
    cat.source = "real quadratic fields with D <= " + std::to_string(max_disc) + ", synthesized";
    for (long long disc : arith::positive_fundamental_discriminants(max_disc)) {
        const auto inv = quadratic::invariants(disc);
        FieldRecord r;
        r.label = "2.2." + std::to_string(disc) + ".1";
        r.degree = 2;
        r.discriminant = disc;
        r.poly = disc % 4 == 0 ? poly::IntPoly{-disc / 4, 0, 1} : poly::IntPoly{-(disc - 1) / 4, -1, 1};
        r.galois_label = "2T1";
        r.class_number = inv.class_number;
        r.regulator = inv.regulator;
        r.r1 = 2;
        cat.records.push_back(std::move(r));
    }
    return cat;
}

RemoteOptions default_remote_options() {
    RemoteOptions options;
    if (const char* dir = std::getenv("CMWEYL_CACHE_DIR"); dir && *dir) options.cache_dir = dir;
    return options;
}

Catalog parse_remote_payload(std::string_view body, int degree, std::int64_t max_disc, std::string source) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON payload: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("records") || !doc["records"].is_array())
        throw ParseError("payload lacks a \"records\" array");
    Catalog cat;
    cat.degree = degree;
    cat.source = std::move(source);
    std::size_t index = 0;
    for (const auto& item : doc["records"]) {
        ++index;
        try {
            FieldRecord r;
            r.label = item.at("label").get<std::string>();
            r.degree = item.at("degree").get<int>();
            r.discriminant = item.at("disc").get<std::int64_t>();
            r.poly = item.at("poly").get<std::vector<long long>>();
            r.galois_label = item.at("galois").get<std::string>();
            if (item.contains("class_number") && !item["class_number"].is_null())
                r.class_number = item["class_number"].get<std::int64_t>();
            if (item.contains("regulator") && !item["regulator"].is_null())
                r.regulator = item["regulator"].get<double>();
            const auto sig = item.at("signature").get<std::vector<int>>();
            if (sig.size() != 2) throw ParseError("signature must have two entries");
            r.r1 = sig[0];
            r.r2 = sig[1];
            if (item.contains("local"))
                for (const auto& lf : item["local"])
                    r.local_factors.push_back({lf.at("p").get<std::uint32_t>(), lf.at("degrees").get<std::vector<int>>()});
            if (r.degree != degree)
                throw DataError(r.label + ": degree " + std::to_string(r.degree) + " in a degree-" + std::to_string(degree) + " request");
            if (r.r2 != 0 || r.discriminant > max_disc) continue;
            validate(r);
            cat.records.push_back(std::move(r));
        } catch (const json::exception& e) {
            throw ParseError("record " + std::to_string(index) + ": " + e.what());
        }
    }
    sort_and_check(cat);
    return cat;
}

Catalog fetch_remote(const std::string& base_url, int degree, std::int64_t max_disc, const RemoteOptions& options) {
    std::filesystem::path cache_file;
    if (!options.cache_dir.empty()) {
        cache_file = options.cache_dir / ("fields-d" + std::to_string(degree) + "-max" + std::to_string(max_disc) + ".tsv");
        if (std::filesystem::exists(cache_file)) return load(cache_file, degree);
    }
    if (max_disc < minimal_discriminant(degree)) {
        Catalog empty;
        empty.degree = degree;
        empty.source = base_url;
        return empty;
    }

    const auto scheme_end = base_url.find("://");
    const auto path_start = base_url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    const std::string host = base_url.substr(0, path_start);
    std::string prefix = path_start == std::string::npos ? "" : base_url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    const std::string path = prefix + "/fields";

    httplib::Client client(host);
    client.set_connection_timeout(options.timeout);
    client.set_read_timeout(options.timeout);
    const httplib::Params params{{"degree", std::to_string(degree)},
                                 {"disc_min", "1"},
                                 {"disc_max", std::to_string(max_disc)}};
    const int attempts = std::max(1, options.max_attempts);
    std::string last_error = "no attempt made";
    for (int attempt = 1; attempt <= attempts; ++attempt) {
        if (attempt > 1) std::this_thread::sleep_for(options.backoff * (1 << (attempt - 2)));
        auto res = client.Get(path, params, httplib::Headers{});
        if (!res) {
            last_error = "request to " + base_url + " failed: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 500) {
            last_error = "server error " + std::to_string(res->status) + " from " + base_url;
            continue;
        }
        if (res->status != 200)
            throw TransportError("HTTP " + std::to_string(res->status) + " from " + base_url, attempt);
        Catalog cat = parse_remote_payload(res->body, degree, max_disc,
                                           base_url + " degree " + std::to_string(degree) + " disc <= " +
                                               std::to_string(max_disc));
        if (!cache_file.empty()) {
            std::filesystem::create_directories(options.cache_dir);
            save(cat, cache_file);
        }
        return cat;
    }
    throw TransportError(last_error, attempts);
}

}  // namespace cmweyl::catalog
