#include "cli.hpp"

#include "report_io.hpp"
#include "verify.hpp"

#include <cmweyl/catalog.hpp>
#include <cmweyl/cm.hpp>
#include <cmweyl/error.hpp>
#include <cmweyl/exponent.hpp>
#include <cmweyl/perm.hpp>
#include <cmweyl/residue.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

namespace cmweyl::cli {

namespace {

namespace fs = std::filesystem;

std::string format_g(double v, int digits = 7) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// Rows rendered as an aligned text table, CSV, or handed back for JSON.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void print(std::ostream& out, const std::string& emit) const {
        if (emit == "csv") {
            auto line = [&](const std::vector<std::string>& cells) {
                for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
                out << '\n';
            };
            line(header);
            for (const auto& r : rows) line(r);
            return;
        }
        std::vector<std::size_t> width(header.size());
        for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
        for (const auto& r : rows)
            for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                out << (i ? "  " : "") << cells[i];
                if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size(), ' ');
            }
            out << '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
    }
};

struct Globals {
    std::string emit = "table";
    std::string data_dir;
    unsigned threads = 0;
    std::uint64_t seed = 1;
    std::vector<std::string> argv;
    std::string command;

    fs::path data_path() const {
        if (!data_dir.empty()) return data_dir;
        if (const char* env = std::getenv("CMWEYL_DATA_DIR"); env && *env) return env;
        return CMWEYL_DATA_DIR;
    }

    json config() const {
        return {{"command", command}, {"argv", argv}, {"emit", emit}, {"threads", threads}, {"seed", seed}};
    }
};

void emit_json(std::ostream& out, const Globals& g, json body) {
    json doc = {{"config", g.config()}};
    for (auto& [k, v] : body.items()) doc[k] = std::move(v);
    out << doc.dump(2) << '\n';
}

std::string group_name(int degree, const std::string& label) {
    for (const auto& g : perm::transitive_groups(degree))
        if (g.label == label) return g.name;
    return label;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// ---- field sources --------------------------------------------------------

struct SourceOptions {
    int degree = 0;
    std::string catalog_path;
    std::int64_t synth = 0;
    std::string fetch_url;
    std::int64_t max_disc = 0;
};

void add_source_options(CLI::App* app, SourceOptions& s) {
    app->add_option("--degree", s.degree, "Field degree")->required()->check(CLI::Range(1, 5));
    app->add_option("--catalog", s.catalog_path, "Catalog file (tab separated)");
    app->add_option("--synth", s.synth, "Synthesize all real quadratic fields with D <= N (degree 2)");
    app->add_option("--fetch", s.fetch_url, "Field database base URL");
    app->add_option("--max-disc", s.max_disc, "Discriminant bound");
}

catalog::Catalog load_source(const SourceOptions& s, const Globals& g) {
    const int chosen = !s.catalog_path.empty() + (s.synth > 0) + !s.fetch_url.empty();
    if (chosen > 1) throw DataError("give at most one of --catalog, --synth, --fetch");
    catalog::Catalog cat;
    if (s.synth > 0) {
        if (s.degree != 2) throw DataError("--synth builds real quadratic fields; it needs --degree 2");
        cat = catalog::synthesize_quadratic(s.synth);
    } else if (!s.fetch_url.empty()) {
        if (s.max_disc <= 0) throw DataError("--fetch needs --max-disc");
        cat = catalog::fetch_remote(s.fetch_url, s.degree, s.max_disc);
    } else if (!s.catalog_path.empty()) {
        cat = catalog::load(s.catalog_path, s.degree);
    } else {
        const fs::path bundled = g.data_path() / "fields" / ("degree" + std::to_string(s.degree) + ".tsv");
        if (!fs::exists(bundled))
            throw DataError("no bundled catalog for degree " + std::to_string(s.degree) +
                            (s.degree == 2 ? "; use --synth N" : "; use --catalog PATH"));
        cat = catalog::load(bundled, s.degree);
    }
    if (s.max_disc > 0) cat = catalog::truncate(cat, s.max_disc);
    return cat;
}

// The catalog split by Galois label, in dTn order.
std::vector<catalog::Catalog> split_by_group(const catalog::Catalog& cat, const std::string& only) {
    std::string only_label;
    if (!only.empty()) only_label = perm::find_transitive(only, cat.degree).label;
    std::vector<catalog::Catalog> out;
    for (const auto& tg : perm::transitive_groups(cat.degree)) {
        if (!only_label.empty() && tg.label != only_label) continue;
        catalog::Catalog part;
        part.degree = cat.degree;
        part.source = cat.source;
        part.group_filter = tg.label;
        for (const auto& r : cat.records)
            if (r.galois_label == tg.label) part.records.push_back(r);
        if (!part.records.empty()) out.push_back(std::move(part));
    }
    if (out.empty())
        throw DataError("catalog has no fields" + (only.empty() ? std::string() : " with group " + only));
    return out;
}

// ---- residues and proportions --------------------------------------------

struct ResidueCommand {
    SourceOptions source;
    std::string group;
    double tol = 1e-3;
    std::uint32_t prime_cap = 20'000'000;
    std::string from_json;
    bool per_field = false;
};

std::vector<residue::ResidueReport> compute_residues(const ResidueCommand& c, const Globals& g) {
    if (!c.from_json.empty()) {
        std::vector<residue::ResidueReport> reports;
        const json doc = read_json_file(c.from_json);
        if (!doc.contains("reports")) throw ParseError(c.from_json + ": no \"reports\" array");
        for (const auto& r : doc.at("reports")) reports.push_back(residue_report_from_json(r));
        return reports;
    }
    const catalog::Catalog cat = load_source(c.source, g);
    residue::SumOptions opts;
    opts.tol = c.tol;
    opts.threads = g.threads;
    opts.zeta.prime_cap = c.prime_cap;
    std::vector<residue::ResidueReport> reports;
    for (const auto& part : split_by_group(cat, c.group)) reports.push_back(residue::residue_partial_sum(part, opts));
    if (reports.size() > 1) residue::proportions(reports);
    return reports;
}

void print_residues(const std::vector<residue::ResidueReport>& reports, const ResidueCommand& c, const Globals& g,
                    std::ostream& out, bool proportions_only) {
    if (g.emit == "json") {
        json arr = json::array();
        for (const auto& r : reports) {
            json j = to_json(r);
            if (!c.per_field && proportions_only) j.erase("per_field");
            arr.push_back(std::move(j));
        }
        emit_json(out, g, {{"reports", std::move(arr)}});
        return;
    }
    Table t;
    if (proportions_only) {
        t.header = {"group", "residue", "proportion"};
    } else if (g.emit == "csv") {
        t.header = {"group", "n_fields", "min_disc", "residue", "proportion"};
    } else {
        t.header = {"group", "label", "n_fields", "min_disc", "max_disc", "residue", "error_bound", "tail_estimate",
                    "proportion"};
    }
    auto add = [&](const std::string& name, const std::string& label, std::size_t n, std::int64_t lo, std::int64_t hi,
                   double sum, double err, double tail, const std::string& prop) {
        if (proportions_only) {
            t.rows.push_back({name, format_g(sum, 4), prop});
        } else if (g.emit == "csv") {
            t.rows.push_back({name, std::to_string(n), std::to_string(lo), format_g(sum, 7), prop});
        } else {
            t.rows.push_back({name, label, std::to_string(n), std::to_string(lo), std::to_string(hi), format_g(sum, 7),
                              format_g(err, 2), format_g(tail, 2), prop});
        }
    };
    if (reports.size() > 1) {
        std::size_t n = 0;
        std::int64_t lo = reports.front().min_disc, hi = 0;
        double sum = 0, err = 0, tail = 0;
        for (const auto& r : reports) {
            n += r.n_fields;
            lo = std::min(lo, r.min_disc);
            hi = std::max(hi, r.max_disc);
            sum += r.partial_sum;
            err += r.error_bound;
            tail += r.tail_estimate;
        }
        add("all", "", n, lo, hi, sum, err, tail, "-");
    }
    for (const auto& r : reports)
        add(group_name(r.degree, r.group), r.group, r.n_fields, r.min_disc, r.max_disc, r.partial_sum, r.error_bound,
            r.tail_estimate, r.proportion ? format_g(*r.proportion, 4) : "-");
    t.print(out, g.emit);
    if (c.per_field && !reports.empty()) {
        Table f{{"label", "disc", "contribution", "error_bound"}, {}};
        for (const auto& r : reports)
            for (const auto& x : r.per_field)
                f.rows.push_back({x.label, std::to_string(x.discriminant), format_g(x.value, 10), format_g(x.error_bound, 2)});
        out << '\n';
        f.print(out, g.emit);
    }
}

// ---- catalog --------------------------------------------------------------

struct CatalogCommand {
    SourceOptions source;
    std::string group;
    std::string output;
    bool records = false;
};

int run_catalog(const CatalogCommand& c, const std::string& mode, const Globals& g, std::ostream& out) {
    SourceOptions s = c.source;
    if (mode == "synth" && s.synth <= 0) {
        if (s.max_disc <= 0) throw DataError("catalog synth needs --max-disc");
        s.synth = s.max_disc;
    }
    if (mode == "fetch" && s.fetch_url.empty()) throw DataError("catalog fetch needs --fetch URL");
    catalog::Catalog cat = load_source(s, g);
    if (!c.group.empty()) {
        auto parts = split_by_group(cat, c.group);
        cat = std::move(parts.front());
    }
    if (!c.output.empty()) catalog::save(cat, c.output);

    std::map<std::string, std::vector<const FieldRecord*>> by_group;
    for (const auto& r : cat.records) by_group[r.galois_label].push_back(&r);
    if (g.emit == "json") {
        json groups = json::array();
        for (const auto& [label, rs] : by_group)
            groups.push_back({{"group", group_name(cat.degree, label)}, {"label", label}, {"n_fields", rs.size()},
                              {"min_disc", rs.front()->discriminant}, {"max_disc", rs.back()->discriminant}});
        json body = {{"source", cat.source}, {"degree", cat.degree}, {"n_fields", cat.records.size()},
                     {"groups", std::move(groups)}};
        if (c.records) {
            json recs = json::array();
            for (const auto& r : cat.records) recs.push_back(to_json(r));
            body["records"] = std::move(recs);
        }
        emit_json(out, g, std::move(body));
        return kSuccess;
    }
    if (c.records) {
        for (const auto& r : cat.records) out << catalog::format_record(r) << '\n';
        return kSuccess;
    }
    Table t{{"group", "label", "n_fields", "min_disc", "max_disc"}, {}};
    for (const auto& [label, rs] : by_group)
        t.rows.push_back({group_name(cat.degree, label), label, std::to_string(rs.size()),
                          std::to_string(rs.front()->discriminant), std::to_string(rs.back()->discriminant)});
    if (g.emit != "csv") out << "# " << cat.source << '\n';
    t.print(out, g.emit);
    return kSuccess;
}

// ---- CM fields ------------------------------------------------------------

struct CountCommand {
    std::int64_t x = 0;
    bool per_d = false;
    bool records = false;
    std::vector<std::int64_t> checkpoints;
    std::string from_json;
};

int run_count(const CountCommand& c, const Globals& g, std::ostream& out) {
    cm::CountReport report;
    std::vector<cm::CMFieldRecord> records;
    if (!c.from_json.empty()) {
        const json doc = read_json_file(c.from_json);
        if (!doc.contains("report")) throw ParseError(c.from_json + ": no \"report\" object");
        report = count_report_from_json(doc.at("report"));
    } else {
        if (c.x < 125) throw DataError("--x must be at least 125, the smallest quartic CM discriminant");
        records = cm::enumerate_all(c.x, g.threads);
        cm::CountOptions opts;
        opts.threads = g.threads;
        opts.checkpoints = c.checkpoints;
        report = cm::count_records(records, c.x, opts);
    }
    std::map<long long, std::array<std::int64_t, 3>> per_d;  // n_cm, weyl, not Weyl
    for (const auto& r : records) {
        auto& row = per_d[r.base_D];
        ++row[0];
        ++row[r.weyl ? 1 : 2];
    }
    if (g.emit == "json") {
        json body = {{"report", to_json(report)}};
        if (c.per_d) {
            json rows = json::array();
            for (const auto& [d, row] : per_d)
                rows.push_back({{"D", d}, {"n_cm", row[0]}, {"n_weyl", row[1]}, {"n_not_weyl", row[2]}});
            body["per_d"] = std::move(rows);
        }
        if (c.records) {
            json rows = json::array();
            for (const auto& r : records) rows.push_back(to_json(r));
            body["records"] = std::move(rows);
        }
        emit_json(out, g, std::move(body));
        return kSuccess;
    }
    Table t{{"X", "n_cm", "n_weyl", "n_not_weyl", "C4", "V4", "D4", "iso_classes", "weyl_ratio", "slope_not_weyl"}, {}};
    t.rows.push_back({std::to_string(report.X), std::to_string(report.n_cm), std::to_string(report.n_weyl),
                      std::to_string(report.n_not_weyl), std::to_string(report.n_c4), std::to_string(report.n_v4),
                      std::to_string(report.n_d4), std::to_string(report.n_isomorphism_classes),
                      format_g(report.ratio_weyl, 5), format_g(report.slope_fit, 4)});
    t.print(out, g.emit);
    if (g.emit == "table") {
        out << "checkpoints (X: n_not_weyl):";
        for (const auto& [x, n] : report.checkpoints) out << ' ' << x << ':' << n;
        out << '\n';
    }
    if (c.per_d) {
        Table d{{"D", "n_cm", "n_weyl", "n_not_weyl"}, {}};
        for (const auto& [disc, row] : per_d)
            d.rows.push_back({std::to_string(disc), std::to_string(row[0]), std::to_string(row[1]), std::to_string(row[2])});
        out << '\n';
        d.print(out, g.emit);
    }
    if (c.records) {
        Table r{{"abs_disc", "D", "a", "b", "rel_norm", "type"}, {}};
        for (const auto& rec : records) {
            const auto j = to_json(rec);
            r.rows.push_back({std::to_string(rec.abs_disc), std::to_string(rec.base_D), j["alpha"][0].get<std::string>(),
                              j["alpha"][1].get<std::string>(), std::to_string(rec.rel_norm), cm::to_string(rec.galois_type)});
        }
        out << '\n';
        r.print(out, g.emit);
    }
    return kSuccess;
}

int run_classify(long long disc, const std::string& alpha, const Globals& g, std::ostream& out) {
    const auto comma = alpha.find(',');
    if (comma == std::string::npos) throw ParseError("--alpha expects a,b for a + b sqrt(D)");
    const cm::Q a = exponent::parse_rational(alpha.substr(0, comma));
    const cm::Q b = exponent::parse_rational(alpha.substr(comma + 1));
    const cm::CMFieldRecord r = cm::make_record(disc, a, b);
    if (g.emit == "json") {
        emit_json(out, g, {{"record", to_json(r)}});
        return kSuccess;
    }
    const auto j = to_json(r);
    Table t{{"D", "a", "b", "abs_disc", "rel_norm", "type", "weyl"}, {}};
    t.rows.push_back({std::to_string(disc), j["alpha"][0].get<std::string>(), j["alpha"][1].get<std::string>(),
                      std::to_string(r.abs_disc), std::to_string(r.rel_norm), cm::to_string(r.galois_type),
                      r.weyl ? "yes" : "no"});
    t.print(out, g.emit);
    return kSuccess;
}

// ---- groups ---------------------------------------------------------------

int run_group(int degree, const std::string& label, std::vector<std::string> checks, const Globals& g,
              std::ostream& out) {
    const perm::TransitiveGroup& tg = perm::find_transitive(label, degree);
    if (degree && tg.degree != degree)
        throw DataError(label + " has degree " + std::to_string(tg.degree) + ", not " + std::to_string(degree));
    if (checks.empty()) checks = {"order", "abelian", "orbit", "index"};
    const int d = tg.degree;
    const perm::PermGroup group = tg.group();
    const perm::SignedGroup wreath = perm::wreath_c2(group);
    json body = {{"label", tg.label}, {"name", tg.name}, {"degree", d}};
    std::vector<std::string> lines;
    for (const auto& check : checks) {
        if (check == "order") {
            const std::size_t order = wreath.order();
            body["order"] = tg.order;
            body["wreath_order"] = order;
            const bool ok = order == (std::size_t{1} << d) * tg.order;
            lines.push_back("|C2 wr " + tg.label + "| = " + std::to_string(order) + (ok ? " = " : " != ") + "2^" +
                            std::to_string(d) + " * " + std::to_string(tg.order));
        } else if (check == "abelian") {
            const bool base = perm::is_abelian(group), w = perm::is_abelian(wreath);
            body["abelian"] = base;
            body["wreath_abelian"] = w;
            lines.push_back(tg.label + (base ? " is abelian" : " is not abelian") + "; C2 wr " + tg.label +
                            (w ? " is abelian" : " is not abelian"));
        } else if (check == "orbit") {
            const std::size_t orbit = perm::cm_type_orbit(wreath, {d, 0});
            body["orbit_size"] = orbit;
            const bool transitive = orbit == (std::size_t{1} << d);
            lines.push_back("orbit size " + std::to_string(orbit) + (transitive ? " = " : " < ") + "2^" +
                            std::to_string(d) + (transitive ? ": transitive" : ": not transitive"));
        } else if (check == "index") {
            const auto m = perm::min_index_and_a(group);
            body["min_index"] = m.index;
            body["a"] = std::to_string(m.a.numerator()) + (m.a.denominator() == 1 ? "" : "/" + std::to_string(m.a.denominator()));
            lines.push_back("minimal index " + std::to_string(m.index) + ", a(" + tg.label + ") = " +
                            body["a"].get<std::string>());
        } else {
            throw ParseError("unknown --check '" + check + "' (orbit, abelian, order, index)");
        }
    }
    if (g.emit == "json") {
        emit_json(out, g, std::move(body));
    } else {
        for (const auto& l : lines) out << l << '\n';
    }
    return kSuccess;
}

// ---- exponents ------------------------------------------------------------

struct ExponentCommand {
    int d = 0;
    std::string delta = "0", malle, subconvex = "0";
    std::vector<std::string> groups;  // NAME=M
    std::string lookup;
    int sweep = 0;
};

// Randomized check that alpha and beta never decrease and C1, C2 never
// increase when one input grows.
std::pair<int, int> monotonicity_sweep(int d, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(0, 60);
    auto draw = [&](int max_num, int den) { return exponent::Rational(num(rng) % (max_num + 1), den); };
    int checked = 0, violations = 0;
    for (int t = 0; t < trials; ++t) {
        exponent::ExponentInput lo{d, draw(30, 60), draw(60, 40) + exponent::Rational(1, 40), draw(30, 60)};
        if (!lo.hypothesis_ok()) continue;
        for (int which = 0; which < 3; ++which) {
            exponent::ExponentInput hi = lo;
            const exponent::Rational step(1, 120);
            (which == 0 ? hi.delta : which == 1 ? hi.malle : hi.subconvex) += step;
            if (!hi.hypothesis_ok() || hi.delta > exponent::Rational(1, 2) || hi.subconvex > exponent::Rational(1, 2))
                continue;
            ++checked;
            const auto a = exponent::c2_c3({{"G", lo}}).binding();
            const auto b = exponent::c2_c3({{"G", hi}}).binding();
            if (b.alpha < a.alpha || b.beta < a.beta || b.c1 > a.c1 || b.c2 > a.c2 || a.c2 <= exponent::Rational(0))
                ++violations;
        }
    }
    return {checked, violations};
}

int run_exponents(const ExponentCommand& c, const Globals& g, std::ostream& out) {
    using exponent::parse_rational;
    using exponent::to_string;
    if (!c.lookup.empty()) {
        const auto rows = exponent::table_lookup_all(c.d, c.lookup);
        if (g.emit == "json") {
            json arr = json::array();
            for (const auto& r : rows)
                arr.push_back({{"M", to_string(r.malle)}, {"rule", r.rule}, {"source", r.source},
                               {"delta_bound", r.delta_bound ? json(to_string(*r.delta_bound)) : json(nullptr)}});
            emit_json(out, g, {{"d", c.d}, {"group", c.lookup}, {"bounds", std::move(arr)}});
            return kSuccess;
        }
        Table t{{"M", "rule", "source", "delta_bound"}, {}};
        for (const auto& r : rows)
            t.rows.push_back({to_string(r.malle), r.rule, r.source, r.delta_bound ? "< " + to_string(*r.delta_bound) : "-"});
        t.print(out, g.emit);
        return kSuccess;
    }
    if (c.sweep > 0) {
        const auto [checked, violations] = monotonicity_sweep(c.d, c.sweep, g.seed);
        if (g.emit == "json") {
            emit_json(out, g, {{"checked", checked}, {"violations", violations}});
        } else {
            out << "monotonicity sweep (seed " << g.seed << "): " << checked << " comparisons, " << violations
                << " violations\n";
        }
        return violations ? kDataFailure : kSuccess;
    }
    std::vector<std::pair<std::string, exponent::ExponentInput>> inputs;
    const auto delta = parse_rational(c.delta), subconvex = parse_rational(c.subconvex);
    for (const auto& spec : c.groups) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) throw ParseError("--group expects NAME=M, got '" + spec + "'");
        inputs.push_back({spec.substr(0, eq), {c.d, delta, parse_rational(spec.substr(eq + 1)), subconvex}});
    }
    if (inputs.empty()) {
        if (c.malle.empty()) throw ParseError("give --malle M or at least one --group NAME=M");
        inputs.push_back({"G", {c.d, delta, parse_rational(c.malle), subconvex}});
    }
    const auto set = exponent::c2_c3(inputs);
    if (g.emit == "json") {
        emit_json(out, g, to_json(set));
        return kSuccess;
    }
    const auto& b = set.binding();
    Table t{{"quantity", "value"}, {}};
    t.rows = {{"C1", to_string(b.c1)},   {"alpha", to_string(b.alpha)}, {"beta", to_string(b.beta)},
              {"C2", to_string(b.c2)},   {"C3", to_string(set.c3)},     {"beta_max", to_string(set.beta_max)},
              {"binding_group", set.binding_group}};
    t.print(out, g.emit);
    if (g.emit == "table") out << set.provenance << '\n';
    return kSuccess;
}

// ---- verify ---------------------------------------------------------------

int run_verify(const std::vector<int>& only, const Globals& g, std::ostream& out, std::ostream& err) {
    VerifyOptions opts;
    opts.data_dir = g.data_path();
    opts.threads = g.threads;
    opts.only.insert(only.begin(), only.end());
    for (int id : only)
        if (id < 1 || id > 8) throw ParseError("criteria are numbered 1 to 8");
    const auto results = run_acceptance(opts, g.emit == "table" ? &err : nullptr);
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    if (g.emit == "json") {
        json arr = json::array();
        for (const auto& r : results)
            arr.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"seconds", r.seconds}, {"details", r.details}});
        emit_json(out, g, {{"criteria", std::move(arr)}, {"all_passed", all}});
    } else if (g.emit == "csv") {
        Table t{{"criterion", "result", "seconds"}, {}};
        for (const auto& r : results) t.rows.push_back({std::to_string(r.id), r.pass ? "PASS" : "FAIL", format_g(r.seconds, 3)});
        t.print(out, "csv");
    } else {
        print_results(results, out);
    }
    return all ? kSuccess : kAcceptanceFailure;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, int depth);

int run_parsed(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, int depth) {
    CLI::App app{"Arithmetic statistics of CM fields", "cmweyl"};
    app.require_subcommand(1);
    Globals g;
    g.argv = args;
    std::string replay;
    app.add_option("--emit", g.emit, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
    app.add_option("--data-dir", g.data_dir, "Directory holding bundled field snapshots");
    app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
    app.add_option("--seed", g.seed, "Seed for randomized sweeps");
    app.add_option("--replay", replay, "Re-run the command recorded in a JSON output file");
    // Global flags may also follow the subcommand.
    auto globals = [&](CLI::App* sub) {
        sub->add_option("--emit", g.emit, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
        sub->add_option("--data-dir", g.data_dir, "Directory holding bundled field snapshots");
        sub->add_option("--threads", g.threads, "Worker threads (0 = all cores)");
        sub->add_option("--seed", g.seed, "Seed for randomized sweeps");
    };
    app.require_subcommand(0, 1);

    // catalog
    CatalogCommand cat;
    auto* catalog_cmd = app.add_subcommand("catalog", "Load, fetch or synthesize a field catalog");
    catalog_cmd->require_subcommand(1);
    std::string catalog_mode;
    for (const char* mode : {"load", "fetch", "synth"}) {
        auto* sub = catalog_cmd->add_subcommand(mode, std::string(mode) + " a catalog");
        add_source_options(sub, cat.source);
        sub->add_option("--group", cat.group, "Restrict to one Galois group");
        sub->add_option("--output", cat.output, "Write the catalog as TSV");
        sub->add_flag("--records", cat.records, "List every record");
        globals(sub);
        sub->callback([&catalog_mode, mode] { catalog_mode = mode; });
    }

    // residues, proportions
    ResidueCommand res;
    auto* residues_cmd = app.add_subcommand("residues", "Partial sums of the CM residue series");
    auto* proportions_cmd = app.add_subcommand("proportions", "Share of each Galois group in the residue");
    for (auto* sub : {residues_cmd, proportions_cmd}) {
        add_source_options(sub, res.source);
        sub->add_option("--group", res.group, "Galois group (dTn or name); default all");
        sub->add_option("--tol", res.tol, "Absolute tolerance on each zeta_F(2)")->check(CLI::PositiveNumber);
        sub->add_option("--prime-cap", res.prime_cap, "Largest prime in an Euler product");
        sub->add_option("--from-json", res.from_json, "Re-emit reports from an earlier --emit json run");
        sub->add_flag("--per-field", res.per_field, "List each field's contribution");
        globals(sub);
    }

    // count-cm
    CountCommand count;
    auto* count_cmd = app.add_subcommand("count-cm", "Count quartic CM fields up to a discriminant bound");
    count_cmd->add_option("--x", count.x, "Bound on |d_E|");
    count_cmd->add_flag("--per-d", count.per_d, "Break counts down by the real quadratic subfield");
    count_cmd->add_flag("--records", count.records, "List every extension");
    count_cmd->add_option("--checkpoints", count.checkpoints, "Bounds for the growth fit")->delimiter(',');
    count_cmd->add_option("--from-json", count.from_json, "Re-emit a report from an earlier --emit json run");
    globals(count_cmd);

    // classify
    long long classify_disc = 0;
    std::string classify_alpha;
    auto* classify_cmd = app.add_subcommand("classify", "Discriminant and Galois type of Q(sqrt D)(sqrt alpha)");
    classify_cmd->add_option("--disc", classify_disc, "Real quadratic fundamental discriminant D")->required();
    classify_cmd->add_option("--alpha", classify_alpha, "a,b for alpha = a + b sqrt(D), rationals allowed")->required();
    globals(classify_cmd);

    // group
    int group_degree = 0;
    std::string group_label;
    std::vector<std::string> group_checks;
    auto* group_cmd = app.add_subcommand("group", "Wreath product and CM-type checks for a transitive group");
    group_cmd->add_option("--degree", group_degree, "Degree")->check(CLI::Range(1, 5));
    group_cmd->add_option("--label", group_label, "dTn label or name")->required();
    group_cmd->add_option("--check", group_checks, "orbit, abelian, order or index (repeatable)");
    globals(group_cmd);

    // exponents
    ExponentCommand ex;
    auto* exp_cmd = app.add_subcommand("exponents", "Exact error exponents");
    exp_cmd->add_option("--d", ex.d, "Degree")->required()->check(CLI::PositiveNumber);
    exp_cmd->add_option("--delta", ex.delta, "2-torsion exponent, p/q");
    exp_cmd->add_option("--malle", ex.malle, "Field-count exponent M(G), p/q");
    exp_cmd->add_option("--subconvex", ex.subconvex, "Subconvexity exponent, p/q");
    exp_cmd->add_option("--group", ex.groups, "NAME=M, repeatable, for C3 over several groups");
    exp_cmd->add_option("--lookup", ex.lookup, "Print known field-count bounds for a group");
    exp_cmd->add_option("--sweep", ex.sweep, "Randomized monotonicity sweep with this many draws");
    globals(exp_cmd);

    // verify
    std::vector<int> only;
    auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance suite");
    verify_cmd->add_option("--only", only, "Criterion numbers, comma separated")->delimiter(',');
    globals(verify_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kParseFailure;
    }

    if (!replay.empty()) {
        if (depth > 0) throw DataError("replayed configuration asks for another replay");
        const json doc = read_json_file(replay);
        if (!doc.contains("config") || !doc["config"].contains("argv")) throw ParseError(replay + ": no config.argv");
        return dispatch(doc["config"]["argv"].get<std::vector<std::string>>(), out, err, depth + 1);
    }
    if (app.get_subcommands().empty()) {
        err << app.help();
        return kParseFailure;
    }
    CLI::App* sub = app.get_subcommands().front();
    g.command = sub->get_name();

    if (sub == catalog_cmd) return run_catalog(cat, catalog_mode, g, out);
    if (sub == residues_cmd || sub == proportions_cmd) {
        const auto reports = compute_residues(res, g);
        print_residues(reports, res, g, out, sub == proportions_cmd);
        return kSuccess;
    }
    if (sub == count_cmd) {
        if (count.from_json.empty() && count.x == 0) throw ParseError("count-cm needs --x N");
        return run_count(count, g, out);
    }
    if (sub == classify_cmd) return run_classify(classify_disc, classify_alpha, g, out);
    if (sub == group_cmd) return run_group(group_degree, group_label, group_checks, g, out);
    if (sub == exp_cmd) return run_exponents(ex, g, out);
    if (sub == verify_cmd) return run_verify(only, g, out, err);
    return kParseFailure;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, int depth) {
    try {
        return run_parsed(args, out, err, depth);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kDataFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataFailure;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return dispatch(args, out, err, 0);
}

}  // namespace cmweyl::cli
