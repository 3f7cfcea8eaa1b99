#include <cmweyl/exponent.hpp>
#include <cmweyl/error.hpp>
#include <cmweyl/perm.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cmweyl::exponent {

namespace {

using boost::multiprecision::cpp_int;

const Rational kHalf(1, 2);

bool parse_integer(std::string_view s, cpp_int& out) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    out = cpp_int(std::string(s.substr(s[0] == '+' ? 1 : 0)));
    return true;
}

int smallest_prime_factor(std::uint64_t n) {
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return static_cast<int>(p);
    return static_cast<int>(n);
}

bool is_prime_power(std::uint64_t n) {
    if (n < 2) return false;
    const std::uint64_t p = static_cast<std::uint64_t>(smallest_prime_factor(n));
    while (n % p == 0) n /= p;
    return n == 1;
}

bool is_prime(int n) { return n >= 2 && smallest_prime_factor(static_cast<std::uint64_t>(n)) == n; }

MalleBound general_row(Rational m, std::string rule, std::string source) {
    return MalleBound{std::move(m), std::move(rule), std::move(source), std::nullopt};
}

MalleBound torsion_row(const TorsionRangeRow& row) {
    return MalleBound{row.malle, row.label + " (" + row.name + ")", "Dummit 2017", row.delta_bound};
}

void sort_bounds(std::vector<MalleBound>& bounds) {
    std::stable_sort(bounds.begin(), bounds.end(),
                     [](const MalleBound& a, const MalleBound& b) { return a.malle < b.malle; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    cpp_int num, den = 1;
    const bool ok = slash == std::string_view::npos
                        ? parse_integer(text, num)
                        : parse_integer(text.substr(0, slash), num) && parse_integer(text.substr(slash + 1), den) &&
                              text[slash + 1] != '-' && text[slash + 1] != '+';
    if (!ok) throw ParseError("not a rational: '" + std::string(text) + "'");
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& r) {
    std::ostringstream out;
    out << r.numerator();
    if (r.denominator() != 1) out << '/' << r.denominator();
    return out.str();
}

double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

bool ExponentInput::hypothesis_ok() const { return delta + malle < 2; }

void require_valid(const ExponentInput& in) {
    if (in.d < 1) throw DataError("degree must be at least 1");
    if (in.delta < 0 || in.delta > kHalf) throw DataError("torsion exponent " + to_string(in.delta) + " outside [0, 1/2]");
    if (in.subconvex < 0 || in.subconvex > kHalf)
        throw DataError("subconvexity exponent " + to_string(in.subconvex) + " outside [0, 1/2]");
    if (in.malle <= 0) throw DataError("field-count exponent must be positive");
    if (!in.hypothesis_ok())
        throw DataError("hypothesis fails: delta + M = " + to_string(in.delta + in.malle) + " is not below 2");
}

Rational c1(const ExponentInput& in) {
    require_valid(in);
    const Rational s = in.delta + in.malle;
    return s <= 1 ? kHalf : 1 - s / 2;
}

Rational alpha(const ExponentInput& in) {
    require_valid(in);
    return std::max((in.delta + in.subconvex + in.malle) / (in.subconvex + 2), in.malle / 2);
}

Rational beta(const ExponentInput& in) {
    const Rational a = alpha(in);
    return 1 - (1 - a) / (1 + in.d * in.subconvex * (1 - a));
}

const GroupExponents& ExponentSet::binding() const {
    for (const auto& g : groups)
        if (g.group == binding_group) return g;
    throw DataError("exponent set has no group " + binding_group);
}

ExponentSet c2_c3(const std::vector<std::pair<std::string, ExponentInput>>& inputs) {
    if (inputs.empty()) throw DataError("exponent set needs at least one group");
    ExponentSet out;
    out.d = inputs.front().second.d;
    for (const auto& [name, in] : inputs) {
        if (in.d != out.d) throw DataError("group " + name + " has degree " + std::to_string(in.d) + ", expected " +
                                           std::to_string(out.d));
        try {
            require_valid(in);
        } catch (const DataError& e) {
            throw DataError("group " + name + ": " + e.what());
        }
        GroupExponents g;
        g.group = name;
        g.input = in;
        g.c1 = c1(in);
        g.alpha = alpha(in);
        g.beta = beta(in);
        g.c2 = std::min(g.c1, 1 - g.beta);
        out.groups.push_back(std::move(g));
    }
    out.beta_max = out.groups.front().beta;
    for (const auto& g : out.groups) out.beta_max = std::max(out.beta_max, g.beta);
    out.c3 = out.groups.front().c2;
    out.binding_group = out.groups.front().group;
    for (auto& g : out.groups) {
        g.c2_uniform = std::min(g.c1, 1 - out.beta_max);
        if (g.c2 < out.c3) {
            out.c3 = g.c2;
            out.binding_group = g.group;
        }
    }
    const GroupExponents& b = out.binding();
    std::ostringstream prov;
    prov << "C3 from " << b.group << " (delta=" << to_string(b.input.delta) << ", M=" << to_string(b.input.malle)
         << ", delta'=" << to_string(b.input.subconvex) << "); C2 uses per-group beta, beta_max over "
         << out.groups.size() << " group(s)";
    out.provenance = prov.str();
    return out;
}

std::vector<MalleBound> general_bounds(const GroupTraits& t) {
    std::vector<MalleBound> out;
    const int d = t.degree;
    if (t.abelian && t.order > 1) {
        const int l = smallest_prime_factor(t.order);
        out.push_back(general_row(Rational(cpp_int(l), cpp_int(t.order) * (l - 1)), "abelian", "Maki 1985"));
    }
    if (t.dihedral_prime && *t.dihedral_prime == d && is_prime(d) && d >= 3) {
        const int l = d;
        out.push_back(general_row(Rational(3, l - 1) - Rational(1, l * (l - 1)), "dihedral of prime degree",
                                  "Kluners 2006; Cohen-Thorne 2017"));
    }
    if (is_prime_power(t.order)) out.push_back(general_row(Rational(1), "p-group", "Kluners-Malle 2004"));
    if (d >= 5 && t.order == static_cast<std::uint64_t>(d))
        out.push_back(general_row(Rational(3, 8), "regular (|G| = d)", "Ellenberg-Venkatesh 2006"));
    if (d == 3) out.push_back(general_row(Rational(1), "degree 3", "Davenport-Heilbronn 1971"));
    if (d == 4) out.push_back(general_row(Rational(1), "degree 4", "Cohen-Diaz y Diaz-Olivier 2002; Bhargava 2005"));
    if (d == 5) out.push_back(general_row(Rational(1), "degree 5", "Bhargava 2010"));
    if (t.s3_times_abelian && d == 3 * *t.s3_times_abelian)
        out.push_back(general_row(Rational(1, *t.s3_times_abelian), "S3 x abelian", "Wang 2017"));
    if (t.s4_times_abelian && d == 4 * *t.s4_times_abelian)
        out.push_back(general_row(Rational(1, *t.s4_times_abelian), "S4 x abelian", "Wang 2017"));
    sort_bounds(out);
    return out;
}

const std::vector<TorsionRangeRow>& torsion_range_table() {
    static const std::vector<TorsionRangeRow> rows = {
        {"6T5", 18, "F18", Rational(7, 4), Rational(1, 4)},
        {"6T12", 60, "A5", Rational(8, 5), Rational(2, 5)},
        {"6T14", 120, "S5", Rational(19, 10), Rational(1, 10)},
        {"6T15", 360, "A6", Rational(19, 10), Rational(1, 10)},
        {"7T2", 14, "D7", Rational(19, 12), Rational(5, 12)},
        {"7T3", 21, "F21", Rational(7, 4), Rational(1, 4)},
        {"7T5", 168, "PSL(2,7)", Rational(11, 6), Rational(1, 6)},
        {"8T25", 56, "F56", Rational(27, 14), Rational(1, 14)},
    };
    return rows;
}

std::vector<MalleBound> table_lookup_all(int d, std::string_view group) {
    if (d < 1) throw DataError("degree must be at least 1");
    std::vector<MalleBound> out;
    if (d <= 5) {
        const perm::TransitiveGroup& g = perm::find_transitive(group, d);
        if (g.degree != d)
            throw DataError(std::string(group) + " has degree " + std::to_string(g.degree) + ", not " + std::to_string(d));
        GroupTraits t;
        t.degree = d;
        t.order = g.order;
        t.abelian = perm::is_abelian(g.group());
        // On l points D_l has order 2l; for l = 3 that is S3.
        if (is_prime(d) && d >= 3 && g.order == static_cast<std::uint64_t>(2 * d)) t.dihedral_prime = d;
        if (d == 3 && g.order == 6) t.s3_times_abelian = 1;
        if (d == 4 && g.order == 24) t.s4_times_abelian = 1;
        out = general_bounds(t);
    } else {
        const std::string name(group);
        const std::string ds = std::to_string(d);
        GroupTraits t;
        t.degree = d;
        if (name == ds + "T1" || name == "C" + ds) {
            t.order = static_cast<std::uint64_t>(d);
            t.abelian = true;
        } else if (is_prime(d) && (name == ds + "T2" || name == "D" + ds)) {
            t.order = static_cast<std::uint64_t>(2 * d);
            t.dihedral_prime = d;
        }
        if (t.order) out = general_bounds(t);
        for (const auto& row : torsion_range_table())
            if (row.label.rfind(ds + "T", 0) == 0 && (row.label == name || row.name == name))
                out.push_back(torsion_row(row));
        sort_bounds(out);
    }
    if (out.empty()) throw DataError("no known field-count bound for (" + std::to_string(d) + ", " + std::string(group) + ")");
    return out;
}

MalleBound table_lookup(int d, std::string_view group) { return table_lookup_all(d, group).front(); }

}  // namespace cmweyl::exponent
