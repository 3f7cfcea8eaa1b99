#include <cmweyl/perm.hpp>

#include <algorithm>
#include <bit>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>

namespace cmweyl::perm {

namespace {

void check_degree(int degree) {
    if (degree < 1 || degree > kMaxDegree)
        throw DataError("degree " + std::to_string(degree) + " outside [1, " +
                        std::to_string(kMaxDegree) + "]");
}

// Breadth-first closure under right multiplication by generators. For a finite
// group this reaches every element, so inverses need no separate treatment.
template <class Elem>
std::vector<Elem> closure(const std::vector<Elem>& generators, const Elem& identity,
                          std::size_t cap) {
    std::set<Elem> seen{identity};
    std::deque<Elem> frontier{identity};
    while (!frontier.empty()) {
        Elem current = std::move(frontier.front());
        frontier.pop_front();
        for (const Elem& g : generators) {
            Elem next = current * g;
            if (seen.insert(next).second) {
                if (seen.size() > cap)
                    throw SizeLimitError("group closure exceeds " + std::to_string(cap) +
                                         " elements");
                frontier.push_back(std::move(next));
            }
        }
    }
    return {seen.begin(), seen.end()};
}

template <class Elem>
bool generators_commute(const std::vector<Elem>& gens) {
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (gens[i] * gens[j] != gens[j] * gens[i]) return false;
    return true;
}

}  // namespace

Perm::Perm(std::vector<std::uint8_t> images) : images_(std::move(images)) {
    check_degree(degree());
    std::vector<bool> hit(images_.size(), false);
    for (auto v : images_) {
        if (v >= images_.size() || hit[v]) throw DataError("images do not form a permutation");
        hit[v] = true;
    }
}

Perm Perm::identity(int degree) {
    check_degree(degree);
    std::vector<std::uint8_t> images(static_cast<std::size_t>(degree));
    std::iota(images.begin(), images.end(), std::uint8_t{0});
    return Perm(std::move(images));
}

Perm Perm::from_cycles(int degree, std::string_view text) {
    Perm result = identity(degree);
    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_space();
    while (pos < text.size()) {
        if (text[pos] != '(') throw ParseError("expected '(' in cycle notation: " + std::string(text));
        ++pos;
        std::vector<int> cycle;
        for (;;) {
            skip_space();
            if (pos < text.size() && text[pos] == ')') {
                ++pos;
                break;
            }
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (start == pos) throw ParseError("expected point in cycle notation: " + std::string(text));
            int point = std::stoi(std::string(text.substr(start, pos - start)));
            if (point < 1 || point > degree)
                throw ParseError("point " + std::to_string(point) + " outside 1.." +
                                 std::to_string(degree));
            if (std::find(cycle.begin(), cycle.end(), point - 1) != cycle.end())
                throw ParseError("repeated point in cycle: " + std::string(text));
            cycle.push_back(point - 1);
            skip_space();
            if (pos < text.size() && text[pos] == ',') ++pos;
        }
        if (cycle.size() > 1) {
            std::vector<std::uint8_t> images(static_cast<std::size_t>(degree));
            std::iota(images.begin(), images.end(), std::uint8_t{0});
            for (std::size_t i = 0; i < cycle.size(); ++i)
                images[static_cast<std::size_t>(cycle[i])] =
                    static_cast<std::uint8_t>(cycle[(i + 1) % cycle.size()]);
            // Cycles are written left to right and applied right to left, as in GAP.
            result = result * Perm(std::move(images));
        }
        skip_space();
    }
    return result;
}

Perm Perm::operator*(const Perm& rhs) const {
    if (rhs.degree() != degree()) throw DataError("degree mismatch in composition");
    std::vector<std::uint8_t> out(images_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = images_[rhs.images_[i]];
    Perm p;
    p.images_ = std::move(out);
    return p;
}

Perm Perm::inverse() const {
    std::vector<std::uint8_t> out(images_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[images_[i]] = static_cast<std::uint8_t>(i);
    Perm p;
    p.images_ = std::move(out);
    return p;
}

bool Perm::is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != i) return false;
    return true;
}

int Perm::orbit_count() const {
    std::vector<bool> seen(images_.size(), false);
    int orbits = 0;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (seen[i]) continue;
        ++orbits;
        for (std::size_t j = i; !seen[j]; j = images_[j]) seen[j] = true;
    }
    return orbits;
}

std::string Perm::to_cycles() const {
    std::ostringstream out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (seen[i] || images_[i] == i) continue;
        out << '(';
        for (std::size_t j = i; !seen[j]; j = images_[j]) {
            seen[j] = true;
            if (j != i) out << ',';
            out << j + 1;
        }
        out << ')';
    }
    std::string s = out.str();
    return s.empty() ? "()" : s;
}

int malle_index(const Perm& g) { return g.degree() - g.orbit_count(); }

PermGroup::PermGroup(int degree, std::vector<Perm> generators)
    : degree_(degree), generators_(std::move(generators)) {
    check_degree(degree);
    for (const Perm& g : generators_)
        if (g.degree() != degree) throw DataError("generator degree differs from group degree");
}

PermGroup PermGroup::from_cycle_strings(int degree, const std::vector<std::string>& generators) {
    std::vector<Perm> gens;
    gens.reserve(generators.size());
    for (const auto& g : generators) gens.push_back(Perm::from_cycles(degree, g));
    return PermGroup(degree, std::move(gens));
}

std::vector<Perm> PermGroup::elements(std::size_t cap) const {
    return closure(generators_, Perm::identity(degree_), cap);
}

MalleIndex min_index_and_a(const PermGroup& group, std::size_t cap) {
    int best = 0;
    for (const Perm& g : group.elements(cap)) {
        if (g.is_identity()) continue;
        int ind = malle_index(g);
        if (best == 0 || ind < best) best = ind;
    }
    if (best == 0) throw DataError("no non-identity element");
    return {best, Rational(1, best)};
}

bool is_transitive(const PermGroup& group) {
    std::vector<bool> seen(static_cast<std::size_t>(group.degree()), false);
    std::vector<int> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        int p = stack.back();
        stack.pop_back();
        for (const Perm& g : group.generators()) {
            auto q = static_cast<std::size_t>(g[p]);
            if (!seen[q]) {
                seen[q] = true;
                ++reached;
                stack.push_back(static_cast<int>(q));
            }
        }
    }
    return reached == seen.size();
}

bool is_abelian(const PermGroup& group) { return generators_commute(group.generators()); }

std::uint32_t permute_bits(const Perm& s, std::uint32_t y) {
    std::uint32_t out = 0;
    for (int j = 0; j < s.degree(); ++j)
        if (y >> j & 1u) out |= 1u << s[j];
    return out;
}

SignedPerm::SignedPerm(std::uint32_t flips, Perm perm) : flips_(flips), perm_(std::move(perm)) {
    if (degree() < kMaxDegree && (flips_ >> degree()) != 0)
        throw DataError("flip vector longer than the degree");
}

SignedPerm SignedPerm::operator*(const SignedPerm& rhs) const {
    SignedPerm out;
    out.flips_ = flips_ ^ permute_bits(perm_, rhs.flips_);
    out.perm_ = perm_ * rhs.perm_;
    return out;
}

SignedPerm SignedPerm::inverse() const {
    Perm inv = perm_.inverse();
    SignedPerm out;
    out.flips_ = permute_bits(inv, flips_);
    out.perm_ = std::move(inv);
    return out;
}

CMTypeMask SignedPerm::act(const CMTypeMask& phi) const {
    if (phi.degree != degree()) throw DataError("CM type degree differs from group degree");
    return {phi.degree, flips_ ^ permute_bits(perm_, phi.bits)};
}

Perm SignedPerm::to_points() const {
    const int d = degree();
    std::vector<std::uint8_t> images(static_cast<std::size_t>(2 * d));
    for (int i = 0; i < d; ++i) {
        int j = perm_[i];
        int conj = static_cast<int>(flips_ >> j & 1u);
        images[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(j + d * conj);
        images[static_cast<std::size_t>(i + d)] = static_cast<std::uint8_t>(j + d * (1 - conj));
    }
    return Perm(std::move(images));
}

SignedGroup::SignedGroup(int degree, std::vector<SignedPerm> generators)
    : degree_(degree), generators_(std::move(generators)) {
    check_degree(degree);
    for (const auto& g : generators_)
        if (g.degree() != degree) throw DataError("generator degree differs from group degree");
}

std::vector<SignedPerm> SignedGroup::elements(std::size_t cap) const {
    return closure(generators_, SignedPerm::identity(degree_), cap);
}

PermGroup SignedGroup::top() const {
    std::vector<Perm> gens;
    for (const auto& g : generators_) gens.push_back(g.perm());
    return PermGroup(degree_, std::move(gens));
}

SignedGroup wreath_c2(const PermGroup& group, std::size_t cap) {
    const int d = group.degree();
    if (!is_transitive(group)) throw DataError("wreath product requires a transitive group");
    const std::size_t base = std::size_t{1} << d;
    if (base > cap) throw SizeLimitError("2^d exceeds the element cap");
    group.order(cap / base);  // throws SizeLimitError when 2^d |G| > cap
    std::vector<SignedPerm> gens{SignedPerm::flip(d, 0)};
    for (const Perm& g : group.generators()) gens.emplace_back(0u, g);
    return SignedGroup(d, std::move(gens));
}

SignedGroup flip_subgroup(int degree) {
    std::vector<SignedPerm> gens;
    for (int i = 0; i < degree; ++i) gens.push_back(SignedPerm::flip(degree, i));
    return SignedGroup(degree, std::move(gens));
}

bool is_abelian(const SignedGroup& group) { return generators_commute(group.generators()); }

std::size_t cm_type_orbit(const SignedGroup& group, const CMTypeMask& phi) {
    if (phi.degree != group.degree())
        throw DataError("CM type has degree " + std::to_string(phi.degree) + ", group has " +
                        std::to_string(group.degree()));
    std::vector<bool> seen(std::size_t{1} << phi.degree, false);
    std::vector<CMTypeMask> stack{phi};
    seen[phi.bits] = true;
    std::size_t size = 1;
    while (!stack.empty()) {
        CMTypeMask m = stack.back();
        stack.pop_back();
        for (const auto& g : group.generators()) {
            CMTypeMask next = g.act(m);
            if (!seen[next.bits]) {
                seen[next.bits] = true;
                ++size;
                stack.push_back(next);
            }
        }
    }
    return size;
}

std::uint64_t reflex_degree_check(int v, const PermGroup& group, std::uint64_t splitting_index) {
    if (v < 1 || v > group.degree())
        throw DataError("v = " + std::to_string(v) + " outside [1, " +
                        std::to_string(group.degree()) + "]");
    const std::uint64_t order = group.order();
    if (splitting_index == 0 || order % splitting_index != 0)
        throw DataError("[G:S] = " + std::to_string(splitting_index) + " does not divide |G| = " +
                        std::to_string(order));
    return (std::uint64_t{1} << v) * splitting_index;
}

const std::vector<TransitiveGroup>& transitive_catalog() {
    static const std::vector<TransitiveGroup> catalog{
        {"1T1", "C1", 1, 1, {}},
        {"2T1", "C2", 2, 2, {"(1,2)"}},
        {"3T1", "C3", 3, 3, {"(1,2,3)"}},
        {"3T2", "S3", 3, 6, {"(1,2,3)", "(1,2)"}},
        {"4T1", "C4", 4, 4, {"(1,2,3,4)"}},
        {"4T2", "V4", 4, 4, {"(1,2)(3,4)", "(1,3)(2,4)"}},
        {"4T3", "D4", 4, 8, {"(1,2,3,4)", "(1,3)"}},
        {"4T4", "A4", 4, 12, {"(1,2,3)", "(1,2)(3,4)"}},
        {"4T5", "S4", 4, 24, {"(1,2,3,4)", "(1,2)"}},
        {"5T1", "C5", 5, 5, {"(1,2,3,4,5)"}},
        {"5T2", "D5", 5, 10, {"(1,2,3,4,5)", "(2,5)(3,4)"}},
        {"5T3", "F5", 5, 20, {"(1,2,3,4,5)", "(2,3,5,4)"}},
        {"5T4", "A5", 5, 60, {"(1,2,3,4,5)", "(1,2,3)"}},
        {"5T5", "S5", 5, 120, {"(1,2,3,4,5)", "(1,2)"}},
    };
    return catalog;
}

std::vector<TransitiveGroup> transitive_groups(int degree) {
    std::vector<TransitiveGroup> out;
    for (const auto& g : transitive_catalog())
        if (g.degree == degree) out.push_back(g);
    return out;
}

const TransitiveGroup& find_transitive(std::string_view label, int degree) {
    for (const auto& g : transitive_catalog()) {
        if (g.label == label) return g;
        if (g.name == label && (degree == 0 || g.degree == degree)) return g;
    }
    throw DataError("unknown transitive group label '" + std::string(label) + "'");
}

}  // namespace cmweyl::perm
