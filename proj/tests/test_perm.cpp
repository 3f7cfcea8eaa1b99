#include <cmweyl/perm.hpp>

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace cmweyl;
using namespace cmweyl::perm;

namespace {

std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

SignedPerm random_signed(std::mt19937& rng, int d) {
    std::vector<std::uint8_t> images(static_cast<std::size_t>(d));
    std::iota(images.begin(), images.end(), std::uint8_t{0});
    std::shuffle(images.begin(), images.end(), rng);
    std::uniform_int_distribution<std::uint32_t> flips(0, (1u << d) - 1);
    return {flips(rng), Perm(images)};
}

}  // namespace

TEST_CASE("cycle notation parses and prints") {
    Perm p = Perm::from_cycles(5, "(1,2)(3,4,5)");
    CHECK(p[0] == 1);
    CHECK(p[1] == 0);
    CHECK(p[2] == 3);
    CHECK(p[4] == 2);
    CHECK(p.to_cycles() == "(1,2)(3,4,5)");
    CHECK(Perm::from_cycles(3, "()").is_identity());
    CHECK(Perm::from_cycles(3, "").is_identity());
    CHECK_THROWS_AS(Perm::from_cycles(3, "(1,4)"), ParseError);
    CHECK_THROWS_AS(Perm::from_cycles(3, "(1,1)"), ParseError);
    CHECK_THROWS_AS(Perm::from_cycles(3, "1,2"), ParseError);
    CHECK_THROWS_AS(Perm(std::vector<std::uint8_t>{0, 0, 1}), DataError);
}

TEST_CASE("composition applies the right factor first") {
    Perm a = Perm::from_cycles(3, "(1,2)");
    Perm b = Perm::from_cycles(3, "(2,3)");
    // (a*b)(1) = a(b(1)) = a(1) = 2
    CHECK((a * b)[0] == 1);
    CHECK((a * b) == Perm::from_cycles(3, "(1,2,3)"));
    CHECK((a * a.inverse()).is_identity());
}

TEST_CASE("malle_index") {
    CHECK(malle_index(Perm::identity(3)) == 0);
    CHECK(malle_index(Perm::from_cycles(3, "(1,2)")) == 1);
    CHECK(malle_index(Perm::from_cycles(5, "(1,2,3,4,5)")) == 4);
    CHECK(malle_index(Perm::from_cycles(4, "(1,2)(3,4)")) == 2);
}

TEST_CASE("min_index_and_a") {
    auto s5 = PermGroup::from_cycle_strings(5, {"(1,2)", "(1,2,3,4,5)"});
    auto m = min_index_and_a(s5);
    CHECK(m.index == 1);
    CHECK(m.a == Rational(1));

    auto c3 = PermGroup::from_cycle_strings(3, {"(1,2,3)"});
    m = min_index_and_a(c3);
    CHECK(m.index == 2);
    CHECK(m.a == Rational(1, 2));

    auto c2 = PermGroup::from_cycle_strings(2, {"(1,2)"});
    CHECK(min_index_and_a(c2).a == Rational(1));

    CHECK_THROWS_WITH_AS(min_index_and_a(PermGroup(3, {})), "no non-identity element", DataError);
}

TEST_CASE("is_transitive") {
    CHECK_FALSE(is_transitive(PermGroup::from_cycle_strings(3, {"(1,2)"})));
    CHECK(is_transitive(PermGroup::from_cycle_strings(3, {"(1,2,3)"})));
    CHECK(is_transitive(PermGroup::from_cycle_strings(5, {"(1,2)", "(1,2,3,4,5)"})));
}

TEST_CASE("wreath_c2 orders") {
    CHECK(wreath_c2(PermGroup::from_cycle_strings(2, {"(1,2)"})).order() == 8);
    CHECK(wreath_c2(find_transitive("S3").group()).order() == 48);
    CHECK(wreath_c2(find_transitive("5T1").group()).order() == 160);
    CHECK_THROWS_AS(wreath_c2(find_transitive("S5").group(), 1000), SizeLimitError);
    CHECK_THROWS_AS(wreath_c2(PermGroup::from_cycle_strings(3, {"(1,2)"})), DataError);
}

TEST_CASE("is_abelian") {
    CHECK_FALSE(is_abelian(wreath_c2(find_transitive("2T1").group())));
    CHECK(is_abelian(flip_subgroup(4)));
    CHECK_FALSE(is_abelian(wreath_c2(find_transitive("S5").group())));
    CHECK(is_abelian(find_transitive("C5").group()));
    CHECK_FALSE(is_abelian(find_transitive("S3").group()));
}

TEST_CASE("cm_type_orbit") {
    const SignedGroup w = wreath_c2(find_transitive("C2").group());
    for (std::uint32_t bits = 0; bits < 4; ++bits) CHECK(cm_type_orbit(w, {2, bits}) == 4);

    const SignedGroup trivial(3, {});
    CHECK(cm_type_orbit(trivial, {3, 5}) == 1);

    const SignedGroup flips = flip_subgroup(3);
    CHECK(cm_type_orbit(flips, {3, 0}) == 8);

    CHECK_THROWS_AS(cm_type_orbit(flips, {2, 0}), DataError);

    // A non-Weyl subgroup: C2 x C2 generated by complex conjugation (all flips)
    // and a transposition acts on 4 masks with orbits of size 2.
    const SignedGroup small(2, {SignedPerm(3u, Perm::identity(2)), SignedPerm(0u, Perm::from_cycles(2, "(1,2)"))});
    CHECK(small.order() == 4);
    CHECK(cm_type_orbit(small, {2, 0}) == 2);
}

TEST_CASE("reflex_degree_check") {
    const PermGroup c2 = find_transitive("C2").group();
    CHECK(reflex_degree_check(2, c2, 1) == 4);
    CHECK(reflex_degree_check(1, c2, 1) == 2);
    const PermGroup s3 = find_transitive("S3").group();
    CHECK(reflex_degree_check(3, s3, 2) == 16);
    CHECK_THROWS_AS(reflex_degree_check(0, c2, 1), DataError);
    CHECK_THROWS_AS(reflex_degree_check(3, c2, 1), DataError);
    CHECK_THROWS_AS(reflex_degree_check(2, s3, 4), DataError);
}

TEST_CASE("transitive catalog orders and transitivity") {
    for (const auto& g : transitive_catalog()) {
        CAPTURE(g.label);
        const PermGroup group = g.group();
        CHECK(group.order() == g.order);
        CHECK(is_transitive(group));
        CHECK(factorial(g.degree) % g.order == 0);
    }
    CHECK(find_transitive("D4", 4).label == "4T3");
    CHECK(find_transitive("5T3").name == "F5");
    CHECK_THROWS_AS(find_transitive("6T1"), DataError);
    CHECK(transitive_groups(4).size() == 5);
    CHECK(transitive_groups(5).size() == 5);
}

TEST_CASE("closure invariant") {
    for (const auto& g : transitive_catalog()) {
        if (g.degree < 2) continue;
        CAPTURE(g.label);
        const auto w = wreath_c2(g.group());
        const auto elems = w.elements();
        std::set<SignedPerm> set(elems.begin(), elems.end());
        CHECK(set.count(SignedPerm::identity(g.degree)) == 1);
        CHECK(((std::uint64_t{1} << g.degree) * factorial(g.degree)) % elems.size() == 0);
        // Spot-check closure under products and inverses against a fixed stride.
        for (std::size_t i = 0; i < elems.size(); i += 7) {
            CHECK(set.count(elems[i].inverse()) == 1);
            CHECK(set.count(elems[i] * elems[(i * 13 + 5) % elems.size()]) == 1);
        }
    }
}

TEST_CASE("wreath properties over every transitive group of degree 2..5") {
    for (int d = 2; d <= 5; ++d) {
        for (const auto& g : transitive_groups(d)) {
            CAPTURE(g.label);
            const auto w = wreath_c2(g.group());
            CHECK(w.order() == (std::uint64_t{1} << d) * g.order);
            CHECK_FALSE(is_abelian(w));
            for (std::uint32_t bits = 0; bits < (1u << d); ++bits)
                CHECK(cm_type_orbit(w, {d, bits}) == (std::size_t{1} << d));
        }
        // The full symmetric group is listed last and contains a transposition.
        const auto sym = transitive_groups(d).back();
        CHECK(sym.order == factorial(d));
        CHECK(min_index_and_a(sym.group()).a == Rational(1));
    }
}

TEST_CASE("a(G) lies in (0, 1]") {
    for (const auto& g : transitive_catalog()) {
        if (g.order == 1) continue;
        const Rational a = min_index_and_a(g.group()).a;
        CHECK(a > Rational(0));
        CHECK(a <= Rational(1));
    }
}

TEST_CASE("random subgroups: orbit bound and orbit-stabilizer") {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 2 + trial % 4;
        std::vector<SignedPerm> gens;
        const int ngens = 1 + trial % 3;
        for (int i = 0; i < ngens; ++i) gens.push_back(random_signed(rng, d));
        const SignedGroup w(d, gens);
        const std::size_t order = w.order();
        std::uniform_int_distribution<std::uint32_t> mask(0, (1u << d) - 1);
        const CMTypeMask phi{d, mask(rng)};
        const std::size_t orbit = cm_type_orbit(w, phi);
        CHECK(orbit <= (std::size_t{1} << d));
        CHECK(order % orbit == 0);
    }
}

TEST_CASE("split and 2d-point encodings agree") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + trial % 5;
        const SignedPerm a = random_signed(rng, d);
        const SignedPerm b = random_signed(rng, d);
        CHECK((a * b).to_points() == a.to_points() * b.to_points());
        CHECK(a.inverse().to_points() == a.to_points().inverse());
        // The 2d-point image commutes with complex conjugation i <-> i + d.
        const Perm conj = SignedPerm(static_cast<std::uint32_t>((1u << d) - 1), Perm::identity(d)).to_points();
        CHECK(a.to_points() * conj == conj * a.to_points());
        // Mask action matches the image of the selected embeddings.
        const CMTypeMask phi{d, static_cast<std::uint32_t>(trial) & ((1u << d) - 1)};
        const CMTypeMask image = a.act(phi);
        const Perm pts = a.to_points();
        for (int i = 0; i < d; ++i) {
            const int selected = i + d * static_cast<int>(phi.bits >> i & 1u);
            const int j = pts[selected] % d;
            CHECK((image.bits >> j & 1u) == static_cast<std::uint32_t>(pts[selected] >= d));
        }
    }
}
