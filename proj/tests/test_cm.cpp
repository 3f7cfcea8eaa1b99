#include <cmweyl/arith.hpp>
#include <cmweyl/cm.hpp>
#include <cmweyl/error.hpp>
#include <cmweyl/perm.hpp>
#include <cmweyl/polynomial.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

using namespace cmweyl;
using namespace cmweyl::cm;

namespace {

const std::filesystem::path kData = CMWEYL_DATA_DIR;

struct FixtureField {
    std::int64_t disc;
    std::string type;
    long long real_subfield;
};

// Quartic CM fields up to 1e5 listed independently by PARI, one line per
// isomorphism class over Q.
std::vector<FixtureField> load_fixture() {
    std::ifstream in(kData / "fixtures" / "quartic_cm.tsv");
    REQUIRE(in.good());
    std::vector<FixtureField> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        FixtureField f;
        std::string poly;
        row >> f.disc >> f.type >> f.real_subfield;
        out.push_back(f);
    }
    return out;
}

// A non-normal quartic CM field is F(sqrt alpha) and F(sqrt alpha') at once,
// so it accounts for two extensions E/F.
std::map<std::tuple<std::int64_t, std::string, long long>, int> extensions_from_fixture(std::int64_t X) {
    std::map<std::tuple<std::int64_t, std::string, long long>, int> out;
    for (const auto& f : load_fixture())
        if (f.disc <= X) out[{f.disc, f.type, f.real_subfield}] += f.type == "D4" ? 2 : 1;
    return out;
}

std::map<std::tuple<std::int64_t, std::string, long long>, int> extensions_from(const std::vector<CMFieldRecord>& rs) {
    std::map<std::tuple<std::int64_t, std::string, long long>, int> out;
    for (const auto& r : rs) out[{r.abs_disc, to_string(r.galois_type), r.base_D}] += 1;
    return out;
}

// The type read off from splitting of x^4 - Tr(alpha) x^2 + N(alpha): a
// Frobenius of shape (2,1,1) exists only for D4, and a 4-cycle only for C4
// or D4.
GaloisType frobenius_type(const CMFieldRecord& r) {
    const Q& a = r.square_class.a;
    const Q& b = r.square_class.b;
    const BigInt l = boost::multiprecision::lcm(a.denominator(), b.denominator());
    const Q ai = a * Q(l * l), bi = b * Q(l * l);  // same class, integral
    const auto trace = static_cast<long long>(2 * ai.numerator());
    const auto norm = static_cast<long long>((ai * ai - Q(r.base_D) * bi * bi).numerator());
    const poly::IntPoly f{norm, 0, -trace, 0, 1};
    const auto disc = poly::discriminant(f);
    bool split_211 = false, cycle4 = false;
    for (std::uint32_t p : *arith::primes_up_to(2000)) {
        if (disc % p == 0) continue;
        const auto shape = poly::factor_shape_mod_p(f, p, true);
        if (shape.degrees == std::vector<int>{1, 1, 2}) split_211 = true;
        if (shape.degrees == std::vector<int>{4}) cycle4 = true;
    }
    if (split_211) return GaloisType::D4;
    return cycle4 ? GaloisType::C4 : GaloisType::V4;
}

}  // namespace

TEST_CASE("square test in the real quadratic field") {
    CHECK(is_square_in_F(Q(9), Q(0), 5));
    CHECK(is_square_in_F(Q(2), Q(0), 8));  // (sqrt 8 / 2)^2
    CHECK_FALSE(is_square_in_F(Q(3), Q(0), 5));
    CHECK(is_square_in_F(Q(3, 2), Q(1, 2), 5));  // golden ratio squared
    CHECK(is_square_in_F(Q(6), Q(2), 5));        // (1 + sqrt 5)^2
    CHECK_FALSE(is_square_in_F(Q(-1), Q(0), 5));
    CHECK(is_square_in_F(Q(0), Q(0), 13));
    CHECK_THROWS_AS(is_square_in_F(Q(1), Q(0), 4), DataError);
    CHECK_THROWS_AS(is_square_in_F(Q(1), Q(0), -3), DataError);
}

TEST_CASE("square test agrees with squaring random elements") {
    for (long long D : {5LL, 8LL, 12LL, 13LL, 21LL, 24LL, 77LL}) {
        for (long long u = -4; u <= 4; ++u) {
            for (long long v = -3; v <= 3; ++v) {
                if (u == 0 && v == 0) continue;
                const Q x = Q(u * u) + Q(D * v * v, 4), y = Q(u * v);  // (u + v sqrt(D)/2)^2
                CHECK(is_square_in_F(x, y, D));
                CHECK_FALSE(is_square_in_F(-x, -y, D));
            }
        }
    }
}

TEST_CASE("fundamental units") {
    struct Case {
        long long D;
        long long x, y;
        int norm;
    };
    // (x + y sqrt D) / 2
    for (const Case& c : {Case{5, 1, 1, -1}, Case{8, 2, 1, -1}, Case{12, 4, 1, 1}, Case{13, 3, 1, -1},
                          Case{21, 5, 1, 1}, Case{29, 5, 1, -1}, Case{376, 4286590, 221064, 1}}) {
        CAPTURE(c.D);
        const FundamentalUnit u = fundamental_unit(c.D);
        CHECK(static_cast<long long>(u.x) == c.x);
        CHECK(static_cast<long long>(u.y) == c.y);
        CHECK(u.norm == c.norm);
        CHECK(u.value > 1);
    }
    CHECK_THROWS_AS(fundamental_unit(9), DataError);
    CHECK_THROWS_AS(fundamental_unit(20), DataError);
    CHECK_THROWS_AS(fundamental_unit(1), DataError);
}

TEST_CASE("named fields: the fifth and eighth cyclotomic fields and Q(i, sqrt 5)") {
    const CMFieldRecord zeta5 = make_record(5, Q(-5, 2), Q(1, 2));
    CHECK(zeta5.abs_disc == 125);
    CHECK(zeta5.rel_norm == 5);
    CHECK(zeta5.galois_type == GaloisType::C4);
    CHECK_FALSE(zeta5.weyl);
    CHECK(classify_galois(zeta5) == GaloisType::C4);

    const CMFieldRecord zeta8 = make_record(8, Q(-1), Q(0));
    CHECK(zeta8.abs_disc == 256);
    CHECK(zeta8.galois_type == GaloisType::V4);

    const CMFieldRecord i5 = make_record(5, Q(-1), Q(0));
    CHECK(i5.abs_disc == 400);
    CHECK(i5.galois_type == GaloisType::V4);

    const auto at_124 = enumerate_cm(5, 124);
    CHECK(at_124.empty());
    const auto at_125 = enumerate_cm(5, 125);
    REQUIRE(at_125.size() == 1);
    CHECK(at_125.front().abs_disc == 125);
    CHECK(at_125.front().galois_type == GaloisType::C4);

    CHECK_THROWS_AS(make_record(5, Q(1), Q(0)), DataError);       // totally positive
    CHECK_THROWS_AS(make_record(5, Q(-1), Q(1)), DataError);      // mixed signs
    CHECK_THROWS_AS(make_record(4, Q(-1), Q(0)), DataError);      // not fundamental
}

TEST_CASE("relative discriminants at 2 for each splitting type") {
    // Q(sqrt -1, sqrt 3) = Q(zeta_12) is unramified over Q(sqrt 3).
    CHECK(relative_discriminant_norm(12, -2, 0) == 1);
    // sqrt -2 over Q(sqrt 3): 2 / pi^2 is not a square, so 2 ramifies fully.
    CHECK(relative_discriminant_norm(12, -4, 0) == 16);
    CHECK(relative_discriminant_norm(8, -2, 0) == 4);   // Q(zeta_8) over Q(sqrt 2)
    CHECK(relative_discriminant_norm(5, -2, 0) == 16);  // 2 inert: Q(i, sqrt 5)
    CHECK(relative_discriminant_norm(17, -2, 0) == 16);  // 2 split
    CHECK(relative_discriminant_norm(5, -6, 0) == 9);   // -3 over Q(sqrt 5), 3 inert
    CHECK_THROWS_AS(relative_discriminant_norm(5, 1, 0), DataError);  // (1 + 0 sqrt 5)/2 not integral
    CHECK_THROWS_AS(relative_discriminant_norm(5, 0, 0), DataError);
}

TEST_CASE("absolute discriminant is D^2 times the relative norm") {
    for (const auto& r : enumerate_all(30000)) {
        CHECK(r.abs_disc == r.base_D * r.base_D * r.rel_norm);
        CHECK(r.weyl == (r.galois_type == GaloisType::D4));
        CHECK(r.square_class.base_D == r.base_D);
        CHECK(r.square_class.totally_negative);
        CHECK(make_record(r.base_D, r.square_class.a, r.square_class.b) == r);
    }
}

TEST_CASE("enumeration matches the independent field list up to 1e5") {
    const auto records = enumerate_all(100000);
    for (std::int64_t X : {1000, 10000, 100000}) {
        CAPTURE(X);
        std::vector<CMFieldRecord> below;
        for (const auto& r : records)
            if (r.abs_disc <= X) below.push_back(r);
        CHECK(extensions_from(below) == extensions_from_fixture(X));
    }
    const CountReport report = count_records(records, 100000);
    CHECK(report.n_cm == 1008);
    CHECK(report.n_c4 == 17);
    CHECK(report.n_v4 == 201);
    CHECK(report.n_d4 == 790);
    CHECK(report.n_isomorphism_classes == 613);
    CHECK(report.n_weyl + report.n_not_weyl == report.n_cm);
}

TEST_CASE("square classes within one base field are distinct") {
    for (long long D : arith::positive_fundamental_discriminants(40)) {
        const auto rs = enumerate_cm(D, 10000);
        for (std::size_t i = 0; i < rs.size(); ++i) {
            for (std::size_t j = i + 1; j < rs.size(); ++j) {
                const auto& a = rs[i].square_class;
                const auto& b = rs[j].square_class;
                const Q x = a.a * b.a + Q(D) * a.b * b.b, y = a.a * b.b + a.b * b.a;
                CHECK_FALSE(is_square_in_F(x, y, D));
            }
        }
    }
}

TEST_CASE("Galois type agrees with Frobenius cycle shapes") {
    std::map<GaloisType, int> seen;
    for (const auto& r : enumerate_all(20000)) {
        CAPTURE(r.abs_disc);
        CAPTURE(r.base_D);
        CHECK(frobenius_type(r) == r.galois_type);
        ++seen[r.galois_type];
    }
    CHECK(seen[GaloisType::C4] > 0);
    CHECK(seen[GaloisType::V4] > 0);
    CHECK(seen[GaloisType::D4] > 0);
}

TEST_CASE("CM type orbits of the three quartic Galois groups") {
    using perm::Perm;
    using perm::SignedGroup;
    using perm::SignedPerm;
    const Perm swap = Perm::from_cycles(2, "(1,2)");
    const SignedGroup d4 = perm::wreath_c2(perm::find_transitive("C2").group());
    const SignedGroup c4(2, {SignedPerm(1u, swap)});
    const SignedGroup v4(2, {SignedPerm(3u, Perm::identity(2)), SignedPerm(0u, swap)});
    CHECK(d4.order() == 8);
    CHECK(c4.order() == 4);
    CHECK(v4.order() == 4);
    // Complex conjugation flips both embeddings and lies in every one of them.
    for (const SignedGroup* g : {&d4, &c4, &v4}) {
        bool has_conj = false;
        for (const auto& e : g->elements()) has_conj |= e == SignedPerm(3u, Perm::identity(2));
        CHECK(has_conj);
    }
    for (std::uint32_t bits = 0; bits < 4; ++bits) {
        CHECK(perm::cm_type_orbit(d4, {2, bits}) == 4);
        CHECK(perm::cm_type_orbit(c4, {2, bits}) == 4);
        CHECK(perm::cm_type_orbit(v4, {2, bits}) == 2);
    }
}

TEST_CASE("counts are monotone in X and restrict consistently") {
    const auto records = enumerate_all(50000);
    CountReport prev;
    for (std::int64_t X : {500, 2000, 8000, 20000, 50000}) {
        const CountReport at = count_records(records, X);
        const CountReport direct = count_report(X);
        CHECK(at.n_cm == direct.n_cm);
        CHECK(at.n_weyl == direct.n_weyl);
        CHECK(at.n_cm >= prev.n_cm);
        CHECK(at.n_not_weyl >= prev.n_not_weyl);
        CHECK(at.n_c4 + at.n_v4 + at.n_d4 == at.n_cm);
        prev = at;
    }
    CHECK_THROWS_AS(count_report(124), DataError);
}

TEST_CASE("parallel enumeration does not depend on the thread count") {
    CHECK(enumerate_all(40000, 1) == enumerate_all(40000, 4));
}

TEST_CASE("Weyl share grows with X") {
    CountOptions opts;
    opts.checkpoints = {12500, 25000, 50000, 100000};
    const CountReport r = count_report(100000, opts);
    REQUIRE(r.checkpoints.size() == 4);
    const auto records = enumerate_all(100000);
    double prev = 0;
    for (std::int64_t X : {6250, 12500, 25000, 50000, 100000}) {
        const double share = count_records(records, X).ratio_weyl;
        CHECK(share > prev);
        prev = share;
    }
    CHECK(r.slope_fit > 0.5);
    CHECK(r.slope_fit < 1.0);
}
