#include <cmweyl/arith.hpp>
#include <cmweyl/error.hpp>
#include <cmweyl/polynomial.hpp>
#include <cmweyl/quadratic.hpp>
#include <cmweyl/zeta.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cmweyl;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

FieldRecord quadratic_record(long long disc) {
    FieldRecord r;
    r.label = "2.2." + std::to_string(disc) + ".1";
    r.degree = 2;
    r.discriminant = disc;
    r.poly = disc % 4 == 0 ? poly::IntPoly{-disc / 4, 0, 1} : poly::IntPoly{-(disc - 1) / 4, -1, 1};
    r.galois_label = "2T1";
    r.r1 = 2;
    return r;
}

FieldRecord rational_record() {
    FieldRecord r;
    r.label = "1.1.1.1";
    r.degree = 1;
    r.discriminant = 1;
    r.poly = {0, 1};
    r.galois_label = "1T1";
    r.r1 = 1;
    r.class_number = 1;
    r.regulator = 1.0;
    return r;
}

// Roots of a monic polynomial modulo p by exhaustive evaluation.
int count_roots_mod_p(const poly::IntPoly& f, long long p) {
    int roots = 0;
    for (long long x = 0; x < p; ++x) {
        long long v = 0;
        for (auto it = f.rbegin(); it != f.rend(); ++it) v = ((v * x + *it) % p + p) % p;
        roots += v == 0;
    }
    return roots;
}

}  // namespace

TEST_CASE("kronecker symbol") {
    CHECK(zeta::kronecker(5, 2) == -1);
    CHECK(zeta::kronecker(8, 3) == -1);
    CHECK(zeta::kronecker(5, 5) == 0);
    CHECK(zeta::kronecker(-4, 3) == -1);
    CHECK(zeta::kronecker(-4, 5) == 1);
    CHECK(zeta::kronecker(12, 11) == 1);
    CHECK(zeta::kronecker(1, 17) == 1);
}

TEST_CASE("kronecker is multiplicative and periodic for fundamental discriminants") {
    for (long long disc : {5LL, 8LL, 12LL, 13LL, -3LL, -4LL, -7LL, -8LL, 21LL, 24LL, 40LL, -20LL, 229LL}) {
        CAPTURE(disc);
        const long long period = disc < 0 ? -disc : disc;
        for (long long m = 1; m < 60; ++m) {
            CHECK(zeta::kronecker(disc, m + period) == zeta::kronecker(disc, m));
            for (long long n = 1; n < 30; ++n)
                CHECK(zeta::kronecker(disc, m * n) == zeta::kronecker(disc, m) * zeta::kronecker(disc, n));
        }
    }
}

TEST_CASE("L(1, chi_D) against class number formula values") {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(zeta::l_value(5, 1, 1e-12).value == Approx(2.0 * std::log(phi) / std::sqrt(5.0)).epsilon(1e-12));
    CHECK(zeta::l_value(5, 1, 1e-12).value == Approx(0.430409).epsilon(1e-6));
    CHECK(zeta::l_value(8, 1, 1e-12).value == Approx(2.0 * std::log(1.0 + std::sqrt(2.0)) / std::sqrt(8.0)).epsilon(1e-12));
    CHECK(zeta::l_value(8, 1, 1e-12).value == Approx(0.623225).epsilon(1e-6));
    CHECK(zeta::l_value(-4, 1, 1e-12).value == Approx(kPi / 4.0).epsilon(1e-13));
    CHECK(zeta::l_value(-3, 1, 1e-12).value == Approx(kPi / (3.0 * std::sqrt(3.0))).epsilon(1e-13));
    // Q(sqrt(-23)) has class number 3: L = pi h / sqrt 23.
    CHECK(zeta::l_value(-23, 1, 1e-12).value == Approx(3.0 * kPi / std::sqrt(23.0)).epsilon(1e-13));
}

TEST_CASE("L(1, chi_5) against a direct partial sum") {
    // Whole periods of chi_5 have zero sum, so the tail after N = 5k is below 1/N.
    arith::CompensatedSum sum;
    const long long n_terms = 10'000'000;
    for (long long n = n_terms; n >= 1; --n) {
        const int chi = zeta::kronecker(5, n);
        if (chi) sum.add(chi / static_cast<double>(n));
    }
    CHECK(std::abs(zeta::l_value(5, 1, 1e-12).value - sum.value()) < 1e-6);
}

TEST_CASE("L(2, chi_D)") {
    CHECK(zeta::l_value(1, 2, 1e-10).value == Approx(kPi * kPi / 6.0).epsilon(1e-10));
    CHECK(std::abs(zeta::l_value(1, 2, 1e-10).value - kPi * kPi / 6.0) <= zeta::l_value(1, 2, 1e-10).tail_bound);
    CHECK(zeta::l_value(-4, 2, 1e-11).value == Approx(0.915965594177219015).epsilon(1e-10));
    CHECK(zeta::l_value(5, 2, 1e-11).value == Approx(4.0 * kPi * kPi / (25.0 * std::sqrt(5.0))).epsilon(1e-10));
    CHECK(zeta::l_value(5, 2, 1e-6).tail_bound <= 1e-6);
}

TEST_CASE("l_value errors") {
    CHECK_THROWS_AS(zeta::l_value(1, 1, 1e-8), DataError);
    CHECK_THROWS_AS(zeta::l_value(20, 2, 1e-8), DataError);
    CHECK_THROWS_AS(zeta::l_value(5, 3, 1e-8), DataError);
    CHECK_THROWS_AS(zeta::l_value(5, 2, 0.0), DataError);
}

TEST_CASE("splitting types") {
    const poly::IntPoly golden{-1, -1, 1};
    auto s = zeta::splitting_type(golden, 2);
    CHECK(s.degrees == std::vector<int>{2});
    CHECK_FALSE(s.ramified);
    s = zeta::splitting_type(golden, 5);
    CHECK(s.degrees == std::vector<int>{1});
    CHECK(s.ramified);
    s = zeta::splitting_type(golden, 11);
    CHECK(s.degrees == std::vector<int>{1, 1});

    const poly::IntPoly cubic{-1, -3, 0, 1};  // x^3 - 3x - 1, discriminant 81
    s = zeta::splitting_type(cubic, 3, 81);
    CHECK(s.degrees == std::vector<int>{1});
    CHECK(s.ramified);
    CHECK_FALSE(s.index_divisor);
    s = zeta::splitting_type(cubic, 2);
    CHECK(s.degrees == std::vector<int>{3});

    // x^2 - 5 has index 2 in the ring of integers of Q(sqrt 5).
    CHECK(zeta::splitting_type({-5, 0, 1}, 2, 5).index_divisor);
    CHECK_THROWS_AS(zeta::splitting_type({1, 2}, 3), DataError);
}

TEST_CASE("cubic factor shapes agree with root counting") {
    for (const poly::IntPoly& f : {poly::IntPoly{1, -2, -1, 1}, poly::IntPoly{-1, -3, 0, 1},
                                   poly::IntPoly{-1, -4, 0, 1}, poly::IntPoly{1, -5, 1, 1}}) {
        const auto disc = poly::discriminant(f);
        for (std::uint32_t p : *arith::primes_up_to(2000)) {
            if (p > 2000) break;
            if (disc % p == 0) continue;
            const int roots = count_roots_mod_p(f, p);
            const auto shape = poly::factor_shape_mod_p(f, p);
            CAPTURE(p);
            if (roots == 3) CHECK(shape.degrees == std::vector<int>{1, 1, 1});
            if (roots == 1) CHECK(shape.degrees == std::vector<int>{1, 2});
            if (roots == 0) CHECK(shape.degrees == std::vector<int>{3});
            CHECK(roots != 2);
        }
    }
}

TEST_CASE("polynomial discriminants and real roots") {
    CHECK(poly::discriminant({-1, -1, 1}) == 5);
    CHECK(poly::discriminant({1, -2, -1, 1}) == 49);
    CHECK(poly::discriminant({-1, -3, 0, 1}) == 81);
    CHECK(poly::discriminant({1, 0, 1}) == -4);
    CHECK(poly::real_root_count({1, -2, -1, 1}) == 3);
    CHECK(poly::real_root_count({1, 0, 1}) == 0);
    CHECK(poly::real_root_count({-2, 0, 0, 1}) == 1);
    CHECK(poly::to_string({1, -2, -1, 1}) == "x^3 - x^2 - 2*x + 1");
}

TEST_CASE("zeta_Q(2) and zeta of Q(sqrt 5) at 2") {
    const auto q = zeta::zeta_f_at_2(rational_record(), 1e-6);
    CHECK(std::abs(q.value - kPi * kPi / 6.0) <= q.tail_bound);
    CHECK(q.tail_bound <= 1e-6);

    const double exact = 2.0 * std::pow(kPi, 4) / (75.0 * std::sqrt(5.0));
    const auto f = zeta::zeta_f_at_2(quadratic_record(5), 1e-6);
    CHECK(std::abs(f.value - exact) <= f.tail_bound);
    CHECK(f.tail_bound <= 1e-6);
}

TEST_CASE("quadratic Euler products agree with zeta(2) L(2, chi_D)") {
    const double zeta2 = kPi * kPi / 6.0;
    for (long long disc : arith::positive_fundamental_discriminants(400)) {
        CAPTURE(disc);
        const auto f = zeta::zeta_f_at_2(quadratic_record(disc), 1e-5);
        const auto l = zeta::l_value(disc, 2, 1e-9);
        CHECK(std::abs(f.value - zeta2 * l.value) <= f.tail_bound + zeta2 * l.tail_bound);
    }
}

TEST_CASE("Euler product brackets shrink monotonically around the exact value") {
    const double exact = 2.0 * std::pow(kPi, 4) / (75.0 * std::sqrt(5.0));
    const FieldRecord rec = quadratic_record(5);
    double prev_lower = 0.0;
    double prev_width = INFINITY;
    for (std::uint32_t cutoff : {10u, 100u, 1000u, 10000u, 100000u}) {
        const auto v = zeta::zeta_f_at_2_with_cutoff(rec, cutoff);
        CAPTURE(cutoff);
        CHECK(std::abs(v.value - exact) <= v.tail_bound);
        CHECK(v.value - v.tail_bound >= prev_lower);
        CHECK(v.tail_bound < prev_width);
        prev_lower = v.value - v.tail_bound;
        prev_width = v.tail_bound;
    }
}

TEST_CASE("index-divisor primes use record overrides or widen the bound") {
    FieldRecord rec = quadratic_record(5);
    rec.poly = {-5, 0, 1};
    const double exact = 2.0 * std::pow(kPi, 4) / (75.0 * std::sqrt(5.0));
    const auto bracketed = zeta::zeta_f_at_2_with_cutoff(rec, 5000);
    CHECK(std::abs(bracketed.value - exact) <= bracketed.tail_bound);
    CHECK(bracketed.tail_bound > 1e-3);

    rec.local_factors = {{2, {2}}};
    const auto fixed = zeta::zeta_f_at_2_with_cutoff(rec, 5000);
    CHECK(std::abs(fixed.value - exact) <= fixed.tail_bound);
    CHECK(fixed.tail_bound < 1e-3);

    // The tolerance-driven entry point reads quadratic fields off L(2, chi_D),
    // which depends on the discriminant alone.
    const auto closed = zeta::zeta_f_at_2(rec, 1e-10);
    CHECK(std::abs(closed.value - exact) <= closed.tail_bound + 1e-15);
    CHECK(closed.tail_bound <= 1e-10);
}

TEST_CASE("cubic index divisors without local data cannot meet a tight tolerance") {
    // The order generated by 2 * root has index 8, so 2 is an index divisor.
    FieldRecord rec;
    rec.label = "scaled";
    rec.degree = 3;
    rec.discriminant = 49;
    rec.poly = {8, -8, -2, 1};  // 8 f(x/2) with f = x^3 - x^2 - 2x + 1
    rec.r1 = 3;
    rec.galois_label = "3T1";
    CHECK(zeta::zeta_f_at_2_with_cutoff(rec, 2000).tail_bound > 1e-3);
    CHECK_THROWS_AS(zeta::zeta_f_at_2(rec, 1e-4), DataError);
}

TEST_CASE("tolerance unreachable under the prime cap") {
    zeta::ZetaConfig tight;
    tight.prime_cap = 1000;
    FieldRecord cubic;
    cubic.label = "3.3.49.1";
    cubic.degree = 3;
    cubic.discriminant = 49;
    cubic.poly = {1, -2, -1, 1};
    cubic.r1 = 3;
    cubic.galois_label = "3T1";
    CHECK_THROWS_WITH_AS(zeta::zeta_f_at_2(cubic, 1e-9, tight), doctest::Contains("prime cap 1000"), DataError);
    CHECK_NOTHROW(zeta::zeta_f_at_2(cubic, 1e-2, tight));
}

TEST_CASE("residue from h and R") {
    FieldRecord rec = quadratic_record(5);
    CHECK_THROWS_WITH_AS(zeta::residue_zeta(rec), doctest::Contains("incomplete record"), DataError);
    rec.class_number = 1;
    rec.regulator = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    CHECK(zeta::residue_zeta(rec) == Approx(0.430409).epsilon(1e-6));
    CHECK(zeta::residue_zeta(rational_record()) == Approx(1.0));
}

TEST_CASE("real quadratic class numbers and regulators") {
    auto inv = quadratic::invariants(5);
    CHECK(inv.class_number == 1);
    CHECK(inv.unit_norm == -1);
    CHECK(inv.regulator == Approx(std::log((1.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-14));

    inv = quadratic::invariants(12);
    CHECK(inv.class_number == 1);
    CHECK(inv.narrow_class_number == 2);
    CHECK(inv.unit_norm == 1);
    CHECK(inv.regulator == Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-14));

    CHECK(quadratic::invariants(40).class_number == 2);
    CHECK(quadratic::invariants(316).class_number == 3);
    CHECK(quadratic::invariants(229).class_number == 3);
    CHECK(quadratic::invariants(229).narrow_class_number == 3);
    CHECK(quadratic::invariants(145).class_number == 4);
    CHECK_THROWS_AS(quadratic::invariants(20), DataError);
    CHECK_THROWS_AS(quadratic::invariants(-4), DataError);
}

TEST_CASE("forms-and-continued-fractions hR matches the character sum") {
    for (long long disc : arith::positive_fundamental_discriminants(3000)) {
        CAPTURE(disc);
        const auto inv = quadratic::invariants(disc);
        const double lhs = 2.0 * static_cast<double>(inv.class_number) * inv.regulator / std::sqrt(static_cast<double>(disc));
        CHECK(lhs == Approx(zeta::l_value(disc, 1, 1e-9).value).epsilon(1e-9));
    }
}

TEST_CASE("early exit for squarefree reductions matches the full factorization") {
    for (const poly::IntPoly& f : {poly::IntPoly{1, -2, -1, 1}, poly::IntPoly{5, 0, -5, 0, 1},
                                   poly::IntPoly{-1, 3, -3, -1, 1}, poly::IntPoly{1, 3, -3, -5, 0, 1},
                                   poly::IntPoly{-1, 2, 1, -5, 0, 1}}) {
        const auto disc = poly::discriminant(f);
        for (std::uint32_t p : *arith::primes_up_to(3000)) {
            if (p > 3000) break;
            if (disc % p == 0) continue;
            CAPTURE(p);
            CHECK(poly::factor_shape_mod_p(f, p, true).degrees == poly::factor_shape_mod_p(f, p).degrees);
        }
    }
}
