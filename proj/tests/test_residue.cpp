#include <cmweyl/catalog.hpp>
#include <cmweyl/error.hpp>
#include <cmweyl/residue.hpp>

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

using namespace cmweyl;
using namespace cmweyl::residue;

namespace {

const std::filesystem::path kData = CMWEYL_DATA_DIR;

FieldRecord rational_field() {
    FieldRecord q;
    q.label = "1.1.1.1";
    q.degree = 1;
    q.discriminant = 1;
    q.poly = {0, 1};
    q.galois_label = "1T1";
    q.class_number = 1;
    q.regulator = 1.0;
    q.r1 = 1;
    return q;
}

// Imaginary quadratic fundamental discriminants -D with D <= n, by sieving
// squarefree numbers directly.
long long count_imaginary_fundamental(long long n) {
    std::vector<bool> squarefree(static_cast<std::size_t>(n) + 1, true);
    for (long long k = 2; k * k <= n; ++k)
        for (long long m = k * k; m <= n; m += k * k) squarefree[static_cast<std::size_t>(m)] = false;
    long long count = 0;
    for (long long d = 3; d <= n; ++d) {
        // -d is 1 mod 4 iff d is 3 mod 4
        if (d % 4 == 3 && squarefree[static_cast<std::size_t>(d)]) ++count;
        if (d % 4 == 0) {
            const long long m = d / 4;  // -m must be 2 or 3 mod 4, i.e. m is 2 or 1 mod 4
            if ((m % 4 == 1 || m % 4 == 2) && squarefree[static_cast<std::size_t>(m)]) ++count;
        }
    }
    return count;
}

}  // namespace

TEST_CASE("rational field gives the density of imaginary quadratic fields") {
    const double expected = 3.0 / (std::numbers::pi * std::numbers::pi);
    const Contribution c = field_contribution(rational_field(), 1e-9);
    CHECK(c.value == doctest::Approx(expected).epsilon(1e-9));
    CHECK(c.error_bound < 1e-8);

    const long long n = 1'000'000;
    const double density = static_cast<double>(count_imaginary_fundamental(n)) / static_cast<double>(n);
    CHECK(std::abs(density - expected) < 0.01 * expected);
}

TEST_CASE("contribution of Q(sqrt 5) from closed forms") {
    const FieldRecord f = catalog::synthesize_quadratic(5).records.front();
    const double sqrt5 = std::sqrt(5.0);
    const double l1 = 2.0 * std::log((1.0 + sqrt5) / 2.0) / sqrt5;
    const double zeta2 = 2.0 * std::pow(std::numbers::pi, 4) / (75.0 * sqrt5);
    const Contribution c = field_contribution(f, 1e-10);
    CHECK(c.value == doctest::Approx(l1 / (4.0 * zeta2 * 25.0)).epsilon(1e-8));
    CHECK(c.discriminant == 5);
    // zeta_F(2) > 1 caps every contribution.
    CHECK(c.value < l1 / (4.0 * 25.0));
}

TEST_CASE("partial sums grow strictly with the catalog") {
    const catalog::Catalog all = catalog::synthesize_quadratic(3000);
    double previous = 0.0;
    for (long long bound : {5LL, 100LL, 500LL, 1000LL, 3000LL}) {
        const ResidueReport r = residue_partial_sum(catalog::truncate(all, bound), {1e-6, 2, {}});
        CAPTURE(bound);
        CHECK(r.partial_sum > previous);
        previous = r.partial_sum;
        CHECK(r.n_fields == r.per_field.size());
        double direct = 0.0;
        for (const auto& c : r.per_field) {
            CHECK(c.value > 0.0);
            direct += c.value;
        }
        CHECK(r.partial_sum == doctest::Approx(direct).epsilon(1e-14));
    }
}

TEST_CASE("parallel and serial sums agree bit for bit") {
    const catalog::Catalog cat = catalog::synthesize_quadratic(5000);
    const ResidueReport one = residue_partial_sum(cat, {1e-4, 1, {}});
    const ResidueReport four = residue_partial_sum(cat, {1e-4, 4, {}});
    CHECK(one == four);
}

TEST_CASE("tail estimate from the count fit") {
    const ResidueReport r = residue_partial_sum(catalog::synthesize_quadratic(20000), {1e-4, 0, {}});
    // Quadratic fields grow linearly in the discriminant.
    CHECK(r.count_exponent == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::isfinite(r.tail_estimate));
    CHECK(r.tail_estimate > 0.0);
    CHECK(r.tail_estimate < r.partial_sum);
    CHECK(std::isnan(fit_count_growth({}).second));
}

TEST_CASE("errors: empty catalog, mixed labels, duplicate groups") {
    CHECK_THROWS_AS(residue_partial_sum(catalog::Catalog{}), DataError);
    catalog::Catalog mixed = catalog::synthesize_quadratic(20);
    mixed.records.back().galois_label = "2T2";
    CHECK_THROWS_WITH_AS(residue_partial_sum(mixed), doctest::Contains("mixes Galois labels"), DataError);

    std::vector<ResidueReport> reports(2);
    reports[0].degree = reports[1].degree = 3;
    reports[0].group = reports[1].group = "3T1";
    reports[0].partial_sum = reports[1].partial_sum = 1.0;
    CHECK_THROWS_WITH_AS(proportions(reports), doctest::Contains("duplicate group"), DataError);
    reports[1].group = "3T2";
    reports[1].degree = 4;
    CHECK_THROWS_AS(proportions(reports), DataError);
}

TEST_CASE("proportions") {
    std::vector<ResidueReport> single(1);
    single[0].degree = 2;
    single[0].group = "2T1";
    single[0].partial_sum = 0.01;
    CHECK(proportions(single).front().second == 1.0);
    CHECK(single[0].proportion == 1.0);

    std::vector<ResidueReport> three(3);
    const double sums[] = {3e-5, 1e-5, 7e-9};
    for (int i = 0; i < 3; ++i) {
        three[i].degree = 4;
        three[i].group = "4T" + std::to_string(i + 1);
        three[i].partial_sum = sums[i];
    }
    double total = 0.0;
    for (const auto& [group, share] : proportions(three)) {
        CHECK(share > 0.0);
        CHECK(share <= 1.0);
        total += share;
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("cyclic cubics dominate non-Galois cubics below 1000") {
    const auto path = kData / "fields" / "degree3.tsv";
    if (!std::filesystem::exists(path)) return;
    const auto c3 = catalog::truncate(catalog::load(path, 3, "3T1"), 1000);
    const auto s3 = catalog::truncate(catalog::load(path, 3, "3T2"), 1000);
    REQUIRE(c3.records.size() == 5);  // conductors 7, 9, 13, 19, 31
    const double c3_sum = residue_partial_sum(c3).partial_sum;
    const double s3_sum = residue_partial_sum(s3).partial_sum;
    CHECK(c3_sum > s3_sum);
}
