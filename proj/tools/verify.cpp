#include "verify.hpp"

#include <cmweyl/catalog.hpp>
#include <cmweyl/cm.hpp>
#include <cmweyl/error.hpp>
#include <cmweyl/exponent.hpp>
#include <cmweyl/perm.hpp>
#include <cmweyl/residue.hpp>
#include <cmweyl/zeta.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>

namespace cmweyl::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4e", v);
    return buf;
}

std::string fixed(double v, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

struct Checker {
    CriterionResult& result;

    void check(bool ok, std::string line) {
        result.details.push_back(std::string(ok ? "ok    " : "FAIL  ") + line);
        result.pass = result.pass && ok;
    }

    void relative(const std::string& what, double value, double target, double rel) {
        const double dev = std::fabs(value / target - 1);
        check(dev <= rel, what + " = " + sci(value) + ", target " + sci(target) + " +- " + fixed(100 * rel, 0) +
                              "% (off by " + fixed(100 * dev, 2) + "%)");
    }

    void absolute(const std::string& what, double value, double target, double tol) {
        const double dev = std::fabs(value - target);
        check(dev <= tol, what + " = " + fixed(value, 4) + ", target " + fixed(target, 4) + " +- " + fixed(tol, 4));
    }

    void within_time(double seconds, double limit) {
        check(seconds < limit, "runtime " + fixed(seconds, 1) + " s, limit " + fixed(limit, 0) + " s");
    }
};

catalog::Catalog bundled(const VerifyOptions& o, int degree, const std::string& group) {
    return catalog::load(o.data_dir / "fields" / ("degree" + std::to_string(degree) + ".tsv"), degree, group);
}

struct GroupTarget {
    std::string group;
    double residue;
    double proportion;
};

// Residues and proportions for every group of a degree from the bundled snapshot.
void check_degree(Checker& c, const VerifyOptions& o, int degree, const std::vector<GroupTarget>& targets,
                  double residue_rel, double proportion_abs) {
    std::vector<residue::ResidueReport> reports;
    residue::SumOptions opts;
    opts.threads = o.threads;
    for (const auto& t : targets) reports.push_back(residue::residue_partial_sum(bundled(o, degree, t.group), opts));
    residue::proportions(reports);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto& r = reports[i];
        const std::string tag = "r_" + std::to_string(degree) + "(" + targets[i].group + ") over " +
                                std::to_string(r.n_fields) + " fields";
        c.relative(tag, r.partial_sum, targets[i].residue, residue_rel);
        c.absolute("proportion " + targets[i].group, *r.proportion, targets[i].proportion, proportion_abs);
    }
}

void criterion_1(Checker& c, const VerifyOptions& o) {
    const auto start = Clock::now();
    residue::SumOptions opts;
    opts.threads = o.threads;
    const auto report = residue::residue_partial_sum(catalog::synthesize_quadratic(100000), opts);
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    c.check(report.n_fields > 0 && report.min_disc == 5,
            std::to_string(report.n_fields) + " real quadratic fields, minimal discriminant " +
                std::to_string(report.min_disc));
    c.check(std::fabs(report.partial_sum - 0.009856) <= 0.0005,
            "r_2(C2) = " + fixed(report.partial_sum, 6) + ", target 0.009856 +- 0.0005");
    c.within_time(seconds, 60);
}

void criterion_2(Checker& c, const VerifyOptions& o) {
    const auto start = Clock::now();
    check_degree(c, o, 3, {{"C3", 2.29e-5, 0.69}, {"S3", 1.01e-5, 0.31}}, 0.05, 0.02);
    c.within_time(std::chrono::duration<double>(Clock::now() - start).count(), 120);
}

void criterion_3(Checker& c, const VerifyOptions& o) {
    check_degree(c, o, 4,
                 {{"C4", 2.41e-8, 0.19}, {"V4", 1.56e-8, 0.13}, {"D4", 5.9e-8, 0.48}, {"A4", 9.3e-11, 0.0008},
                  {"S4", 2.5e-8, 0.20}},
                 0.10, 0.03);
    check_degree(c, o, 5,
                 {{"C5", 3.08e-11, 0.29}, {"D5", 4.24e-13, 0.003}, {"F5", 9e-15, 0.00009}, {"A5", 5e-15, 0.00005},
                  {"S5", 7.4e-11, 0.70}},
                 0.10, 0.03);
}

// Imaginary quadratic fundamental discriminants -n with n <= limit, from a
// squarefree sieve: n = 3 mod 4 squarefree, or n = 4m with m = 1, 2 mod 4
// squarefree.
long long count_imaginary_fundamental(long long limit) {
    std::vector<bool> squarefree(static_cast<std::size_t>(limit) + 1, true);
    for (long long k = 2; k * k <= limit; ++k)
        for (long long m = k * k; m <= limit; m += k * k) squarefree[static_cast<std::size_t>(m)] = false;
    long long count = 0;
    for (long long n = 3; n <= limit; ++n) {
        if (n % 4 == 3 && squarefree[static_cast<std::size_t>(n)]) ++count;
        if (n % 4 == 0) {
            const long long m = n / 4;
            if ((m % 4 == 1 || m % 4 == 2) && squarefree[static_cast<std::size_t>(m)]) ++count;
        }
    }
    return count;
}

void criterion_4(Checker& c, const VerifyOptions&) {
    const double target = 3 / (std::numbers::pi * std::numbers::pi);
    FieldRecord q;
    q.label = "1.1.1.1";
    q.degree = 1;
    q.discriminant = 1;
    q.poly = {0, 1};
    q.galois_label = "1T1";
    q.class_number = 1;
    q.regulator = 1.0;
    q.r1 = 1;
    const auto contribution = residue::field_contribution(q, 1e-9);
    c.check(std::fabs(contribution.value - target) <= 1e-6,
            "contribution of Q = " + fixed(contribution.value, 10) + ", 3/pi^2 = " + fixed(target, 10) + " +- 1e-6");
    const double density = static_cast<double>(count_imaginary_fundamental(1000000)) / 1e6;
    c.check(std::fabs(density / target - 1) <= 0.01,
            "imaginary fundamental discriminants to 1e6 / 1e6 = " + fixed(density, 6) + ", 3/pi^2 +- 1%");
}

void criterion_5(Checker& c, const VerifyOptions&) {
    using exponent::parse_rational;
    using exponent::to_string;
    exponent::ExponentInput in{5, parse_rational("2/5"), parse_rational("1"), parse_rational("1/2")};
    const auto set = exponent::c2_c3({{"G", in}});
    const auto& g = set.binding();
    auto exact = [&](const char* what, const exponent::Rational& v, const char* want) {
        c.check(v == parse_rational(want), std::string(what) + " = " + to_string(v) + ", expected " + want);
    };
    exact("C1", g.c1, "3/10");
    exact("alpha", g.alpha, "19/25");
    exact("beta", g.beta, "17/20");
    exact("C2", g.c2, "3/20");
    exact("C3", set.c3, "3/20");
    exponent::ExponentInput plain{5, parse_rational("0"), parse_rational("1"), parse_rational("0")};
    exact("C3 at delta = delta' = 0", exponent::c2_c3({{"G", plain}}).c3, "1/2");
}

void criterion_6(Checker& c, const VerifyOptions&) {
    const auto start = Clock::now();
    int groups = 0, bad_order = 0, abelian = 0, bad_orbit = 0;
    for (int d = 2; d <= 5; ++d) {
        for (const auto& tg : perm::transitive_groups(d)) {
            ++groups;
            const auto w = perm::wreath_c2(tg.group());
            if (w.order() != (std::size_t{1} << d) * tg.order) ++bad_order;
            if (perm::is_abelian(w)) ++abelian;
            for (std::uint32_t bits = 0; bits < (1u << d); ++bits)
                if (perm::cm_type_orbit(w, {d, bits}) != (std::size_t{1} << d)) ++bad_orbit;
        }
        const auto sd = perm::transitive_groups(d).back();
        const auto a = perm::min_index_and_a(sd.group()).a;
        c.check(a == perm::Rational(1), "a(S_" + std::to_string(d) + ") = " + std::to_string(a.numerator()) +
                                            (a.denominator() == 1 ? "" : "/" + std::to_string(a.denominator())));
    }
    c.check(bad_order == 0, std::to_string(groups - bad_order) + "/" + std::to_string(groups) +
                                " groups with |C2 wr G| = 2^d |G|");
    c.check(abelian == 0, std::to_string(groups - abelian) + "/" + std::to_string(groups) + " wreath products non-abelian");
    c.check(bad_orbit == 0, std::to_string(bad_orbit) + " CM-type masks with orbit size below 2^d");
    c.within_time(std::chrono::duration<double>(Clock::now() - start).count(), 30);
}

void criterion_7(Checker& c, const VerifyOptions& o) {
    const auto start = Clock::now();
    const std::int64_t X = 100000;
    const auto records = cm::enumerate_all(X, o.threads);
    const auto report = cm::count_records(records, X);
    const double density = static_cast<double>(report.n_cm) / static_cast<double>(X);
    c.relative("N_cm(1e5) / 1e5 (" + std::to_string(report.n_cm) + " extensions)", density, 0.009856, 0.15);
    double prev = -1;
    bool monotone = true;
    std::string ratios;
    for (std::int64_t x : {1000, 10000, 100000}) {
        const double r = cm::count_records(records, x).ratio_weyl;
        monotone = monotone && r > prev;
        prev = r;
        ratios += (ratios.empty() ? "" : ", ") + fixed(r, 4);
    }
    c.check(monotone, "Weyl share at 1e3, 1e4, 1e5: " + ratios + " (strictly increasing)");
    std::string points;
    for (const auto& [x, n] : report.checkpoints)
        points += (points.empty() ? "" : ", ") + std::to_string(x) + ":" + std::to_string(n);
    c.check(report.slope_fit <= 0.6, "growth exponent of non-Weyl count = " + fixed(report.slope_fit, 3) +
                                         ", limit 0.6 (X:count " + points + ")");
    c.within_time(std::chrono::duration<double>(Clock::now() - start).count(), 600);
}

void criterion_8(Checker& c, const VerifyOptions&) {
    const auto quadratics = catalog::synthesize_quadratic(10000);
    double worst = 0;
    std::int64_t worst_disc = 0;
    int failures = 0;
    for (const auto& f : quadratics.records) {
        const double via_class_number = zeta::residue_zeta(f);
        const auto l = zeta::l_value(static_cast<long long>(f.discriminant), 1, 1e-9);
        const double gap = std::fabs(via_class_number - l.value);
        if (gap > 1e-8 + l.tail_bound) ++failures;
        if (gap > worst) {
            worst = gap;
            worst_disc = f.discriminant;
        }
    }
    c.check(failures == 0, std::to_string(quadratics.records.size()) +
                               " fundamental D <= 1e4: residue vs L(1, chi_D), largest gap " + sci(worst) + " at D = " +
                               std::to_string(worst_disc) + ", limit 1e-8 + tail");
    const auto zeta5 = cm::make_record(5, cm::Q(-5, 2), cm::Q(1, 2));
    c.check(cm::classify_galois(zeta5) == cm::GaloisType::C4 && zeta5.abs_disc == 125,
            "Q(zeta_5): " + cm::to_string(cm::classify_galois(zeta5)) + ", |d| = " + std::to_string(zeta5.abs_disc) +
                " (expected C4, 125)");
    const auto zeta8 = cm::make_record(8, cm::Q(-1), cm::Q(0));
    c.check(cm::classify_galois(zeta8) == cm::GaloisType::V4 && zeta8.abs_disc == 256,
            "Q(zeta_8): " + cm::to_string(cm::classify_galois(zeta8)) + ", |d| = " + std::to_string(zeta8.abs_disc) +
                " (expected V4, 256)");
}

struct Criterion {
    int id;
    const char* title;
    std::function<void(Checker&, const VerifyOptions&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {1, "degree-2 residue from synthesized quadratic fields", criterion_1},
        {2, "degree-3 residues and proportions", criterion_2},
        {3, "degree-4 and degree-5 residues and proportions", criterion_3},
        {4, "rational field and fundamental discriminant density", criterion_4},
        {5, "exponent golden values", criterion_5},
        {6, "wreath products of transitive groups of degree 2 to 5", criterion_6},
        {7, "quartic CM field counts", criterion_7},
        {8, "residue against L(1, chi) and cyclotomic Galois types", criterion_8},
    };
    return list;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options, std::ostream* progress) {
    std::vector<CriterionResult> out;
    for (const auto& crit : criteria()) {
        if (!options.only.empty() && !options.only.count(crit.id)) continue;
        CriterionResult result;
        result.id = crit.id;
        result.title = crit.title;
        result.pass = true;
        Checker checker{result};
        if (progress) *progress << "running criterion " << crit.id << ": " << crit.title << std::endl;
        const auto start = Clock::now();
        try {
            crit.run(checker, options);
        } catch (const std::exception& e) {
            checker.check(false, std::string("error: ") + e.what());
        }
        result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        out.push_back(std::move(result));
    }
    return out;
}

void print_results(const std::vector<CriterionResult>& results, std::ostream& out) {
    for (const auto& r : results) {
        char head[64];
        std::snprintf(head, sizeof head, "%s  %d  ", r.pass ? "PASS" : "FAIL", r.id);
        out << head << r.title << "  (" << fixed(r.seconds, 1) << " s)\n";
        for (const auto& line : r.details) out << "        " << line << '\n';
    }
    int passed = 0;
    for (const auto& r : results) passed += r.pass;
    out << passed << "/" << results.size() << " criteria passed\n";
}

}  // namespace cmweyl::cli
