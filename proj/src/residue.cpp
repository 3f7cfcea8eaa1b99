#include <cmweyl/residue.hpp>
#include <cmweyl/arith.hpp>
#include <cmweyl/error.hpp>

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

namespace cmweyl::residue {

Contribution field_contribution(const FieldRecord& record, double tol, const zeta::ZetaConfig& config) {
    const double res = zeta::residue_zeta(record);
    const zeta::EulerProductValue z = zeta::zeta_f_at_2(record, tol, config);
    const double d = static_cast<double>(record.discriminant);
    const double scale = std::ldexp(res, -record.degree) / (d * d);
    Contribution c;
    c.label = record.label;
    c.discriminant = record.discriminant;
    c.value = scale / z.value;
    // zeta_F(2) >= 1 always, so the lower end of the bracket stays positive.
    const double lower = std::max(1.0, z.value - z.tail_bound);
    c.error_bound = scale / lower - c.value;
    return c;
}

std::pair<double, double> fit_count_growth(const std::vector<Contribution>& fields) {
    const std::size_t n = fields.size();
    if (n < 4) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t i = n / 2; i < n; ++i) {
        const double x = std::log(static_cast<double>(fields[i].discriminant));
        const double y = std::log(static_cast<double>(i + 1));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    const double denom = m * sxx - sx * sx;
    if (denom <= 0) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    const double a = (m * sxy - sx * sy) / denom;
    const double log_c = (sy - a * sx) / m;
    return {std::exp(log_c), a};
}

ResidueReport residue_partial_sum(const catalog::Catalog& catalog, const SumOptions& options) {
    const auto& records = catalog.records;
    if (records.empty()) throw DataError("residue sum needs a nonempty catalog");
    for (const auto& r : records)
        if (r.galois_label != records.front().galois_label)
            throw DataError("catalog mixes Galois labels " + records.front().galois_label + " and " + r.galois_label);

    // Each worker writes its own slots; the sum below runs in catalog order,
    // so the result does not depend on scheduling.
    std::vector<Contribution> per_field(records.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < records.size(); i = next++) {
            try {
                per_field[i] = field_contribution(records[i], options.tol, options.zeta);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = records.size();
            }
        }
    };
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, records.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    ResidueReport report;
    report.degree = catalog.degree;
    report.group = records.front().galois_label;
    report.n_fields = records.size();
    report.min_disc = records.front().discriminant;
    report.max_disc = records.back().discriminant;
    arith::CompensatedSum sum, err;
    for (const auto& c : per_field) {
        sum.add(c.value);
        err.add(c.error_bound);
    }
    report.partial_sum = sum.value();
    report.error_bound = err.value();

    const auto [c, a] = fit_count_growth(per_field);
    report.count_exponent = a;
    report.tail_estimate = std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(a) && a > 0 && a < 2) {
        // Mean of R_d(F) over the upper half, times the integral of
        // c a T^{a-1} / T^2 from max_disc to infinity.
        arith::CompensatedSum weight;
        const std::size_t half = per_field.size() / 2;
        for (std::size_t i = half; i < per_field.size(); ++i) {
            const double d = static_cast<double>(per_field[i].discriminant);
            weight.add(per_field[i].value * d * d);
        }
        const double mean = weight.value() / static_cast<double>(per_field.size() - half);
        const double t = static_cast<double>(report.max_disc);
        report.tail_estimate = mean * c * a * std::pow(t, a - 2) / (2 - a);
    }
    report.per_field = std::move(per_field);
    return report;
}

std::vector<std::pair<std::string, double>> proportions(std::vector<ResidueReport>& reports) {
    if (reports.empty()) return {};
    std::set<std::string> groups;
    arith::CompensatedSum total;
    for (const auto& r : reports) {
        if (r.degree != reports.front().degree) throw DataError("proportions need reports of a single degree");
        if (!groups.insert(r.group).second) throw DataError("duplicate group " + r.group);
        total.add(r.partial_sum);
    }
    if (!(total.value() > 0)) throw DataError("proportions need a positive total");
    std::vector<std::pair<std::string, double>> out;
    for (auto& r : reports) {
        r.proportion = r.partial_sum / total.value();
        out.emplace_back(r.group, *r.proportion);
    }
    return out;
}

}  // namespace cmweyl::residue
