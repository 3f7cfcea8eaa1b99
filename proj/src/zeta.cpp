#include <cmweyl/zeta.hpp>
#include <cmweyl/error.hpp>

#include <boost/math/constants/constants.hpp>

#include <cfloat>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace cmweyl::zeta {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();
constexpr double kZeta2 = kPi * kPi / 6.0;

std::string format_sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

void require_fundamental(long long disc) {
    if (!arith::is_fundamental_discriminant(disc))
        throw DataError("D = " + std::to_string(disc) + " is not a fundamental discriminant");
}

EulerProductValue l_at_one(long long disc) {
    const long long n = disc < 0 ? -disc : disc;
    arith::CompensatedSum sum;
    EulerProductValue out;
    if (disc > 0) {
        // L(1, chi_D) = -(1/sqrt D) sum_{a<D} chi(a) log sin(pi a / D); chi is even.
        for (long long a = 1; 2 * a < n; ++a) {
            const int chi = kronecker(disc, a);
            if (chi) sum.add(chi * std::log(std::sin(kPi * static_cast<double>(a) / static_cast<double>(n))));
        }
        const double sqrt_d = std::sqrt(static_cast<double>(n));
        out.value = -2.0 * sum.value() / sqrt_d;
        const double term_max = std::log(static_cast<double>(n)) + 1.0;
        out.tail_bound = 8.0 * DBL_EPSILON * term_max * static_cast<double>(n) / sqrt_d;
    } else {
        // L(1, chi_D) = -(pi / |D|^{3/2}) sum_{a<|D|} a chi(a); the sum is exact.
        long long s = 0;
        for (long long a = 1; a < n; ++a) s += a * kronecker(disc, a);
        const double scale = kPi / std::pow(static_cast<double>(n), 1.5);
        out.value = -scale * static_cast<double>(s);
        out.tail_bound = 4.0 * DBL_EPSILON * std::abs(out.value);
    }
    return out;
}

EulerProductValue l_at_two(long long disc, double tol) {
    EulerProductValue out;
    const double n_abs = static_cast<double>(disc < 0 ? -disc : disc);
    if (disc == 1) {
        // 1/(N+1) < sum_{n>N} n^-2 < 1/N; take the midpoint.
        const auto cutoff = static_cast<long long>(std::ceil(std::sqrt(0.5 / (0.9 * tol)))) + 1;
        arith::CompensatedSum sum;
        for (long long k = cutoff; k >= 1; --k) sum.add(1.0 / (static_cast<double>(k) * static_cast<double>(k)));
        const double c = static_cast<double>(cutoff);
        sum.add(0.5 * (1.0 / c + 1.0 / (c + 1.0)));
        out.value = sum.value();
        out.tail_bound = 0.5 / (c * (c + 1.0)) + 4.0 * DBL_EPSILON * out.value;
        return out;
    }
    // Whole periods: |sum_{n>N} chi(n)/n^2| <= (|D|/2) / N^2 by partial summation.
    const auto period = static_cast<long long>(n_abs);
    const double need = std::sqrt(n_abs / (1.8 * tol));
    const long long periods = static_cast<long long>(std::ceil(need / n_abs)) + 1;
    const long long cutoff = periods * period;
    std::vector<int> chi(static_cast<std::size_t>(period));
    for (long long a = 0; a < period; ++a) chi[static_cast<std::size_t>(a)] = kronecker(disc, a);
    arith::CompensatedSum sum;
    for (long long k = cutoff; k >= 1; --k) {
        const int c = chi[static_cast<std::size_t>(k % period)];
        if (c) sum.add(c / (static_cast<double>(k) * static_cast<double>(k)));
    }
    out.value = sum.value();
    const double c = static_cast<double>(cutoff);
    out.tail_bound = 0.5 * n_abs / (c * c) + 4.0 * DBL_EPSILON;
    return out;
}

// Upper bound for sum_{p > P} 1/(p^2 - 1), from pi(x) < 1.25506 x / log x.
double prime_tail(std::uint32_t cutoff) {
    const double p = std::max<double>(cutoff, 17.0);
    const double correction = 1.0 / (1.0 - 1.0 / (p * p));
    return 2.0 * 1.25506 / (p * std::log(p)) * correction * correction;
}

struct IndexData {
    poly::BigInt index_squared;  // disc(poly) / d_F
};

IndexData index_data(const FieldRecord& record) {
    const poly::BigInt disc = abs(poly::discriminant(record.poly));
    if (record.discriminant <= 0 || disc % record.discriminant != 0)
        throw DataError(record.label + ": field discriminant does not divide disc(poly)");
    return {disc / record.discriminant};
}

// Divisibility by small primes, with a 64-bit fast path for the common case.
class DivisibilityTest {
public:
    explicit DivisibilityTest(const poly::BigInt& n) : big_(n) {
        if (n <= std::numeric_limits<std::uint64_t>::max()) small_ = static_cast<std::uint64_t>(n);
    }
    bool operator()(std::uint32_t p) const { return small_ ? *small_ % p == 0 : big_ % p == 0; }

private:
    poly::BigInt big_;
    std::optional<std::uint64_t> small_;
};

// log of the local factor prod_i (1 - p^{-2 f_i})^{-1}.
double local_log(std::uint32_t p, const std::vector<int>& degrees) {
    double s = 0.0;
    const double inv_p2 = 1.0 / (static_cast<double>(p) * static_cast<double>(p));
    for (int f : degrees) s -= std::log1p(-std::pow(inv_p2, f));
    return s;
}

EulerProductValue euler_product(const FieldRecord& record, std::uint32_t cutoff) {
    const int d = record.degree;
    const IndexData idx = index_data(record);
    const poly::BigInt poly_disc = abs(poly::discriminant(record.poly));
    const auto primes = arith::primes_up_to(cutoff);
    const DivisibilityTest divides_disc(poly_disc);
    const DivisibilityTest divides_index(idx.index_squared);
    std::optional<long long> quadratic_disc;
    if (d == 2) quadratic_disc = static_cast<long long>(poly::discriminant(record.poly));

    arith::CompensatedSum log_sum;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    std::size_t used = 0;
    for (std::uint32_t p : *primes) {
        if (p > cutoff) break;
        ++used;
        if (d == 1) {
            log_sum.add(local_log(p, {1}));
            continue;
        }
        const bool disc_divisible = divides_disc(p);
        if (disc_divisible && divides_index(p)) {
            const LocalFactor* override_factor = nullptr;
            for (const auto& lf : record.local_factors)
                if (lf.p == p) override_factor = &lf;
            if (override_factor) {
                log_sum.add(local_log(p, override_factor->residue_degrees));
            } else {
                // Inert (one prime of degree d) and totally split bound the factor.
                bracket_lo += local_log(p, {d});
                bracket_hi += local_log(p, std::vector<int>(static_cast<std::size_t>(d), 1));
            }
            continue;
        }
        if (quadratic_disc) {
            // For a quadratic order of discriminant D the shape is read off (D | p).
            const int chi = kronecker(*quadratic_disc, p);
            log_sum.add(chi == 1 ? 2.0 * local_log(p, {1}) : local_log(p, {chi == 0 ? 1 : 2}));
            continue;
        }
        log_sum.add(local_log(p, poly::factor_shape_mod_p(record.poly, p, !disc_divisible).degrees));
    }
    const double tail = euler_tail_log(cutoff, d);
    const double lo = std::exp(log_sum.value() + bracket_lo);
    const double hi = std::exp(log_sum.value() + bracket_hi + tail);
    EulerProductValue out;
    out.value = 0.5 * (lo + hi);
    out.tail_bound = 0.5 * (hi - lo) + 8.0 * DBL_EPSILON * hi;
    out.primes_used = used;
    return out;
}

}  // namespace

EulerProductValue l_value(long long disc, int s, double tol) {
    require_fundamental(disc);
    if (!(tol > 0.0)) throw DataError("tolerance must be positive");
    EulerProductValue out;
    if (s == 1) {
        if (disc == 1) throw DataError("L(s, chi_1) = zeta(s) has a pole at s = 1");
        out = l_at_one(disc);
    } else if (s == 2) {
        out = l_at_two(disc, tol);
    } else {
        throw DataError("l_value supports s = 1 and s = 2 only");
    }
    if (out.tail_bound > tol)
        throw DataError("L-value bound " + std::to_string(out.tail_bound) + " exceeds tolerance");
    return out;
}

SplittingType splitting_type(const poly::IntPoly& poly, std::uint32_t p,
                             std::optional<std::int64_t> field_discriminant) {
    if (!poly::is_monic(poly)) throw DataError("splitting_type requires a monic polynomial");
    SplittingType out;
    out.p = p;
    const poly::ModPShape shape = poly::factor_shape_mod_p(poly, p);
    out.degrees = shape.degrees;
    out.ramified = !shape.squarefree;
    if (field_discriminant) {
        const poly::BigInt disc = abs(poly::discriminant(poly));
        if (*field_discriminant > 0 && disc % *field_discriminant == 0) {
            const poly::BigInt ratio = disc / *field_discriminant;
            out.index_divisor = ratio % (static_cast<std::uint64_t>(p) * p) == 0;
        }
    }
    return out;
}

double euler_tail_log(std::uint32_t cutoff, int degree) { return degree * prime_tail(cutoff); }

EulerProductValue zeta_f_at_2_with_cutoff(const FieldRecord& record, std::uint32_t cutoff) {
    if (record.degree < 1 || poly::degree(record.poly) != record.degree || !poly::is_monic(record.poly))
        throw DataError(record.label + ": record needs a monic defining polynomial of its degree");
    return euler_product(record, std::max<std::uint32_t>(cutoff, 2));
}

EulerProductValue zeta_f_at_2(const FieldRecord& record, double tol, const ZetaConfig& config) {
    if (!(tol > 0.0)) throw DataError("tolerance must be positive");
    const int d = record.degree;
    if (d == 1 && record.discriminant == 1) return {kZeta2, 8.0 * DBL_EPSILON * kZeta2, 0};

    // zeta_F(2) <= zeta(2)^d; find the smallest cut-off whose tail meets tol.
    const double ceiling = std::pow(kZeta2, d);
    auto tail_ok = [&](std::uint32_t cutoff) {
        return 0.5 * ceiling * std::expm1(euler_tail_log(cutoff, d)) <= 0.9 * tol;
    };
    std::optional<std::uint32_t> cutoff;
    std::uint32_t hi = 64;
    while (!tail_ok(hi) && hi < config.prime_cap)
        hi = static_cast<std::uint32_t>(std::min<std::uint64_t>(std::uint64_t{hi} * 2, config.prime_cap));
    if (tail_ok(hi)) {
        std::uint32_t lo = hi / 2;
        while (lo + 1 < hi) {
            const std::uint32_t mid = lo + (hi - lo) / 2;
            (tail_ok(mid) ? hi : lo) = mid;
        }
        cutoff = hi;
    }

    if (d == 2) {
        // zeta_F = zeta * L(s, chi_D) for the quadratic field of discriminant D.
        // Summing the character costs about max(D, sqrt(D / tol)) terms, the
        // Euler product about cutoff / log(cutoff) primes; take the cheaper.
        const double l_tol = tol / (2.0 * kZeta2);
        const double n = static_cast<double>(record.discriminant);
        const double l_cost = std::max(n, std::sqrt(n / (1.8 * l_tol)));
        const double euler_cost = cutoff ? *cutoff / std::log(static_cast<double>(*cutoff)) : HUGE_VAL;
        if (l_cost < euler_cost && arith::is_fundamental_discriminant(record.discriminant)) {
            const EulerProductValue l2 = l_value(record.discriminant, 2, l_tol);
            return {kZeta2 * l2.value, kZeta2 * l2.tail_bound + 8.0 * DBL_EPSILON * kZeta2 * l2.value, 0};
        }
    }
    if (!cutoff) {
        const double achieved = 0.5 * ceiling * std::expm1(euler_tail_log(config.prime_cap, d));
        throw DataError(record.label + ": tolerance unreachable under prime cap " + std::to_string(config.prime_cap) +
                        "; achieved bound " + format_sci(achieved));
    }
    EulerProductValue out = zeta_f_at_2_with_cutoff(record, *cutoff);
    if (out.tail_bound > tol)
        throw DataError(record.label + ": local-factor gaps leave bound " + format_sci(out.tail_bound) +
                        " above tolerance");
    return out;
}

double residue_zeta(const FieldRecord& record) {
    if (!record.class_number || !record.regulator)
        throw DataError(record.label + ": incomplete record (class number or regulator missing)");
    if (record.discriminant <= 0) throw DataError(record.label + ": discriminant must be positive");
    return std::ldexp(1.0, record.r1) * std::pow(2.0 * kPi, record.r2) *
           static_cast<double>(*record.class_number) * *record.regulator /
           (record.roots_of_unity * std::sqrt(static_cast<double>(record.discriminant)));
}

}  // namespace cmweyl::zeta
