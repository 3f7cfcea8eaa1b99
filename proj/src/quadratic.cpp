#include <cmweyl/quadratic.hpp>
#include <cmweyl/arith.hpp>
#include <cmweyl/error.hpp>

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace cmweyl::quadratic {

namespace {

void require_real_fundamental(long long disc) {
    if (disc <= 1 || !arith::is_fundamental_discriminant(disc))
        throw DataError("D = " + std::to_string(disc) + " is not a real quadratic fundamental discriminant");
}

struct Form {
    long long a, b, c;
};

// Gauss reduction for indefinite forms: 0 < b < sqrt D, sqrt D - b < 2|a| < sqrt D + b.
bool is_reduced(long long disc, long long a, long long b) {
    const long long a2 = 2 * (a < 0 ? -a : a);
    if (b <= 0 || b * b >= disc) return false;
    if ((a2 + b) * (a2 + b) <= disc) return false;
    const long long diff = a2 - b;
    return diff <= 0 || diff * diff < disc;
}

// rho(a, b, c) = (c, b', (b'^2 - D) / 4c) with b' = -b mod 2|c| taken just below sqrt D.
Form rho(long long disc, long long root, const Form& f) {
    const long long two_c = 2 * (f.c < 0 ? -f.c : f.c);
    const long long k = (root + f.b) / two_c;
    const long long b = -f.b + two_c * k;
    return {f.c, b, (b * b - disc) / (4 * f.c)};
}

long long key(const Form& f) { return f.a * 4'000'000'000LL + f.b; }

}  // namespace

RealQuadraticInvariants regulator(long long disc) {
    require_real_fundamental(disc);
    const auto root = static_cast<long long>(arith::isqrt(static_cast<std::uint64_t>(disc)));
    const double sqrt_d = std::sqrt(static_cast<double>(disc));
    long long b0 = root;
    if ((b0 - disc) % 2 != 0) --b0;
    // theta_0 = (b0 + sqrt D)/2 is reduced and Z + Z theta_0 = O_F.
    const long long p0 = b0;
    const long long q0 = 2;
    long long p = p0;
    long long q = q0;
    arith::CompensatedSum log_sum;
    std::int64_t period = 0;
    do {
        log_sum.add(std::log((static_cast<double>(p) + sqrt_d) / static_cast<double>(q)));
        const long long a = (p + root) / q;
        p = a * q - p;
        q = (disc - p * p) / q;
        ++period;
    } while (p != p0 || q != q0);

    RealQuadraticInvariants out;
    out.disc = disc;
    out.regulator = log_sum.value();
    out.period_length = period;
    out.unit_norm = period % 2 == 0 ? 1 : -1;
    return out;
}

RealQuadraticInvariants invariants(long long disc) {
    RealQuadraticInvariants out = regulator(disc);
    const auto root = static_cast<long long>(arith::isqrt(static_cast<std::uint64_t>(disc)));

    std::unordered_set<long long> seen;
    std::int64_t cycles = 0;
    for (long long b = (disc % 2 == 0) ? 2 : 1; b <= root; b += 2) {
        const long long n = (disc - b * b) / 4;
        // (sqrt D - b)/2 < |a| < (sqrt D + b)/2
        for (long long a = std::max(1LL, (root - b) / 2); a <= (root + b) / 2 + 1; ++a) {
            if (n % a != 0) continue;
            for (long long sign : {1LL, -1LL}) {
                const long long sa = sign * a;
                if (!is_reduced(disc, sa, b)) continue;
                Form start{sa, b, -n / sa};
                if (seen.count(key(start))) continue;
                ++cycles;
                Form f = start;
                do {
                    seen.insert(key(f));
                    f = rho(disc, root, f);
                } while (f.a != start.a || f.b != start.b);
            }
        }
    }
    out.narrow_class_number = cycles;
    out.class_number = out.unit_norm == -1 ? cycles : cycles / 2;
    return out;
}

}  // namespace cmweyl::quadratic
