// Hunter search for totally real quintic fields with |d_K| <= B.
//
// Every such field has an integral generator whose trace t lies in {0, 1, 2}
// and whose power sum s2 = sum of squared conjugates is at most
// t^2/5 + sqrt(2) (B/5)^{1/4}. We walk the characteristic polynomials
//   x^5 + a4 x^4 + a3 x^3 + a2 x^2 + a1 x + a0
// of such generators, bounding each coefficient by Rolle's theorem: if f has
// only real roots then so does every derivative, so f^{(k)} must alternate in
// sign at the roots of f^{(k+1)}. A polynomial survives if its discriminant
// can be B times a square; the survivors are printed one per line as
// comma-separated coefficients (constant term first) for PARI to reduce.
//
// Build: g++ -O2 -std=c++20 quintic_search.cpp -o quintic_search
// Usage: quintic_search B > candidates.txt

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <vector>

using ld = long double;
using i128 = __int128;
using u64 = std::uint64_t;

namespace {

ld eval(const std::vector<ld>& g, ld x) {
    ld v = 0;
    for (auto it = g.rbegin(); it != g.rend(); ++it) v = v * x + *it;
    return v;
}

std::vector<ld> derivative(const std::vector<ld>& g) {
    std::vector<ld> d;
    for (std::size_t i = 1; i < g.size(); ++i) d.push_back(g[i] * static_cast<ld>(i));
    return d;
}

// Real roots of g, assumed to have only real roots (possibly repeated), ascending.
std::vector<ld> real_roots(const std::vector<ld>& g) {
    const std::size_t m = g.size() - 1;
    if (m == 1) return {-g[0] / g[1]};
    ld bound = 0;
    for (std::size_t i = 0; i < m; ++i) bound = std::max(bound, std::fabs(g[i] / g[m]));
    bound += 1;
    std::vector<ld> crit = real_roots(derivative(g));
    std::vector<ld> edges{-bound};
    edges.insert(edges.end(), crit.begin(), crit.end());
    edges.push_back(bound);
    std::vector<ld> roots;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        ld lo = edges[i], hi = edges[i + 1];
        ld flo = eval(g, lo), fhi = eval(g, hi);
        if ((flo < 0) == (fhi < 0)) {
            roots.push_back(std::fabs(flo) < std::fabs(fhi) ? lo : hi);
            continue;
        }
        for (int it = 0; it < 100 && hi - lo > 1e-15L * (1 + std::fabs(lo)); ++it) {
            const ld mid = (lo + hi) / 2;
            const ld fm = eval(g, mid);
            if ((fm < 0) == (flo < 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        roots.push_back((lo + hi) / 2);
    }
    return roots;
}

// Range of the constant term c of g = h + c so that g alternates in sign at
// the roots of g' (ascending): g(beta_last) <= 0, g(beta_last-1) >= 0, ...
bool rolle_range(const std::vector<ld>& h, ld scale, long long& lo, long long& hi) {
    const std::vector<ld> crit = real_roots(derivative(h));
    ld lower = -1e30L, upper = 1e30L;
    const std::size_t m = crit.size();
    for (std::size_t j = 0; j < m; ++j) {
        const ld v = -eval(h, crit[j]) / scale;
        if ((m - 1 - j) % 2 == 0)
            upper = std::min(upper, v);
        else
            lower = std::max(lower, v);
    }
    constexpr ld slack = 1e-6L;
    lo = static_cast<long long>(std::ceil(lower - slack));
    hi = static_cast<long long>(std::floor(upper + slack));
    return lo <= hi;
}

// Discriminant of the monic quintic via the Sylvester matrix of f and f',
// Bareiss elimination in 128-bit integers.
i128 discriminant(const long long a[6]) {
    constexpr int n = 9;
    i128 m[n][n] = {};
    for (int r = 0; r < 4; ++r)
        for (int i = 0; i <= 5; ++i) m[r][r + i] = a[5 - i];
    for (int r = 0; r < 5; ++r)
        for (int i = 0; i <= 4; ++i) m[4 + r][r + i] = static_cast<i128>(5 - i) * a[5 - i];
    i128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int swap = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[r][k] != 0) {
                    swap = r;
                    break;
                }
            if (swap < 0) return 0;
            for (int c = 0; c < n; ++c) std::swap(m[k][c], m[swap][c]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    // disc = (-1)^{n(n-1)/2} Res(f, f') with n = 5, i.e. +Res.
    return sign * m[n - 1][n - 1];
}

std::vector<u64> small_primes(u64 limit) {
    std::vector<bool> comp(limit + 1);
    std::vector<u64> out;
    for (u64 p = 2; p <= limit; ++p) {
        if (comp[p]) continue;
        out.push_back(p);
        for (u64 q = p * p; q <= limit; q += p) comp[q] = true;
    }
    return out;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    for (a %= m; e; e >>= 1, a = mulmod(a, a, m))
        if (e & 1) r = mulmod(r, a, m);
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (n % p == 0) return n == p;
    u64 d = n - 1;
    int s = 0;
    while (d % 2 == 0) d /= 2, ++s;
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s && composite; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) composite = false;
        }
        if (composite) return false;
    }
    return true;
}

u64 gcd(u64 a, u64 b) {
    while (b) a %= b, std::swap(a, b);
    return a;
}

u64 rho(u64 n) {
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (mulmod(x, x, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            d = gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    const u64 d = rho(n);
    factor(d, out);
    factor(n / d, out);
}

// Could disc / m^2 <= bound for some square m^2 dividing disc? The field
// discriminant is at least the product of primes dividing disc to odd order.
bool admissible(u64 disc, u64 bound, const std::vector<u64>& primes) {
    if (disc <= bound) return true;
    u64 rest = disc;
    long double kernel = 1;
    for (u64 p : primes) {
        if (p * p > rest) break;
        int e = 0;
        while (rest % p == 0) rest /= p, ++e;
        if (e % 2) kernel *= p;
        if (kernel > bound) return false;
    }
    std::vector<u64> big;
    factor(rest, big);
    std::sort(big.begin(), big.end());
    for (std::size_t i = 0; i < big.size();) {
        std::size_t j = i;
        while (j < big.size() && big[j] == big[i]) ++j;
        if ((j - i) % 2) kernel *= big[i];
        i = j;
    }
    return kernel <= bound;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s max_disc\n", argv[0]);
        return 1;
    }
    const u64 bound = std::strtoull(argv[1], nullptr, 10);
    const auto primes = small_primes(2000);
    const ld hermite = std::sqrt(2.0L) * std::pow(static_cast<ld>(bound) / 5, 0.25L);

    u64 nodes = 0, polys = 0, printed = 0;
    for (int t = 0; t <= 2; ++t) {
        const long long a4 = -t;
        const ld s2max = static_cast<ld>(t * t) / 5 + hermite;
        // s2 = a4^2 - 2 a3, and s2 >= t^2/5 with equality only for rational theta.
        const auto a3_lo = static_cast<long long>(std::ceil((t * t - s2max) / 2 - 1e-9L));
        for (long long a3 = a3_lo; 5 * (t * t - 2 * a3) > t * t; ++a3) {
            long long lo2, hi2;
            if (!rolle_range({0, 6.0L * a3, 12.0L * a4, 20}, 2, lo2, hi2)) continue;
            for (long long a2 = lo2; a2 <= hi2; ++a2) {
                long long lo1, hi1;
                if (!rolle_range({0, 2.0L * a2, 3.0L * a3, 4.0L * a4, 5}, 1, lo1, hi1)) continue;
                for (long long a1 = lo1; a1 <= hi1; ++a1) {
                    ++nodes;
                    long long lo0, hi0;
                    if (!rolle_range({0, static_cast<ld>(a1), static_cast<ld>(a2), static_cast<ld>(a3),
                                      static_cast<ld>(a4), 1},
                                     1, lo0, hi0))
                        continue;
                    for (long long a0 = lo0; a0 <= hi0; ++a0) {
                        if (a0 == 0) continue;  // x divides f
                        ++polys;
                        const long long a[6] = {a0, a1, a2, a3, a4, 1};
                        const i128 d = discriminant(a);
                        if (d <= 0) continue;
                        if (!admissible(static_cast<u64>(d), bound, primes)) continue;
                        ++printed;
                        std::printf("%lld,%lld,%lld,%lld,%lld,1\n", a0, a1, a2, a3, a4);
                    }
                }
            }
        }
    }
    std::fprintf(stderr, "bound %llu: %llu nodes, %llu totally real polynomials, %llu candidates\n",
                 static_cast<unsigned long long>(bound), static_cast<unsigned long long>(nodes),
                 static_cast<unsigned long long>(polys), static_cast<unsigned long long>(printed));
}
