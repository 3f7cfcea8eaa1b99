#include <cmweyl/arith.hpp>

#include <cmath>
#include <cstdlib>
#include <mutex>

namespace cmweyl::arith {

std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(std::uint32_t limit) {
    static std::mutex mutex;
    static std::shared_ptr<const std::vector<std::uint32_t>> cached;
    static std::uint32_t cached_limit = 0;

    std::lock_guard lock(mutex);
    if (cached && cached_limit >= limit) return cached;

    const std::uint32_t n = std::max<std::uint32_t>(limit, 1024);
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    auto table = std::make_shared<std::vector<std::uint32_t>>();
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        table->push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    cached = std::move(table);
    cached_limit = n;
    return cached;
}

int kronecker(long long a, long long b) {
    static constexpr int tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};
    if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (b & 1) == 0) return 0;

    int v = 0;
    while ((b & 1) == 0) {
        ++v;
        b /= 2;
    }
    int k = (v % 2 == 0) ? 1 : tab2[a & 7];
    if (b < 0) {
        b = -b;
        if (a < 0) k = -k;
    }
    // b odd and positive from here on.
    for (;;) {
        if (a == 0) return b > 1 ? 0 : k;
        v = 0;
        while ((a & 1) == 0) {
            ++v;
            a /= 2;
        }
        if (v % 2 == 1) k *= tab2[b & 7];
        if (a & b & 2) k = -k;
        long long r = a < 0 ? -a : a;
        a = b % r;
        b = r;
    }
}

bool is_squarefree(std::uint64_t n) {
    if (n == 0) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

bool is_fundamental_discriminant(long long d) {
    if (d == 1) return true;
    if (d == 0) return false;
    const long long m4 = ((d % 4) + 4) % 4;
    const auto mag = static_cast<std::uint64_t>(std::llabs(d));
    if (m4 == 1) return is_squarefree(mag);
    if (m4 != 0) return false;
    const long long m = d / 4;
    const long long mm4 = ((m % 4) + 4) % 4;
    if (mm4 != 2 && mm4 != 3) return false;
    return is_squarefree(static_cast<std::uint64_t>(std::llabs(m)));
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

long long squarefree_kernel(long long n) {
    if (n == 0) return 0;
    long long kernel = n < 0 ? -1 : 1;
    for (auto [p, e] : factorize(static_cast<std::uint64_t>(std::llabs(n))))
        if (e % 2) kernel *= static_cast<long long>(p);
    return kernel;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_perfect_square(i128 n, i128* root) {
    if (n < 0) return false;
    auto r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    if (root) *root = r;
    return r * r == n;
}

int valuation(std::uint64_t n, std::uint64_t p) {
    if (n == 0) return 1 << 30;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::vector<long long> positive_fundamental_discriminants(long long max_disc) {
    std::vector<long long> out;
    if (max_disc < 5) return out;
    // Squarefree sieve up to max_disc.
    const auto n = static_cast<std::size_t>(max_disc);
    std::vector<bool> squarefree(n + 1, true);
    for (std::size_t p = 2; p * p <= n; ++p)
        for (std::size_t j = p * p; j <= n; j += p * p) squarefree[j] = false;
    for (long long d = 5; d <= max_disc; ++d) {
        const long long r = d % 4;
        if (r == 1 && squarefree[static_cast<std::size_t>(d)]) {
            out.push_back(d);
        } else if (r == 0) {
            const long long m = d / 4;
            if ((m % 4 == 2 || m % 4 == 3) && squarefree[static_cast<std::size_t>(m)]) out.push_back(d);
        }
    }
    return out;
}

}  // namespace cmweyl::arith
