#pragma once

// Elementary integer arithmetic shared by the zeta engine, the field catalog
// and the CM enumerator.

#include <cmath>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace cmweyl::arith {

using i128 = __int128;

/// Sieve of Eratosthenes. Tables are cached process-wide and shared read-only;
/// the returned table covers at least `limit`.
std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(std::uint32_t limit);

/// Kronecker symbol (a | n), completely multiplicative in n, with
/// (a | -1) = sign(a) and (a | 2) given by a mod 8.
int kronecker(long long a, long long n);

/// D = 1, or D != 0 with D = 1 mod 4 squarefree, or D = 4m with m = 2, 3 mod 4 squarefree.
bool is_fundamental_discriminant(long long d);

bool is_squarefree(std::uint64_t n);

/// Prime factorization by trial division, primes ascending.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

/// The squarefree m with n = m k^2 (sign preserved, 0 for 0).
long long squarefree_kernel(long long n);

bool is_perfect_square(i128 n, i128* root = nullptr);

/// floor(sqrt(n)) for n >= 0.
std::uint64_t isqrt(std::uint64_t n);

int valuation(std::uint64_t n, std::uint64_t p);

/// All positive fundamental discriminants 5 <= D <= max_disc, ascending.
std::vector<long long> positive_fundamental_discriminants(long long max_disc);

/// Neumaier's compensated summation.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace cmweyl::arith
