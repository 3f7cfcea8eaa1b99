#include <cmweyl/polynomial.hpp>
#include <cmweyl/error.hpp>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>

#include <sstream>

namespace cmweyl::poly {

namespace mp = boost::multiprecision;
using BigRational = mp::cpp_rational;

int degree(const IntPoly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

bool is_monic(const IntPoly& f) {
    const int n = degree(f);
    return n >= 0 && f[static_cast<std::size_t>(n)] == 1;
}

namespace {

// Fraction-free (Bareiss) determinant.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    BigInt sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

BigInt resultant(const IntPoly& f, const IntPoly& g) {
    const int m = degree(f);
    const int n = degree(g);
    const auto size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, 0));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i)
            s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] =
                f[static_cast<std::size_t>(m - i)];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i)
            s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + i)] =
                g[static_cast<std::size_t>(n - i)];
    return bareiss_determinant(std::move(s));
}

using RatPoly = std::vector<BigRational>;

void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly remainder(RatPoly a, const RatPoly& b) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        BigRational q = a.back() / b.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= q * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

int sign_at_infinity(const RatPoly& p, bool negative) {
    int s = p.back() > 0 ? 1 : -1;
    if (negative && (p.size() - 1) % 2 == 1) s = -s;
    return s;
}

}  // namespace

BigInt discriminant(const IntPoly& f) {
    const int n = degree(f);
    if (n < 1) throw DataError("discriminant of a constant polynomial");
    if (n == 1) return 1;
    IntPoly df(static_cast<std::size_t>(n), 0);
    for (int i = 1; i <= n; ++i)
        df[static_cast<std::size_t>(i - 1)] = i * f[static_cast<std::size_t>(i)];
    BigInt res = resultant(f, df);
    BigInt disc = res / f[static_cast<std::size_t>(n)];
    if ((n * (n - 1) / 2) % 2 == 1) disc = -disc;
    return disc;
}

int real_root_count(const IntPoly& f) {
    const int n = degree(f);
    if (n < 1) return 0;
    RatPoly p0(f.begin(), f.begin() + n + 1);
    RatPoly p1(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) p1[static_cast<std::size_t>(i - 1)] = p0[static_cast<std::size_t>(i)] * i;
    std::vector<RatPoly> seq{p0, p1};
    for (;;) {
        RatPoly r = remainder(seq[seq.size() - 2], seq.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        seq.push_back(std::move(r));
    }
    auto variations = [&](bool negative) {
        int count = 0;
        int last = 0;
        for (const auto& p : seq) {
            int s = sign_at_infinity(p, negative);
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    };
    return variations(true) - variations(false);
}

std::string to_string(const IntPoly& f) {
    std::ostringstream out;
    bool first = true;
    for (int i = degree(f); i >= 0; --i) {
        long long c = f[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (first) {
            if (c < 0) out << '-';
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        unsigned long long a = c < 0 ? static_cast<unsigned long long>(-c) : static_cast<unsigned long long>(c);
        if (i == 0 || a != 1) {
            out << a;
            if (i > 0) out << '*';
        }
        if (i >= 1) out << 'x';
        if (i >= 2) out << '^' << i;
        first = false;
    }
    if (first) out << '0';
    return out.str();
}

namespace {

// Dense polynomials over F_p, constant term first, no trailing zeros. Storage
// is inline for the small degrees the catalogs use. Products of residues are
// below 2^56 while p < 2^28, so sums of up to 256 of them are reduced once.
class ModP {
public:
    explicit ModP(std::uint64_t p) : p_(p), lazy_(p < (std::uint64_t{1} << 28)) {}

    using Poly = boost::container::small_vector<std::uint64_t, 12>;

    static void trim(Poly& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }

    std::uint64_t reduce(long long c) const {
        long long r = c % static_cast<long long>(p_);
        return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p_) : r);
    }

    std::uint64_t inv(std::uint64_t a) const { return pow(a, p_ - 2); }

    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        a %= p_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    // a mod f, f monic.
    void reduce_by(Poly& a, const Poly& f) const {
        const std::size_t df = f.size() - 1;
        while (a.size() > df) {
            const std::uint64_t c = a.back() % p_;
            if (c) {
                const std::size_t shift = a.size() - 1 - df;
                const std::uint64_t neg = p_ - c;
                for (std::size_t i = 0; i < df; ++i) a[shift + i] = (a[shift + i] + mul(neg, f[i])) % p_;
            }
            a.pop_back();
        }
        trim(a);
    }

    Poly mulmod(const Poly& a, const Poly& b, const Poly& f) const {
        if (a.empty() || b.empty()) return {};
        Poly r(a.size() + b.size() - 1, 0);
        if (lazy_ && std::min(a.size(), b.size()) <= 256) {
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (!a[i]) continue;
                for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
            }
            for (auto& c : r) c %= p_;
        } else {
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (!a[i]) continue;
                for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mul(a[i], b[j])) % p_;
            }
        }
        reduce_by(r, f);
        return r;
    }

    Poly x_pow_mod(std::uint64_t e, const Poly& f) const {
        Poly result{1};
        Poly base{0, 1};
        reduce_by(base, f);
        while (e) {
            if (e & 1) result = mulmod(result, base, f);
            e >>= 1;
            if (e) base = mulmod(base, base, f);
        }
        return result;
    }

    // h(g) mod f by Horner.
    Poly compose(const Poly& h, const Poly& g, const Poly& f) const {
        Poly r;
        for (std::size_t i = h.size(); i-- > 0;) {
            r = mulmod(r, g, f);
            if (r.empty()) r.push_back(0);
            r[0] = (r[0] + h[i]) % p_;
            trim(r);
        }
        return r;
    }

    Poly gcd(Poly a, Poly b) const {
        trim(a);
        trim(b);
        while (!b.empty()) {
            // a <- a mod b with b made monic
            const std::uint64_t lc_inv = inv(b.back());
            for (auto& c : b) c = mul(c, lc_inv);
            reduce_by(a, b);
            std::swap(a, b);
        }
        return a;
    }

    std::uint64_t modulus() const { return p_; }

private:
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return lazy_ ? a * b % p_ : static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
    }

    std::uint64_t p_;
    bool lazy_;
};

// Residues modulo a fixed monic f of degree N, for the small degrees that
// dominate Euler products. Requires p < 2^28: every slot of a product
// collects at most 2N - 1 unreduced terms below 2^56, which fits in 64 bits.
template <int N>
class SmallModP {
public:
    using Elem = std::array<std::uint64_t, N>;

    SmallModP(const ModP::Poly& f, std::uint64_t p) : p_(p) {
        for (int i = 0; i < N; ++i) f_[i] = f[static_cast<std::size_t>(i)];
    }

    Elem mul(const Elem& a, const Elem& b) const {
        std::array<std::uint64_t, 2 * N - 1> t{};
        for (int i = 0; i < N; ++i) {
            if (!a[i]) continue;
            for (int j = 0; j < N; ++j) t[i + j] += a[i] * b[j];
        }
        for (int k = 2 * N - 2; k >= N; --k) {
            const std::uint64_t c = t[k] % p_;
            if (!c) continue;
            const std::uint64_t neg = p_ - c;
            for (int i = 0; i < N; ++i) t[k - N + i] += neg * f_[i];
        }
        Elem r;
        for (int i = 0; i < N; ++i) r[i] = t[i] % p_;
        return r;
    }

    Elem x_pow(std::uint64_t e) const {
        Elem result{};
        result[0] = 1;
        Elem base{};
        base[1] = 1;
        while (e) {
            if (e & 1) result = mul(result, base);
            e >>= 1;
            if (e) base = mul(base, base);
        }
        return result;
    }

    // h(g) mod f by Horner.
    Elem compose(const Elem& h, const Elem& g) const {
        Elem r{};
        for (int i = N; i-- > 0;) {
            r = mul(r, g);
            r[0] = (r[0] + h[i]) % p_;
        }
        return r;
    }

    static ModP::Poly to_poly(const Elem& a) {
        ModP::Poly out(a.begin(), a.end());
        ModP::trim(out);
        return out;
    }

private:
    std::uint64_t p_;
    Elem f_{};
};

// Distinct-degree factorization: x^{p^k} - x shares with f exactly the
// irreducible factors of degree dividing k.
template <class Frobenius>
ModPShape distinct_degree_shape(const ModP& field, const ModP::Poly& fp, int n, bool squarefree_known,
                                Frobenius&& next_power) {
    const std::uint64_t p = field.modulus();
    ModPShape shape;
    std::vector<int> count(static_cast<std::size_t>(n) + 1, 0);
    int accounted = 0;
    for (int k = 1; k <= n && accounted < n; ++k) {
        ModP::Poly h = next_power(k);
        if (h.size() < 2) h.resize(2, 0);
        h[1] = (h[1] + p - 1) % p;  // x^{p^k} - x
        ModP::trim(h);
        int dg = h.empty() ? n : static_cast<int>(field.gcd(fp, h).size()) - 1;
        for (int j = 1; j < k; ++j)
            if (k % j == 0) dg -= j * count[static_cast<std::size_t>(j)];
        count[static_cast<std::size_t>(k)] = dg / k;
        accounted += dg;
        for (int c = 0; c < count[static_cast<std::size_t>(k)]; ++c) shape.degrees.push_back(k);
        // Remaining factors all have degree > k; fewer than 2(k+1) leftover
        // degrees means a single irreducible factor when f is squarefree.
        if (squarefree_known && accounted < n && n - accounted < 2 * (k + 1)) {
            shape.degrees.push_back(n - accounted);
            accounted = n;
            break;
        }
    }
    // Sum of distinct-factor degrees falls short of n exactly when some factor repeats.
    int total = 0;
    for (int d : shape.degrees) total += d;
    shape.squarefree = total == n;
    return shape;
}

template <int N>
ModPShape small_shape(const ModP& field, const ModP::Poly& fp, bool squarefree_known) {
    const SmallModP<N> ring(fp, field.modulus());
    const auto frob = ring.x_pow(field.modulus());
    auto power = frob;
    return distinct_degree_shape(field, fp, N, squarefree_known, [&](int k) {
        if (k > 1) power = ring.compose(power, frob);
        return SmallModP<N>::to_poly(power);
    });
}

}  // namespace

ModPShape factor_shape_mod_p(const IntPoly& f, std::uint32_t p, bool squarefree_known) {
    if (!is_monic(f)) throw DataError("factor_shape_mod_p requires a monic polynomial");
    const int n = degree(f);
    ModP field(p);
    ModP::Poly fp(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) fp[static_cast<std::size_t>(i)] = field.reduce(f[static_cast<std::size_t>(i)]);

    ModPShape shape;
    if (n == 1) {
        shape.degrees = {1};
        return shape;
    }
    if (p < (std::uint32_t{1} << 28)) {
        switch (n) {
            case 2: return small_shape<2>(field, fp, squarefree_known);
            case 3: return small_shape<3>(field, fp, squarefree_known);
            case 4: return small_shape<4>(field, fp, squarefree_known);
            case 5: return small_shape<5>(field, fp, squarefree_known);
            case 6: return small_shape<6>(field, fp, squarefree_known);
            default: break;
        }
    }
    const ModP::Poly frob = field.x_pow_mod(p, fp);
    ModP::Poly power = frob;  // x^{p^k} mod f
    return distinct_degree_shape(field, fp, n, squarefree_known, [&](int k) {
        if (k > 1) power = field.compose(power, frob, fp);
        return power;
    });
}

}  // namespace cmweyl::poly
