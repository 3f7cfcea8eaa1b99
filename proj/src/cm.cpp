#include <cmweyl/cm.hpp>
#include <cmweyl/arith.hpp>
#include <cmweyl/error.hpp>
#include <cmweyl/quadratic.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

namespace cmweyl::cm {

namespace {

using boost::multiprecision::cpp_int;

// An element (x + y sqrt D) / 2 of O_F; x = yD mod 2.
struct Elem {
    cpp_int x = 0;
    cpp_int y = 0;
};

Elem multiply(const Elem& a, const Elem& b, long long disc) {
    return {(a.x * b.x + disc * a.y * b.y) / 2, (a.x * b.y + a.y * b.x) / 2};
}

Elem conjugate(const Elem& a) { return {a.x, -a.y}; }

cpp_int norm_of(const Elem& a, long long disc) { return (a.x * a.x - disc * a.y * a.y) / 4; }

// floor(y sqrt D) for non-square D.
cpp_int floor_times_root(const cpp_int& y, long long disc) {
    const cpp_int r = boost::multiprecision::sqrt(cpp_int(y * y * disc));
    return y.sign() >= 0 ? r : cpp_int(-r - 1);
}

cpp_int floor_div(const cpp_int& a, const cpp_int& b) {
    cpp_int q = a / b;
    if ((a % b != 0) && ((a.sign() < 0) != (b.sign() < 0))) --q;
    return q;
}

bool is_square_int(const cpp_int& n) {
    if (n.sign() < 0) return false;
    const cpp_int r = boost::multiprecision::sqrt(n);
    return r * r == n;
}

bool is_rational_square(const Q& q) {
    if (q < Q(0)) return false;
    return is_square_int(q.numerator()) && is_square_int(q.denominator());
}

bool big_is_square(const Q& x, const Q& y, long long disc) {
    if (x == Q(0) && y == Q(0)) return true;
    // (u + v sqrt D)^2 = x + y sqrt D: u^2 + D v^2 = x and 2uv = y, so the norm
    // x^2 - D y^2 must be a rational square s^2 and u^2 = (x +- s) / 2.
    const Q norm = x * x - Q(disc) * y * y;
    if (!is_rational_square(norm)) return false;
    const Q s(boost::multiprecision::sqrt(norm.numerator()), boost::multiprecision::sqrt(norm.denominator()));
    for (const Q& u2 : {(x + s) / Q(2), (x - s) / Q(2)}) {
        if (u2 == Q(0)) {
            // u = 0 needs y = 0 and x = D v^2.
            if (y == Q(0) && is_rational_square(x / Q(disc))) return true;
            continue;
        }
        if (is_rational_square(u2)) return true;
    }
    return false;
}

void require_real_fundamental(long long disc) {
    if (disc <= 1 || !arith::is_fundamental_discriminant(disc))
        throw DataError("D = " + std::to_string(disc) + " is not a real quadratic fundamental discriminant");
}

int v2(const cpp_int& v) { return v == 0 ? 100000 : static_cast<int>(boost::multiprecision::lsb(abs(v))); }

int mod_n(const cpp_int& v, int n) {
    const int r = static_cast<int>(v % n);
    return r < 0 ? r + n : r;
}

// Contribution of the primes above 2 to the relative discriminant norm. A
// 2-adic unit u gives exponent 0 when it is a square mod 4, otherwise
// 2e + 1 - k for the largest odd k with u a square mod p^k; odd valuation
// gives 2e + 1.
std::int64_t two_part(long long disc, const cpp_int& x, const cpp_int& y) {
    const long long dm8 = ((disc % 8) + 8) % 8;
    if (dm8 == 1) {
        // 2 splits and sqrt D lies in Z_2: work in both embeddings mod 2^64.
        std::uint64_t s = 1;  // s^2 = D mod 2^k, lifted one bit at a time
        for (int k = 3; k < 64; ++k) {
            const std::uint64_t mask = (k == 63) ? ~0ULL : ((1ULL << (k + 1)) - 1);
            if (((s * s - static_cast<std::uint64_t>(disc)) & mask) != 0) s += 1ULL << (k - 1);
        }
        const cpp_int modulus = cpp_int(1) << 64;
        auto low64 = [&](const cpp_int& v) {
            cpp_int r = v % modulus;
            if (r.sign() < 0) r += modulus;
            return static_cast<std::uint64_t>(r);
        };
        std::int64_t out = 1;
        for (int sign : {1, -1}) {
            const std::uint64_t t = low64(x) + low64(sign * y) * s;
            const std::uint64_t image = t >> 1;  // exact: x + y s is even
            const std::uint64_t low = image & ((1ULL << 62) - 1);
            if (low == 0) throw SizeLimitError("2-adic valuation out of range");
            const int v = __builtin_ctzll(low);
            if (v % 2) {
                out *= 8;
            } else if (((low >> v) & 3) != 1) {
                out *= 4;
            }
        }
        return out;
    }
    if (dm8 == 5) {
        // 2 is inert; O_F = Z[w] with w^2 = w + (D - 1) / 4.
        const long long k = (disc - 1) / 4;
        cpp_int a = (x - y) / 2, b = y;
        const int v = std::min(v2(a), v2(b));
        if (v % 2) return 64;
        a >>= v;
        b >>= v;
        const int am = mod_n(a, 4), bm = mod_n(b, 4);
        const int km = static_cast<int>(k % 4);
        for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d)
                if ((c * c + d * d * km) % 4 == am && (2 * c * d + d * d) % 4 == bm) return 1;
        return 16;
    }
    // D = 4m: 2 ramifies, O_F = Z[sqrt m], alpha = a + b sqrt m.
    const long long m = disc / 4;
    cpp_int a = x / 2, b = y;
    const int v = v2(a * a - m * b * b);
    if (v % 2) return 32;
    // alpha / pi^v is a unit in the same square class. Dividing by 2^(v/2)
    // would not do, since 2 / pi^2 need not be a square; divide by pi^2 one
    // step at a time instead, as alpha * conj(pi)^2 / 4.
    const long long pa = (m % 4 == 3) ? 1 : 0;  // pi = pa + sqrt m
    const long long ca = pa * pa + m, cb = -2 * pa;  // conj(pi)^2
    for (int step = 0; step < v / 2; ++step) {
        const cpp_int na = a * ca + m * b * cb, nb = a * cb + b * ca;
        a = na / 4;
        b = nb / 4;
    }
    const int am = mod_n(a, 4), bm = mod_n(b, 4);
    const int mm = static_cast<int>(m % 4);
    bool mod4 = false, mod_p3 = false;
    for (int c = 0; c < 4; ++c) {
        for (int d = 0; d < 4; ++d) {
            const int e = ((am - c * c - d * d * mm) % 8 + 8) % 8;  // u - z^2, first coordinate
            const int f = ((bm - 2 * c * d) % 8 + 8) % 8;
            if (e % 4 == 0 && f % 4 == 0) mod4 = true;
            // In 2p iff both coordinates are even and the halves have even norm.
            if (e % 2 == 0 && f % 2 == 0) {
                const int h = e / 2, g = f / 2;
                if (((h * h - mm * g * g) % 2 + 2) % 2 == 0) mod_p3 = true;
            }
        }
    }
    if (mod4) return 1;
    return mod_p3 ? 4 : 16;
}

std::uint64_t norm_as_u64(long long disc, const cpp_int& x, const cpp_int& y) {
    const cpp_int n = abs((x * x - disc * y * y) / 4);
    if (n > std::numeric_limits<std::uint64_t>::max() / 2) throw SizeLimitError("norm too large to factor");
    return static_cast<std::uint64_t>(n);
}

std::int64_t odd_part(long long disc, const cpp_int& x, const cpp_int& y) {
    std::int64_t out = 1;
    for (const auto& [p, e] : arith::factorize(norm_as_u64(disc, x, y))) {
        if (p == 2) continue;
        const int chi = arith::kronecker(disc, static_cast<long long>(p));
        const auto pp = static_cast<std::int64_t>(p);
        if (chi == 0) {
            if (e % 2) out *= pp;
        } else if (chi == -1) {
            if ((e / 2) % 2) out *= pp * pp;
        } else {
            // p = P P': strip the common power p^k, after which at most one of
            // P, P' divides, to valuation e - 2k.
            int k = 0;
            cpp_int xx = x, yy = y;
            while (xx % p == 0 && yy % p == 0) {
                xx /= p;
                yy /= p;
                ++k;
            }
            const int r = e - 2 * k;
            if ((k + r) % 2) out *= pp;
            if (k % 2) out *= pp;
        }
    }
    return out;
}

GaloisType type_from_norm(long long disc, const cpp_int& norm) {
    if (is_square_int(norm)) return GaloisType::V4;
    if (is_square_int(norm * disc)) return GaloisType::C4;
    return GaloisType::D4;
}

CMFieldRecord record_from(long long disc, const Elem& alpha) {
    CMFieldRecord r;
    r.base_D = disc;
    r.square_class.base_D = disc;
    r.square_class.a = Q(alpha.x, 2);
    r.square_class.b = Q(alpha.y, 2);
    r.square_class.totally_negative = true;
    r.rel_norm = odd_part(disc, alpha.x, alpha.y) * two_part(disc, alpha.x, alpha.y);
    r.abs_disc = disc * disc * r.rel_norm;
    r.galois_type = type_from_norm(disc, norm_of(alpha, disc));
    r.weyl = r.galois_type == GaloisType::D4;
    return r;
}

// Multiply by eps^2 or eps^-2 while that shrinks |trace|.
Elem balance(Elem a, const Elem& eps2, const Elem& eps2_inv, long long disc) {
    for (;;) {
        Elem up = multiply(a, eps2, disc);
        Elem down = multiply(a, eps2_inv, disc);
        if (abs(up.x) < abs(a.x)) {
            a = std::move(up);
        } else if (abs(down.x) < abs(a.x)) {
            a = std::move(down);
        } else {
            return a;
        }
    }
}

// Canonical order within a square class: |N|, then |a|, then b >= 0, then b.
auto canonical_key(const Elem& e, long long disc) {
    return std::make_tuple(cpp_int(abs(norm_of(e, disc))), cpp_int(abs(e.x)), e.y.sign() < 0, cpp_int(abs(e.y)));
}

bool same_class(const Elem& a, const Elem& b, long long disc) {
    // alpha beta is a square iff alpha / beta is.
    const Q x = Q(a.x * b.x + disc * a.y * b.y, 4);
    const Q y = Q(a.x * b.y + a.y * b.x, 4);
    return big_is_square(x, y, disc);
}

bool record_less(const CMFieldRecord& l, const CMFieldRecord& r) {
    return std::tie(l.abs_disc, l.base_D, l.square_class.a, l.square_class.b) <
           std::tie(r.abs_disc, r.base_D, r.square_class.a, r.square_class.b);
}

// Largest least norm of an integral ideal over the ideal classes: 1 for
// class number one, else the Minkowski bound sqrt(D)/2.
std::int64_t class_norm_bound(long long disc) {
    if (quadratic::invariants(disc).class_number == 1) return 1;
    return static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(disc)) / 2);
}

std::int64_t clamp_to(const cpp_int& v, std::int64_t cap) {
    return v > cap ? cap + 1 : static_cast<std::int64_t>(v);
}

// Calls visit(gamma) once for every totally positive gamma with N(gamma) <=
// bound, up to multiplication by the least totally positive unit.
//
// The integer points on the boundary of the convex hull of the totally
// positive part of O_F (its Klein sail) run 1 = s_0, s_1, ... with every
// consecutive pair a basis of O_F, and the half-open cones {a s_i + b s_{i+1}
// : a >= 1, b >= 0} tile the totally positive elements. Multiplication by
// the unit shifts the sail, so one period of cones suffices. Next points
// follow s_{i+1} = c s_i - s_{i-1} with c the least integer keeping s_{i+1}
// totally positive.
template <typename Visit>
void for_each_totally_positive(long long disc, std::int64_t bound, Visit&& visit) {
    const bool odd = disc % 2 != 0;
    // s_1 = w + m with w = (1 + sqrt D)/2 or sqrt(D/4), m least with w' + m > 0.
    const auto root = static_cast<long long>(arith::isqrt(static_cast<std::uint64_t>(disc)));
    const long long m = odd ? (root - 1) / 2 + 1 : static_cast<long long>(arith::isqrt(static_cast<std::uint64_t>(disc / 4))) + 1;
    Elem u{2, 0};
    Elem v{cpp_int((odd ? 1 : 0) + 2 * m), 1};
    for (std::size_t steps = 0;; ++steps) {
        if (steps > 100'000'000) throw SizeLimitError("sail period too long for D = " + std::to_string(disc));
        const cpp_int nu = norm_of(u, disc), nv = norm_of(v, disc);
        const std::int64_t Nu = clamp_to(nu, bound);
        if (Nu <= bound) {
            const std::int64_t Nv = clamp_to(nv, bound);
            const std::int64_t T = clamp_to(multiply(u, conjugate(v), disc).x, bound);  // Tr(u v') > 0
            for (std::int64_t a = 1; a * a <= bound / Nu; ++a) {
                for (std::int64_t b = 0;; ++b) {
                    // a^2 N(u) + a b Tr(u v') + b^2 N(v), every term positive
                    const long double n = static_cast<long double>(a) * a * Nu + static_cast<long double>(a) * b * T +
                                          static_cast<long double>(b) * b * Nv;
                    if (n > static_cast<long double>(bound)) break;
                    visit(Elem{a * u.x + b * v.x, a * u.y + b * v.y});
                }
            }
        }
        // c = floor(u' / v') + 1, with u' / v' = (u' v) / N(v).
        const Elem q = multiply(conjugate(u), v, disc);
        const cpp_int c = floor_div(q.x + floor_times_root(q.y, disc), 2 * nv) + 1;
        Elem w{c * v.x - u.x, c * v.y - u.y};
        u = std::move(v);
        v = std::move(w);
        if (norm_of(u, disc) == 1) return;  // u is the unit: one full period done
    }
}

}  // namespace

std::string to_string(GaloisType type) {
    switch (type) {
        case GaloisType::C4: return "C4";
        case GaloisType::V4: return "V4";
        case GaloisType::D4: return "D4";
    }
    return "?";
}

bool is_square_in_F(const Q& x, const Q& y, long long disc) {
    if (disc <= 1 || arith::is_perfect_square(disc)) throw DataError("D must be a positive non-square");
    return big_is_square(x, y, disc);
}

FundamentalUnit fundamental_unit(long long disc) {
    require_real_fundamental(disc);
    // Continued fraction of w = (P + sqrt d) / Q with w = (1 + sqrt D)/2 or
    // sqrt(D/4). The first convergent A/B with |N(A - B w)| = 1 gives the
    // unit A - B w' > 1.
    const bool odd = disc % 2 != 0;
    const long long d = odd ? disc : disc / 4;
    long long P = odd ? 1 : 0, Qd = odd ? 2 : 1;
    const auto root = static_cast<long long>(arith::isqrt(static_cast<std::uint64_t>(d)));
    cpp_int a_prev = 1, a_prev2 = 0, b_prev = 0, b_prev2 = 1;
    for (long long step = 0; step < 100'000'000; ++step) {
        const long long q = (P + root) / Qd;
        cpp_int A = q * a_prev + a_prev2;
        cpp_int B = q * b_prev + b_prev2;
        a_prev2 = a_prev;
        a_prev = A;
        b_prev2 = b_prev;
        b_prev = B;
        // N(A - B w) for w = (1 + sqrt D)/2 is A^2 - AB - B^2 (D - 1)/4; for
        // w = sqrt m it is A^2 - m B^2.
        const cpp_int norm = odd ? cpp_int(A * A - A * B - B * B * ((disc - 1) / 4)) : cpp_int(A * A - d * B * B);
        if (norm == 1 || norm == -1) {
            FundamentalUnit u;
            u.x = odd ? cpp_int(2 * A - B) : cpp_int(2 * A);
            u.y = B;
            u.norm = static_cast<int>(norm);
            u.value = (static_cast<long double>(u.x) + static_cast<long double>(u.y) * std::sqrt(static_cast<long double>(disc))) / 2;
            return u;
        }
        P = q * Qd - P;
        Qd = (d - P * P) / Qd;
    }
    throw SizeLimitError("continued fraction period too long for D = " + std::to_string(disc));
}

std::int64_t relative_discriminant_norm(long long disc, const BigInt& x, const BigInt& y) {
    require_real_fundamental(disc);
    if (x == 0 && y == 0) throw DataError("alpha must be nonzero");
    if (((x - y * disc) % 2) != 0) throw DataError("alpha is not integral");
    return odd_part(disc, x, y) * two_part(disc, x, y);
}

GaloisType classify_galois(const CMFieldRecord& record) {
    const SquareClassRep& s = record.square_class;
    const Q norm = s.a * s.a - Q(record.base_D) * s.b * s.b;
    if (is_rational_square(norm)) return GaloisType::V4;
    if (is_rational_square(norm * Q(record.base_D))) return GaloisType::C4;
    return GaloisType::D4;
}

CMFieldRecord make_record(long long disc, const Q& a, const Q& b) {
    require_real_fundamental(disc);
    if (!(a < Q(0) && a * a > Q(disc) * b * b)) throw DataError("alpha must be totally negative");
    // Scale by a square to reach an integral (x + y sqrt D) / 2.
    const cpp_int l = boost::multiprecision::lcm(a.denominator(), b.denominator());
    const Elem e{a.numerator() * (l / a.denominator()) * l * 2, b.numerator() * (l / b.denominator()) * l * 2};
    CMFieldRecord r = record_from(disc, e);
    r.square_class.a = a;
    r.square_class.b = b;
    return r;
}

std::vector<CMFieldRecord> enumerate_cm(long long disc, std::int64_t max_disc) {
    require_real_fundamental(disc);
    if (static_cast<arith::i128>(disc) * disc > max_disc) return {};
    const std::int64_t rel_bound = max_disc / (disc * disc);
    const std::int64_t c = class_norm_bound(disc);
    const std::int64_t norm_bound = rel_bound * c * c;

    const FundamentalUnit unit = fundamental_unit(disc);
    const Elem eps{unit.x, unit.y};
    const Elem eps2 = multiply(eps, eps, disc);
    const Elem eps2_inv = conjugate(eps2);  // (eps')^2 = eps^-2

    struct Candidate {
        Elem alpha;
        CMFieldRecord record;
    };
    std::map<std::tuple<std::int64_t, int, long long>, std::vector<Candidate>> groups;

    auto consider = [&](const Elem& beta) {
        Elem alpha = balance(Elem{-beta.x, -beta.y}, eps2, eps2_inv, disc);
        CMFieldRecord rec = record_from(disc, alpha);
        if (rec.abs_disc > max_disc) return;
        const auto norm = static_cast<long long>(norm_of(alpha, disc));
        const auto key = std::make_tuple(rec.rel_norm, static_cast<int>(rec.galois_type), arith::squarefree_kernel(norm));
        auto& bucket = groups[key];
        for (auto& cand : bucket) {
            if (!same_class(cand.alpha, alpha, disc)) continue;
            if (canonical_key(alpha, disc) < canonical_key(cand.alpha, disc)) cand = {std::move(alpha), std::move(rec)};
            return;
        }
        bucket.push_back({std::move(alpha), std::move(rec)});
    };

    // Totally negative alpha up to squares: -gamma for totally positive gamma
    // taken up to eps^2. The sail walk covers gamma up to the least totally
    // positive unit, which is eps^2 when N(eps) = -1 and eps otherwise.
    for_each_totally_positive(disc, norm_bound, [&](const Elem& gamma) {
        consider(gamma);
        if (unit.norm == 1) consider(multiply(gamma, eps, disc));
    });

    std::vector<CMFieldRecord> out;
    for (auto& [key, bucket] : groups)
        for (auto& cand : bucket) out.push_back(std::move(cand.record));
    std::sort(out.begin(), out.end(), record_less);
    return out;
}

std::vector<CMFieldRecord> enumerate_all(std::int64_t max_disc, unsigned threads) {
    const auto root = static_cast<long long>(arith::isqrt(static_cast<std::uint64_t>(std::max<std::int64_t>(max_disc, 0))));
    const std::vector<long long> discs = arith::positive_fundamental_discriminants(root);
    std::vector<std::vector<CMFieldRecord>> per_disc(discs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < discs.size(); i = next++) {
            try {
                per_disc[i] = enumerate_cm(discs[i], max_disc);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = discs.size();
            }
        }
    };
    unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(discs.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::vector<CMFieldRecord> out;
    for (auto& v : per_disc) out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    std::sort(out.begin(), out.end(), record_less);
    return out;
}

CountReport count_records(const std::vector<CMFieldRecord>& records, std::int64_t X, const CountOptions& options) {
    CountReport r;
    r.X = X;
    for (const auto& rec : records) {
        if (rec.abs_disc > X) continue;
        ++r.n_cm;
        switch (rec.galois_type) {
            case GaloisType::C4: ++r.n_c4; break;
            case GaloisType::V4: ++r.n_v4; break;
            case GaloisType::D4: ++r.n_d4; break;
        }
    }
    r.n_weyl = r.n_d4;
    r.n_not_weyl = r.n_c4 + r.n_v4;
    // Conjugate extensions F(sqrt alpha) and F(sqrt alpha') of a D4 field are
    // distinct over F but isomorphic over Q.
    r.n_isomorphism_classes = r.n_not_weyl + r.n_d4 / 2;
    r.ratio_weyl = r.n_cm ? static_cast<double>(r.n_weyl) / static_cast<double>(r.n_cm) : 0.0;

    std::vector<std::int64_t> points = options.checkpoints;
    if (points.empty())
        for (int k = 6; k >= 0; --k)
            if ((X >> k) >= 125) points.push_back(X >> k);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::int64_t p : points) {
        if (p > X) throw DataError("checkpoint " + std::to_string(p) + " exceeds X = " + std::to_string(X));
        std::int64_t count = 0;
        for (const auto& rec : records)
            if (rec.abs_disc <= p && !rec.weyl) ++count;
        r.checkpoints.emplace_back(p, count);
        if (count == 0) continue;
        const double lx = std::log(static_cast<double>(p)), ly = std::log(static_cast<double>(count));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    const double denom = m * sxx - sx * sx;
    r.slope_fit = (m >= 2 && denom > 0) ? (m * sxy - sx * sy) / denom : std::numeric_limits<double>::quiet_NaN();
    return r;
}

CountReport count_report(std::int64_t X, const CountOptions& options) {
    if (X < 125) throw DataError("count_report needs X >= 125");
    return count_records(enumerate_all(X, options.threads), X, options);
}

}  // namespace cmweyl::cm
