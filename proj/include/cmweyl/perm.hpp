#pragma once

// Permutation groups, the signed-permutation groups C2 wr G inside C2^d x| S_d,
// and their action on CM-type masks.

#include <cmweyl/error.hpp>

#include <boost/rational.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cmweyl::perm {

inline constexpr std::size_t kDefaultElementCap = 1'000'000;
inline constexpr int kMaxDegree = 32;

using Rational = boost::rational<long long>;

/// A permutation of {0, ..., d-1}; images()[i] is the image of i.
class Perm {
public:
    Perm() = default;
    /// Throws DataError unless `images` is a bijection of {0, ..., size-1}.
    explicit Perm(std::vector<std::uint8_t> images);

    static Perm identity(int degree);
    /// Parses 1-based cycle notation such as "(1,2)(3,4,5)"; "()" is the identity.
    static Perm from_cycles(int degree, std::string_view text);

    int degree() const noexcept { return static_cast<int>(images_.size()); }
    int operator[](int i) const noexcept { return images_[static_cast<std::size_t>(i)]; }
    const std::vector<std::uint8_t>& images() const noexcept { return images_; }

    /// Composition with the right factor applied first: (a * b)(i) = a(b(i)).
    Perm operator*(const Perm& rhs) const;
    Perm inverse() const;
    bool is_identity() const noexcept;
    /// Number of orbits of <g> on the points, fixed points included.
    int orbit_count() const;
    /// 1-based cycle notation, fixed points omitted.
    std::string to_cycles() const;

    auto operator<=>(const Perm&) const = default;

private:
    std::vector<std::uint8_t> images_;
};

/// ind(g) = d - #orbits of <g>.
int malle_index(const Perm& g);

/// Subgroup of S_d given by generators. Elements are materialized on demand.
class PermGroup {
public:
    PermGroup(int degree, std::vector<Perm> generators);
    static PermGroup from_cycle_strings(int degree, const std::vector<std::string>& generators);

    int degree() const noexcept { return degree_; }
    const std::vector<Perm>& generators() const noexcept { return generators_; }

    /// Breadth-first closure of the generators; throws SizeLimitError past `cap`.
    std::vector<Perm> elements(std::size_t cap = kDefaultElementCap) const;
    std::size_t order(std::size_t cap = kDefaultElementCap) const { return elements(cap).size(); }

private:
    int degree_;
    std::vector<Perm> generators_;
};

struct MalleIndex {
    int index;   // min ind(g) over non-identity g
    Rational a;  // 1 / index
};

/// Throws DataError for the trivial group.
MalleIndex min_index_and_a(const PermGroup& group, std::size_t cap = kDefaultElementCap);

bool is_transitive(const PermGroup& group);
bool is_abelian(const PermGroup& group);

/// Bit i of `bits` selects the conjugate embedding from the i-th pair.
struct CMTypeMask {
    int degree = 0;
    std::uint32_t bits = 0;

    auto operator<=>(const CMTypeMask&) const = default;
};

/// Element (x, sigma) of C2^d x| S_d. Multiplication (x,s)(y,t) = (x + s.y, st)
/// where (s.y)_i = y_{s^-1(i)}.
class SignedPerm {
public:
    SignedPerm() = default;
    SignedPerm(std::uint32_t flips, Perm perm);

    static SignedPerm identity(int degree) { return {0u, Perm::identity(degree)}; }
    static SignedPerm flip(int degree, int point) { return {1u << point, Perm::identity(degree)}; }

    int degree() const noexcept { return perm_.degree(); }
    std::uint32_t flips() const noexcept { return flips_; }
    const Perm& perm() const noexcept { return perm_; }

    SignedPerm operator*(const SignedPerm& rhs) const;
    SignedPerm inverse() const;
    bool is_identity() const noexcept { return flips_ == 0 && perm_.is_identity(); }

    /// ((x, s) . phi)_i = x_i xor phi_{s^-1(i)}.
    CMTypeMask act(const CMTypeMask& phi) const;

    /// The same element as a permutation of 2d points: point i is the i-th
    /// embedding, point i + d its complex conjugate.
    Perm to_points() const;

    auto operator<=>(const SignedPerm&) const = default;

private:
    std::uint32_t flips_ = 0;
    Perm perm_;
};

/// (s . y)_i = y_{s^-1(i)}: bit j of y moves to position s(j).
std::uint32_t permute_bits(const Perm& s, std::uint32_t y);

class SignedGroup {
public:
    SignedGroup(int degree, std::vector<SignedPerm> generators);

    int degree() const noexcept { return degree_; }
    const std::vector<SignedPerm>& generators() const noexcept { return generators_; }

    std::vector<SignedPerm> elements(std::size_t cap = kDefaultElementCap) const;
    std::size_t order(std::size_t cap = kDefaultElementCap) const { return elements(cap).size(); }

    /// Image in S_d of the projection (x, s) -> s.
    PermGroup top() const;

private:
    int degree_;
    std::vector<SignedPerm> generators_;
};

/// Generators {(e_1, id)} and {(0, g)} of C2 wr G. Requires G transitive and
/// 2^d |G| within `cap`.
SignedGroup wreath_c2(const PermGroup& group, std::size_t cap = kDefaultElementCap);

/// The normal subgroup C2^d x| {id}.
SignedGroup flip_subgroup(int degree);

bool is_abelian(const SignedGroup& group);

/// Size of the orbit of `phi` under the group. Throws DataError on degree mismatch.
std::size_t cm_type_orbit(const SignedGroup& group, const CMTypeMask& phi);

/// 2^v [G:S] for an imprimitivity kernel C2^v and a splitting subgroup of
/// index `splitting_index`. Throws DataError if v is outside [1, d] or the
/// index does not divide |G|.
std::uint64_t reflex_degree_check(int v, const PermGroup& group, std::uint64_t splitting_index);

/// One transitive subgroup of S_d in the standard dTn numbering.
struct TransitiveGroup {
    std::string label;  // e.g. "5T5"
    std::string name;   // e.g. "S5"
    int degree;
    std::uint64_t order;
    std::vector<std::string> generators;  // cycle notation

    PermGroup group() const { return PermGroup::from_cycle_strings(degree, generators); }
};

/// All transitive groups of degree 1..5.
const std::vector<TransitiveGroup>& transitive_catalog();
/// Groups of one degree, in dTn order.
std::vector<TransitiveGroup> transitive_groups(int degree);
/// Accepts "4T3", or a common name ("D4") together with the degree.
/// Throws DataError for unknown labels.
const TransitiveGroup& find_transitive(std::string_view label, int degree = 0);

}  // namespace cmweyl::perm
