#pragma once

// Set families over a ground set [n] and point sets in F_p^n.
//
// A member S of a family is a bitmask with bit i-1 set iff ground element i
// belongs to S. A point of F_p^n is packed as a base-p integer whose
// least-significant digit is coordinate 1. Both containers keep their
// elements strictly increasing, which is also their canonical order.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace vcsum {

using Mask = std::uint64_t;
using PointCode = std::uint64_t;

/// Largest ground size a SetFamily accepts (masks must fit one word and
/// 2^n must be representable).
inline constexpr int kMaxGroundSize = 62;

/// Largest number of points p^n a PointSet encoding may span.
inline constexpr std::uint64_t kMaxPointSpace = std::uint64_t(1) << 48;

/// Largest supported modulus. Field elements are stored in 32-bit words and
/// products are formed in 64-bit arithmetic.
inline constexpr std::uint32_t kMaxModulus = (std::uint32_t(1) << 31) - 1;

bool is_prime(std::uint64_t p);

/// Throws ParameterError unless `p` is a supported prime.
void require_prime(std::uint64_t p);

/// p^n, or ResourceError if it exceeds kMaxPointSpace.
std::uint64_t point_space_size(std::uint32_t p, int n);

class SetFamily {
public:
    /// Canonicalizes `members` (sort + dedup). Throws ParameterError when a
    /// member does not fit in `ground_size` bits.
    SetFamily(int ground_size, std::vector<Mask> members);

    /// The empty family over [n]. Constructible, but rejected by analyses.
    explicit SetFamily(int ground_size) : SetFamily(ground_size, {}) {}

    int ground_size() const noexcept { return n_; }
    std::span<const Mask> members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(Mask s) const;

    /// Throws EmptyFamilyError when empty.
    void require_nonempty() const;

    friend bool operator==(const SetFamily&, const SetFamily&) = default;

private:
    int n_;
    std::vector<Mask> members_;
};

class PointSet {
public:
    /// Canonicalizes `points`. Throws ParameterError on a composite modulus or
    /// an out-of-range code, ResourceError when p^n exceeds the encoding guard.
    PointSet(std::uint32_t modulus, int dimension, std::vector<PointCode> points);

    std::uint32_t modulus() const noexcept { return p_; }
    int dimension() const noexcept { return n_; }
    std::span<const PointCode> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    bool contains(PointCode x) const;

    /// p^n for this set's ambient space.
    std::uint64_t space_size() const noexcept { return space_; }

    void require_nonempty() const;

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::uint32_t p_;
    int n_;
    std::uint64_t space_;
    std::vector<PointCode> points_;
};

// Point codec helpers. Digits are coordinates 1..n, least significant first.
std::vector<std::uint32_t> decode_point(PointCode code, std::uint32_t p, int n);
PointCode encode_point(std::span<const std::uint32_t> coords, std::uint32_t p);
/// Coordinatewise sum mod p of two packed points.
PointCode add_points(PointCode a, PointCode b, std::uint32_t p, int n);

/// Sum_{i=0}^{min(d,n)} C(n, i). Throws OverflowError if it does not fit.
std::uint64_t binom_sum(int n, int d);
/// C(n, k) with the same overflow contract.
std::uint64_t binomial(int n, int k);

enum class SetOp { sym_diff, intersect, union_ };

const char* to_string(SetOp op);
/// Accepts "sym_diff", "intersect", "union".
SetOp parse_set_op(const std::string& name);

/// {S op T : S in a, T in b}.
SetFamily pairwise_family(const SetFamily& a, const SetFamily& b, SetOp op);

/// k*A = {a_1 + ... + a_k : a_i in A} in F_p^n.
PointSet k_fold_sumset(const PointSet& a, int k);

/// Reinterprets each bitmask as a 0/1 vector in F_p^n.
PointSet embed_01(const SetFamily& a, std::uint32_t p);

/// Inverse of embed_01; throws ParameterError when a point has a digit > 1.
SetFamily decode_01(const PointSet& a);

struct FamilyKind {
    enum class Tag { lowweight, highweight, powerset, random };
    Tag tag = Tag::powerset;
    int d = 0;                 // weight kinds
    std::uint64_t size = 0;    // random
    std::uint64_t seed = 0;    // random

    static FamilyKind lowweight(int d) { return {Tag::lowweight, d, 0, 0}; }
    static FamilyKind highweight(int d) { return {Tag::highweight, d, 0, 0}; }
    static FamilyKind powerset() { return {Tag::powerset, 0, 0, 0}; }
    static FamilyKind random(std::uint64_t m, std::uint64_t seed) { return {Tag::random, 0, m, seed}; }
};

/// Named family generators. `random(m, seed)` draws m distinct masks with
/// Floyd's algorithm on an mt19937_64 stream seeded with `seed`.
SetFamily generate_family(int n, const FamilyKind& kind);

// Family text format:
//   n=<int> p=<int>
//   <digit string per member, coordinate 1 first>
// Lines starting with '#' and blank lines are ignored.
PointSet read_point_set(std::istream& in);
void write_point_set(std::ostream& out, const PointSet& points);

/// Reads a p=2 file as a SetFamily (ParseError otherwise).
SetFamily read_family(std::istream& in);
void write_family(std::ostream& out, const SetFamily& family);

/// "{1,3}" style rendering of a mask (elements are 1-based).
std::string format_set(Mask s);
/// Inverse of format_set; also accepts a bare comma list "1,3".
Mask parse_set(const std::string& text, int n);

}  // namespace vcsum
