#pragma once

// Dense linear algebra over a prime field F_p.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vcsum/kernels.hpp"

namespace vcsum {

using Elem = std::uint32_t;

inline Elem add_mod(Elem a, Elem b, Elem p) {
    const std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<Elem>(s >= p ? s - p : s);
}
inline Elem sub_mod(Elem a, Elem b, Elem p) { return a >= b ? a - b : static_cast<Elem>(std::uint64_t(a) + p - b); }
inline Elem mul_mod(Elem a, Elem b, Elem p) { return static_cast<Elem>(std::uint64_t(a) * b % p); }
inline Elem neg_mod(Elem a, Elem p) { return a == 0 ? 0 : p - a; }
Elem pow_mod(Elem base, std::uint64_t exp, Elem p);
/// Multiplicative inverse of a nonzero element (Fermat).
Elem inv_mod(Elem a, Elem p);

class FieldMatrix {
public:
    /// Zero matrix.
    FieldMatrix(Elem p, std::size_t rows, std::size_t cols);
    /// Row-major entries; throws ParameterError on a bad size or entry >= p.
    FieldMatrix(Elem p, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

    static FieldMatrix identity(Elem p, std::size_t k);

    Elem modulus() const noexcept { return p_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Elem v);
    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<const Elem> entries() const noexcept { return data_; }

    FieldMatrix transposed() const;
    /// Rows reordered so that row i of the result is row order[i] of this.
    FieldMatrix permute_rows(std::span<const std::size_t> order) const;

    friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

private:
    Elem p_;
    std::size_t rows_, cols_;
    std::vector<Elem> data_;
};

enum class RankPath {
    automatic,  // packed for p = 2, generic otherwise
    generic,    // row-major Elem rows, multiply-add elimination
    packed_f2,  // 64 entries per word, XOR elimination (p = 2 only)
};

/// Exact rank over F_p by Gaussian elimination. Pivots are taken column by
/// column, choosing the first row (top-down) with a nonzero entry.
std::size_t rank(const FieldMatrix& m, RankPath path = RankPath::automatic,
                 const kernels::KernelSet* ks = nullptr);

/// Incrementally maintained basis of a subspace of F_p^length.
///
/// Vectors are inserted one at a time and reduced against the basis in
/// insertion order. When tracking is enabled, every basis vector remembers
/// its expression as a combination of the inserted vectors, so solve() can
/// return coefficients over the original inputs.
class SpanBasis {
public:
    SpanBasis(Elem p, std::size_t length, RankPath path = RankPath::automatic, bool track_combinations = false,
              const kernels::KernelSet* ks = nullptr);

    /// Returns true when `v` was independent of the current span.
    bool insert(std::span<const Elem> v);
    bool contains(std::span<const Elem> v) const;

    /// Coefficients c with v = sum_j c[j] * inserted[j], or nullopt when v is
    /// outside the span. Requires tracking.
    std::optional<std::vector<Elem>> solve(std::span<const Elem> v) const;

    std::size_t rank() const noexcept { return pivots_.size(); }
    std::size_t inserted() const noexcept { return inserted_; }
    std::size_t length() const noexcept { return length_; }
    bool packed() const noexcept { return packed_; }

private:
    struct Reduced {
        std::vector<std::uint64_t> bits;  // packed form
        std::vector<Elem> dense;          // generic form
        std::vector<Elem> combo;          // combination over inserted vectors
    };

    Reduced load(std::span<const Elem> v) const;
    // Reduces in place against the basis; also accumulates the combination.
    void reduce(Reduced& r, bool accumulate_combo, bool negate_into_combo) const;
    bool is_zero(const Reduced& r) const;
    std::size_t first_nonzero(const Reduced& r) const;

    Elem p_;
    std::size_t length_;
    bool packed_;
    bool track_;
    const kernels::KernelSet* ks_;
    std::size_t words_;
    std::size_t inserted_ = 0;
    std::vector<std::size_t> pivots_;
    std::vector<Reduced> basis_;
};

}  // namespace vcsum
