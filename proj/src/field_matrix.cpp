#include "vcsum/field_matrix.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "vcsum/errors.hpp"
#include "vcsum/set_family.hpp"

namespace vcsum {

Elem pow_mod(Elem base, std::uint64_t exp, Elem p) {
    std::uint64_t result = 1 % p, b = base % p;
    while (exp != 0) {
        if (exp & 1U) result = result * b % p;
        b = b * b % p;
        exp >>= 1;
    }
    return static_cast<Elem>(result);
}

Elem inv_mod(Elem a, Elem p) {
    if (a % p == 0) throw ParameterError("zero has no inverse");
    return pow_mod(a, p - 2, p);
}

// --- FieldMatrix -----------------------------------------------------------

FieldMatrix::FieldMatrix(Elem p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    require_prime(p);
}

FieldMatrix::FieldMatrix(Elem p, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : p_(p), rows_(rows), cols_(cols), data_(std::move(entries)) {
    require_prime(p);
    if (data_.size() != rows * cols)
        throw ParameterError("expected " + std::to_string(rows * cols) + " entries, got " +
                             std::to_string(data_.size()));
    for (Elem v : data_)
        if (v >= p) throw ParameterError("matrix entry " + std::to_string(v) + " is not reduced mod p");
}

FieldMatrix FieldMatrix::identity(Elem p, std::size_t k) {
    FieldMatrix m(p, k, k);
    for (std::size_t i = 0; i < k; ++i) m.data_[i * k + i] = 1;
    return m;
}

void FieldMatrix::set(std::size_t r, std::size_t c, Elem v) {
    if (v >= p_) throw ParameterError("matrix entry is not reduced mod p");
    data_[r * cols_ + c] = v;
}

FieldMatrix FieldMatrix::transposed() const {
    FieldMatrix t(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
    return t;
}

FieldMatrix FieldMatrix::permute_rows(std::span<const std::size_t> order) const {
    if (order.size() != rows_) throw DimensionError("row permutation has the wrong length");
    FieldMatrix out(p_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const auto src = row(order[i]);
        std::copy(src.begin(), src.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
    }
    return out;
}

// --- rank ------------------------------------------------------------------

namespace {

std::size_t rank_generic(const FieldMatrix& m, const kernels::KernelSet& ks) {
    const Elem p = m.modulus();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<Elem> a(m.entries().begin(), m.entries().end());
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(piv * cols),
                             a.begin() + static_cast<std::ptrdiff_t>((piv + 1) * cols),
                             a.begin() + static_cast<std::ptrdiff_t>(r * cols));
        Elem* pivot_row = a.data() + r * cols;
        const Elem inv = inv_mod(pivot_row[c], p);
        for (std::size_t j = c; j < cols; ++j) pivot_row[j] = mul_mod(pivot_row[j], inv, p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            Elem* target = a.data() + i * cols;
            if (target[c] != 0) ks.axpy_mod(target + c, pivot_row + c, neg_mod(target[c], p), p, cols - c);
        }
        ++r;
    }
    return r;
}

std::size_t rank_packed(const FieldMatrix& m, const kernels::KernelSet& ks) {
    const std::size_t rows = m.rows(), cols = m.cols();
    const std::size_t words = (cols + 63) / 64;
    std::vector<std::uint64_t> a(rows * words, 0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (m.at(i, j) != 0) a[i * words + j / 64] |= std::uint64_t(1) << (j % 64);

    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t bit = std::uint64_t(1) << (c % 64);
        std::size_t piv = r;
        while (piv < rows && !(a[piv * words + w] & bit)) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(piv * words),
                             a.begin() + static_cast<std::ptrdiff_t>((piv + 1) * words),
                             a.begin() + static_cast<std::ptrdiff_t>(r * words));
        const std::uint64_t* pivot_row = a.data() + r * words;
        for (std::size_t i = r + 1; i < rows; ++i) {
            std::uint64_t* target = a.data() + i * words;
            if (target[w] & bit) ks.xor_words(target + w, pivot_row + w, words - w);
        }
        ++r;
    }
    return r;
}

}  // namespace

std::size_t rank(const FieldMatrix& m, RankPath path, const kernels::KernelSet* ks) {
    const kernels::KernelSet& k = ks != nullptr ? *ks : kernels::active_kernels();
    if (path == RankPath::automatic) path = m.modulus() == 2 ? RankPath::packed_f2 : RankPath::generic;
    if (path == RankPath::packed_f2) {
        if (m.modulus() != 2) throw ParameterError("packed rank requires p = 2");
        return rank_packed(m, k);
    }
    return rank_generic(m, k);
}

// --- SpanBasis -------------------------------------------------------------

SpanBasis::SpanBasis(Elem p, std::size_t length, RankPath path, bool track_combinations,
                     const kernels::KernelSet* ks)
    : p_(p), length_(length), track_(track_combinations), ks_(ks != nullptr ? ks : &kernels::active_kernels()) {
    require_prime(p);
    if (path == RankPath::automatic) path = p == 2 ? RankPath::packed_f2 : RankPath::generic;
    if (path == RankPath::packed_f2 && p != 2) throw ParameterError("packed span requires p = 2");
    packed_ = path == RankPath::packed_f2;
    words_ = (length + 63) / 64;
}

SpanBasis::Reduced SpanBasis::load(std::span<const Elem> v) const {
    if (v.size() != length_)
        throw DimensionError("vector length " + std::to_string(v.size()) + " differs from span length " +
                             std::to_string(length_));
    Reduced r;
    if (packed_) {
        r.bits.assign(words_, 0);
        for (std::size_t i = 0; i < length_; ++i) {
            if (v[i] >= p_) throw ParameterError("vector entry is not reduced mod p");
            if (v[i] != 0) r.bits[i / 64] |= std::uint64_t(1) << (i % 64);
        }
    } else {
        r.dense.assign(v.begin(), v.end());
        for (Elem e : r.dense)
            if (e >= p_) throw ParameterError("vector entry is not reduced mod p");
    }
    return r;
}

void SpanBasis::reduce(Reduced& r, bool accumulate_combo, bool negate_into_combo) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const std::size_t piv = pivots_[i];
        const Reduced& b = basis_[i];
        Elem c;
        if (packed_) {
            c = static_cast<Elem>((r.bits[piv / 64] >> (piv % 64)) & 1U);
            if (c == 0) continue;
            ks_->xor_words(r.bits.data() + piv / 64, b.bits.data() + piv / 64, words_ - piv / 64);
        } else {
            c = r.dense[piv];
            if (c == 0) continue;
            ks_->axpy_mod(r.dense.data() + piv, b.dense.data() + piv, neg_mod(c, p_), p_, length_ - piv);
        }
        if (accumulate_combo) {
            const Elem scale = negate_into_combo ? neg_mod(c, p_) : c;
            ks_->axpy_mod(r.combo.data(), b.combo.data(), scale, p_, b.combo.size());
        }
    }
}

bool SpanBasis::is_zero(const Reduced& r) const {
    if (packed_) return std::all_of(r.bits.begin(), r.bits.end(), [](std::uint64_t w) { return w == 0; });
    return std::all_of(r.dense.begin(), r.dense.end(), [](Elem e) { return e == 0; });
}

std::size_t SpanBasis::first_nonzero(const Reduced& r) const {
    if (packed_) {
        for (std::size_t w = 0; w < words_; ++w)
            if (r.bits[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(r.bits[w]));
    } else {
        for (std::size_t i = 0; i < length_; ++i)
            if (r.dense[i] != 0) return i;
    }
    return length_;
}

bool SpanBasis::insert(std::span<const Elem> v) {
    Reduced r = load(v);
    if (track_) {
        r.combo.assign(inserted_ + 1, 0);
        r.combo[inserted_] = 1;
    }
    reduce(r, track_, true);
    ++inserted_;
    if (is_zero(r)) return false;

    const std::size_t piv = first_nonzero(r);
    if (!packed_) {
        const Elem inv = inv_mod(r.dense[piv], p_);
        for (Elem& e : r.dense) e = mul_mod(e, inv, p_);
        for (Elem& e : r.combo) e = mul_mod(e, inv, p_);
    }
    pivots_.push_back(piv);
    basis_.push_back(std::move(r));
    return true;
}

bool SpanBasis::contains(std::span<const Elem> v) const {
    Reduced r = load(v);
    reduce(r, false, false);
    return is_zero(r);
}

std::optional<std::vector<Elem>> SpanBasis::solve(std::span<const Elem> v) const {
    if (!track_) throw ParameterError("solve() requires a SpanBasis with combination tracking");
    Reduced r = load(v);
    r.combo.assign(inserted_, 0);
    reduce(r, true, false);
    if (!is_zero(r)) return std::nullopt;
    return std::move(r.combo);
}

}  // namespace vcsum
