#pragma once

// Sum matrices M[x][y] = P(x + y), sum tensors T(X1..Xk) = f(X1 + ... + Xk),
// and explicit slice-rank decompositions of the latter by monomial grouping.
//
// Only the constructive upper bound and the diagonal lower bound are
// exposed; exact slice rank of arbitrary tensors is not computed.

#include <cstdint>
#include <string>
#include <vector>

#include "vcsum/field_matrix.hpp"
#include "vcsum/interpolation.hpp"
#include "vcsum/set_family.hpp"

namespace vcsum {

/// Size limits; exceeding one raises ResourceError.
struct SizeGuards {
    std::uint64_t clp_points = 4096;                       // p^n for sum matrices
    std::uint64_t grid_cells = std::uint64_t(1) << 24;     // p^(k n) reconstruction grid
    std::uint64_t tensor_entries = std::uint64_t(1) << 24; // |A|^k dense tensor
};

/// p^n x p^n matrix with rows and columns in point-code order.
FieldMatrix clp_matrix(const ReducedPolynomial& poly, const SizeGuards& guards = {});

struct ClpReport {
    std::size_t rank = 0;
    int degree = 0;
    std::uint64_t bound = 0;  // 2 * |M_{floor(deg/2)}(p, n)|
    bool ok = false;
};

ClpReport verify_clp_bound(const ReducedPolynomial& poly, const SizeGuards& guards = {});

struct SliceTerm {
    int axis;                      // 1-based
    Exponents axis_monomial;       // exponents of the chosen axis's n variables
    ReducedPolynomial residual;    // polynomial in the other (k-1) n variables, axes in order
};

struct SliceDecomposition {
    Elem p;
    int n;
    int arity;
    int source_degree;
    int axis_degree_bound;         // floor(source_degree / arity)
    std::vector<SliceTerm> terms;  // ordered by axis, then monomial order
};

/// f(X1 + ... + Xk) as a polynomial in k*n variables, axis i owning
/// variables [(i-1) n, i n).
ReducedPolynomial expand_sum(const ReducedPolynomial& f, int k);

/// Groups every monomial of expand_sum(f, k) under the lowest-index axis
/// whose variables carry total degree <= floor(deg f / k).
SliceDecomposition slice_decompose(const ReducedPolynomial& f, int k, const SizeGuards& guards = {});

/// Sum of the decomposition's terms at (X1, ..., Xk), one packed point per axis.
Elem evaluate_decomposition(const SliceDecomposition& dec, std::span<const PointCode> axis_points);

/// Checks the decomposition against f at every point of (F_p^n)^k.
bool verify_reconstruction(const SliceDecomposition& dec, const ReducedPolynomial& f,
                           const SizeGuards& guards = {});

/// Dense k-fold tensor over a shared axis point set; entry order is
/// row-major with axis 1 most significant.
struct SumTensor {
    Elem p;
    int arity;
    PointSet axis_points;
    ReducedPolynomial generator;
    std::vector<Elem> values;

    std::size_t side() const noexcept { return axis_points.size(); }
    std::string content_digest() const;
};

SumTensor sum_tensor(const ReducedPolynomial& f, const PointSet& axis_points, int k, const SizeGuards& guards = {});

struct DiagonalReport {
    bool is_diagonal = false;
    std::uint64_t lower_bound = 0;           // slice-rank lower bound, 0 when none is claimed
    std::uint64_t nonzero_diagonal_count = 0;
};

/// Diagonality check on a dense side^arity array. A diagonal tensor's slice
/// rank equals its count of nonzero diagonal entries.
DiagonalReport diagonal_slice_rank_bounds(std::size_t side, int arity, std::span<const Elem> values);
DiagonalReport diagonal_slice_rank_bounds(const SumTensor& t);

}  // namespace vcsum
