#include "doctest.h"
#include "oracles.hpp"
#include "vcsum/clp_slice.hpp"
#include "vcsum/errors.hpp"
#include "vcsum/random.hpp"
#include "vcsum/theorem_verifier.hpp"

using namespace vcsum;

namespace {

ReducedPolynomial x_(Elem p, int n, int i, std::uint32_t power = 1) {
    Exponents e(n, 0);
    e[i] = power;
    return ReducedPolynomial::monomial(p, n, e);
}

Exponents zeros(int n) { return Exponents(n, 0); }

}  // namespace

TEST_CASE("clp_matrix examples") {
    const FieldMatrix ones = clp_matrix(ReducedPolynomial::constant(2, 2, 1));
    CHECK(ones == FieldMatrix(2, 4, 4, std::vector<Elem>(16, 1)));
    CHECK(rank(ones) == 1);

    for (int n = 1; n <= 4; ++n) {
        const FieldMatrix m = clp_matrix(indicator_of_zero(2, n));
        const std::size_t side = std::size_t(1) << n;
        CHECK(m == FieldMatrix::identity(2, side));  // x + y = 0 iff y = x over F2
        CHECK(rank(m) == side);
    }

    const FieldMatrix flip = clp_matrix(x_(2, 1, 0));
    CHECK(flip == FieldMatrix(2, 2, 2, {0, 1, 1, 0}));
    const ClpReport r = verify_clp_bound(x_(2, 1, 0));
    CHECK(r.rank == 2);
    CHECK(r.bound == 2);
    CHECK(r.ok);

    // rows and columns follow code order: M[x][y] = P(x + y) mod p
    const ReducedPolynomial f = ReducedPolynomial::parse(3, 1, "1:2;2:1");
    const FieldMatrix m3 = clp_matrix(f);
    for (PointCode x = 0; x < 3; ++x)
        for (PointCode y = 0; y < 3; ++y) CHECK(m3.at(x, y) == f.evaluate_code((x + y) % 3));
}

TEST_CASE("clp guard") {
    CHECK_THROWS_AS(clp_matrix(ReducedPolynomial::constant(2, 13, 1)), ResourceError);
    SizeGuards g;
    g.clp_points = 1 << 13;
    CHECK(clp_matrix(ReducedPolynomial::constant(2, 13, 1), g).rows() == (1U << 13));
}

TEST_CASE("verify_clp_bound: degree 0 and seeded corpora") {
    for (Elem p : {2U, 3U, 5U}) {
        const ClpReport r = verify_clp_bound(ReducedPolynomial::constant(p, 2, 1));
        CHECK(r.rank <= 1);
        CHECK(r.bound == 2);
        CHECK(r.ok);
        CHECK(verify_clp_bound(ReducedPolynomial(p, 2)).rank == 0);
    }
    for (int i = 0; i < 90; ++i) {
        const ClpReport r = verify_clp_bound(random_polynomial(2, 6, i % 7, derive_seed(3, i)));
        CHECK(r.ok);
        CHECK(r.degree == i % 7);
    }
    for (int i = 0; i < 45; ++i) CHECK(verify_clp_bound(random_polynomial(3, 3, i % 7, derive_seed(4, i))).ok);
}

TEST_CASE("clp rank agrees with a plain elimination oracle") {
    for (int i = 0; i < 30; ++i) {
        const Elem p = i % 2 == 0 ? 2 : 3;
        const ReducedPolynomial f = random_polynomial(p, 3, i % 4, derive_seed(21, i));
        const FieldMatrix m = clp_matrix(f);
        std::vector<std::vector<unsigned>> rows;
        for (std::size_t r = 0; r < m.rows(); ++r) rows.emplace_back(m.row(r).begin(), m.row(r).end());
        CHECK(verify_clp_bound(f).rank == oracle::rank(rows, p));
    }
}

TEST_CASE("expand_sum") {
    // (x + y)^2 over F3 = x^2 + 2xy + y^2
    const ReducedPolynomial e = expand_sum(x_(3, 1, 0, 2), 2);
    CHECK(e.serialize() == "1:2,0;2:1,1;1:0,2");
    // over F2, (x1 + y1)(x2 + y2) has four terms of degree 2
    const ReducedPolynomial f = ReducedPolynomial::monomial(2, 2, {1, 1});
    CHECK(expand_sum(f, 2).terms().size() == 4);
}

TEST_CASE("slice_decompose examples") {
    const SliceDecomposition one = slice_decompose(ReducedPolynomial::constant(2, 2, 1), 3);
    REQUIRE(one.terms.size() == 1);
    CHECK(one.terms[0].axis == 1);
    CHECK(one.terms[0].axis_monomial == zeros(2));
    CHECK(one.terms[0].residual == ReducedPolynomial::constant(2, 4, 1));

    // f = x over F2, k = 2: each linear term lands on the other axis's constant monomial
    const SliceDecomposition lin = slice_decompose(x_(2, 1, 0), 2);
    CHECK(lin.axis_degree_bound == 0);
    REQUIRE(lin.terms.size() == 2);
    CHECK(lin.terms[0].axis == 1);
    CHECK(lin.terms[0].axis_monomial == zeros(1));
    CHECK(lin.terms[0].residual == x_(2, 1, 0));  // the y variable
    CHECK(lin.terms[1].axis == 2);
    CHECK(lin.terms[1].axis_monomial == zeros(1));
    CHECK(lin.terms[1].residual == x_(2, 1, 0));  // the x variable
    CHECK(lin.terms.size() <= 2 * monomial_count(2, 1, 0));
    CHECK(verify_reconstruction(lin, x_(2, 1, 0)));

    const ReducedPolynomial sq = x_(3, 1, 0, 2);
    CHECK(expand_sum(sq, 3).terms().size() == 6);
    const SliceDecomposition cube = slice_decompose(sq, 3);
    CHECK(cube.terms.size() <= 3 * monomial_count(3, 1, 0));
    CHECK(verify_reconstruction(cube, sq));
    CHECK_THROWS_AS(slice_decompose(sq, 1), ParameterError);
}

TEST_CASE("slice decomposition: reconstruction and term bound on the seeded corpus") {
    int checked = 0;
    for (Elem p : {2U, 3U})
        for (int n = 1; n <= 3; ++n)
            for (int k : {2, 3}) {
                const int top = static_cast<int>((p - 1) * n);
                for (int i = 0; i < 6; ++i) {
                    const int d = i % (top + 1);
                    const ReducedPolynomial f = random_polynomial(p, n, d, derive_seed(p * 100 + n * 10 + k, i));
                    const SliceDecomposition dec = slice_decompose(f, k);
                    CHECK(dec.source_degree == d);
                    CHECK(dec.axis_degree_bound == d / k);
                    CHECK(dec.terms.size() <= k * monomial_count(p, n, d / k));
                    CHECK(verify_reconstruction(dec, f));
                    for (const SliceTerm& t : dec.terms) CHECK(total_degree(t.axis_monomial) <= d / k);
                    // pointwise check independent of verify_reconstruction on a sample
                    Rng rng(derive_seed(5, checked));
                    for (int s = 0; s < 20; ++s) {
                        std::vector<PointCode> xs(k);
                        PointCode sum = 0;
                        for (auto& x : xs) {
                            x = rng.below(point_space_size(p, n));
                            sum = add_points(sum, x, p, n);
                        }
                        CHECK(evaluate_decomposition(dec, xs) == f.evaluate_code(sum));
                    }
                    if (k == 2 && p == 2) CHECK(rank(clp_matrix(f)) <= dec.terms.size());
                    ++checked;
                }
            }
    CHECK(checked == 72);
}

TEST_CASE("slice guard") {
    SizeGuards g;
    g.grid_cells = 10;
    const SliceDecomposition dec = slice_decompose(x_(3, 2, 0), 2);
    CHECK_THROWS_AS(verify_reconstruction(dec, x_(3, 2, 0), g), ResourceError);
}

TEST_CASE("sum_tensor examples") {
    const PointSet a = embed_01(SetFamily(3, {0, 1, 6}), 2);
    const SumTensor ones = sum_tensor(ReducedPolynomial::constant(2, 3, 1), a, 2);
    CHECK(ones.values == std::vector<Elem>(9, 1));
    CHECK(ones.side() == 3);

    const SumTensor id = sum_tensor(indicator_of_zero(2, 3), a, 2);
    CHECK(id.values == std::vector<Elem>{1, 0, 0, 0, 1, 0, 0, 0, 1});
    const DiagonalReport dr = diagonal_slice_rank_bounds(id);
    CHECK(dr.is_diagonal);
    CHECK(dr.lower_bound == 3);

    const PointSet a3 = embed_01(SetFamily(3, {0, 1, 6}), 3);
    const SumTensor t3 = sum_tensor(indicator_of_zero(3, 3), a3, 3);
    CHECK(t3.values.size() == 27);
    CHECK(diagonal_slice_rank_bounds(t3).is_diagonal);
    CHECK(diagonal_slice_rank_bounds(t3).nonzero_diagonal_count == 3);

    SizeGuards g;
    g.tensor_entries = 26;
    CHECK_THROWS_AS(sum_tensor(indicator_of_zero(3, 3), a3, 3, g), ResourceError);
    CHECK_THROWS_AS(sum_tensor(indicator_of_zero(2, 3), a3, 3), DimensionError);
}

TEST_CASE("sum_tensor digest is stable") {
    const PointSet a = embed_01(SetFamily(3, {0, 1, 6}), 3);
    const SumTensor t = sum_tensor(indicator_of_zero(3, 3), a, 3);
    CHECK(t.content_digest() == sum_tensor(indicator_of_zero(3, 3), a, 3).content_digest());
    CHECK(t.content_digest().size() == 16);
    CHECK(t.content_digest() != sum_tensor(indicator_of_zero(3, 3), a, 2).content_digest());
}

TEST_CASE("diagonal_slice_rank_bounds examples") {
    const DiagonalReport id = diagonal_slice_rank_bounds(4, 2, FieldMatrix::identity(2, 4).entries());
    CHECK(id.is_diagonal);
    CHECK(id.lower_bound == 4);
    const DiagonalReport ones = diagonal_slice_rank_bounds(2, 2, std::vector<Elem>(4, 1));
    CHECK_FALSE(ones.is_diagonal);
    CHECK(ones.lower_bound == 0);
    const DiagonalReport partial = diagonal_slice_rank_bounds(3, 3, [] {
        std::vector<Elem> v(27, 0);
        v[0] = 2;
        v[26] = 1;
        return v;
    }());
    CHECK(partial.is_diagonal);
    CHECK(partial.nonzero_diagonal_count == 2);
    CHECK_THROWS_AS(diagonal_slice_rank_bounds(3, 2, std::vector<Elem>(8, 0)), DimensionError);
}

TEST_CASE("p-fold 0/1 sum tensors are diagonal; the squeeze inequality holds") {
    for (Elem p : {2U, 3U, 5U})
        for (int n = 1; n <= 4; ++n)
            for (int i = 0; i < 8; ++i) {
                Rng rng(derive_seed(p * 10 + n, i));
                const std::uint64_t cap = p == 5 ? 10 : (std::uint64_t(1) << n);
                const auto members = sample_distinct(rng, std::uint64_t(1) << n,
                                                     rng.between(1, std::min(cap, std::uint64_t(1) << n)));
                const SetFamily fam(n, {members.begin(), members.end()});
                const PointSet a = embed_01(fam, p);
                const SumTensor t = sum_tensor(indicator_of_zero(p, n), a, static_cast<int>(p));
                const DiagonalReport dr = diagonal_slice_rank_bounds(t);
                CHECK(dr.is_diagonal);
                CHECK(dr.nonzero_diagonal_count == fam.size());
                CHECK(dr.lower_bound == fam.size());

                // degree of the origin indicator restricted to p*A
                const PointSet pa = k_fold_sumset(a, static_cast<int>(p));
                std::vector<Elem> values;
                for (PointCode x : pa.points()) values.push_back(x == 0 ? 1 : 0);
                const int d = deg_on_set(PartialFunction(pa, values));
                CHECK(fam.size() <= p * monomial_count(p, n, d / static_cast<int>(p)));
            }
}
