#include "vcsum/clp_slice.hpp"

#include <map>

#include "vcsum/digest.hpp"
#include "vcsum/errors.hpp"

namespace vcsum {

namespace {

std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t limit, const char* what) {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && v > limit / base)
            throw ResourceError(std::string(what) + " exceeds its size guard of " + std::to_string(limit));
        v *= base;
    }
    if (v > limit) throw ResourceError(std::string(what) + " exceeds its size guard of " + std::to_string(limit));
    return v;
}

struct Composition {
    std::vector<std::uint32_t> parts;
    Elem coefficient;  // multinomial(e; parts) mod p
};

// All ways to write e as an ordered sum of k parts, with their multinomial
// coefficients. e < p keeps every factorial invertible.
std::vector<Composition> compositions(std::uint32_t e, int k, Elem p) {
    std::vector<Elem> fact(e + 1, 1);
    for (std::uint32_t i = 1; i <= e; ++i) fact[i] = mul_mod(fact[i - 1], i, p);

    std::vector<Composition> out;
    std::vector<std::uint32_t> parts(static_cast<std::size_t>(k), 0);
    const auto rec = [&](auto&& self, int slot, std::uint32_t remaining, Elem denom) -> void {
        if (slot == k - 1) {
            parts[static_cast<std::size_t>(slot)] = remaining;
            const Elem d = mul_mod(denom, fact[remaining], p);
            out.push_back({parts, mul_mod(fact[e], inv_mod(d, p), p)});
            return;
        }
        for (std::uint32_t a = remaining + 1; a-- > 0;) {
            parts[static_cast<std::size_t>(slot)] = a;
            self(self, slot + 1, remaining - a, mul_mod(denom, fact[a], p));
        }
    };
    rec(rec, 0, e, 1);
    return out;
}

struct AxisKey {
    int axis;
    Exponents monomial;
};

struct AxisKeyOrder {
    bool operator()(const AxisKey& a, const AxisKey& b) const {
        if (a.axis != b.axis) return a.axis < b.axis;
        return MonomialOrder{}(a.monomial, b.monomial);
    }
};

}  // namespace

// --- sum matrices ----------------------------------------------------------

FieldMatrix clp_matrix(const ReducedPolynomial& poly, const SizeGuards& guards) {
    const Elem p = poly.modulus();
    const int n = poly.variables();
    const std::uint64_t size = checked_power(p, static_cast<std::uint64_t>(n), guards.clp_points, "p^n");
    const std::vector<Elem> table = poly.evaluate_all();
    FieldMatrix m(p, size, size);
    for (std::uint64_t x = 0; x < size; ++x)
        for (std::uint64_t y = 0; y < size; ++y) m.set(x, y, table[add_points(x, y, p, n)]);
    return m;
}

ClpReport verify_clp_bound(const ReducedPolynomial& poly, const SizeGuards& guards) {
    ClpReport r;
    r.rank = rank(clp_matrix(poly, guards));
    r.degree = poly.degree();
    r.bound = 2 * monomial_count(poly.modulus(), poly.variables(), r.degree / 2);
    r.ok = r.rank <= r.bound;
    return r;
}

// --- slice decompositions --------------------------------------------------

ReducedPolynomial expand_sum(const ReducedPolynomial& f, int k) {
    if (k < 1) throw ParameterError("arity must be positive");
    const Elem p = f.modulus();
    const int n = f.variables();
    ReducedPolynomial out(p, k * n);
    Exponents big(static_cast<std::size_t>(k * n), 0);

    for (const auto& [e, c] : f.terms()) {
        std::vector<std::vector<Composition>> per_var;
        per_var.reserve(e.size());
        for (std::uint32_t ej : e) per_var.push_back(compositions(ej, k, p));

        const auto rec = [&](auto&& self, int var, Elem coeff) -> void {
            if (var == n) {
                out.add_term(big, coeff);
                return;
            }
            for (const Composition& comp : per_var[static_cast<std::size_t>(var)]) {
                for (int axis = 0; axis < k; ++axis)
                    big[static_cast<std::size_t>(axis * n + var)] = comp.parts[static_cast<std::size_t>(axis)];
                self(self, var + 1, mul_mod(coeff, comp.coefficient, p));
            }
        };
        rec(rec, 0, c);
    }
    return out;
}

SliceDecomposition slice_decompose(const ReducedPolynomial& f, int k, const SizeGuards& guards) {
    if (k < 2) throw ParameterError("slice decompositions need arity k >= 2");
    const Elem p = f.modulus();
    const int n = f.variables();
    checked_power(p, static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(n), guards.grid_cells, "p^(k n)");

    SliceDecomposition dec{p, n, k, f.degree(), f.degree() / k, {}};
    const ReducedPolynomial expanded = expand_sum(f, k);

    std::map<AxisKey, ReducedPolynomial, AxisKeyOrder> grouped;
    for (const auto& [big, c] : expanded.terms()) {
        int axis = -1;
        for (int i = 0; i < k && axis < 0; ++i) {
            int group_degree = 0;
            for (int j = 0; j < n; ++j) group_degree += static_cast<int>(big[static_cast<std::size_t>(i * n + j)]);
            if (group_degree <= dec.axis_degree_bound) axis = i;
        }
        if (axis < 0) throw Error("no axis within the degree bound; expansion exceeded deg f");

        Exponents mono(big.begin() + axis * n, big.begin() + (axis + 1) * n);
        Exponents rest;
        rest.reserve(static_cast<std::size_t>((k - 1) * n));
        for (int i = 0; i < k; ++i)
            if (i != axis) rest.insert(rest.end(), big.begin() + i * n, big.begin() + (i + 1) * n);

        auto [it, inserted] = grouped.try_emplace(AxisKey{axis + 1, std::move(mono)}, p, (k - 1) * n);
        it->second.add_term(rest, c);
    }
    for (auto& [key, residual] : grouped)
        if (!residual.is_zero()) dec.terms.push_back({key.axis, key.monomial, std::move(residual)});
    return dec;
}

Elem evaluate_decomposition(const SliceDecomposition& dec, std::span<const PointCode> axis_points) {
    if (axis_points.size() != static_cast<std::size_t>(dec.arity)) throw DimensionError("need one point per axis");
    const Elem p = dec.p;
    std::vector<std::vector<Elem>> coords;
    for (PointCode x : axis_points) coords.push_back(decode_point(x, p, dec.n));

    Elem total = 0;
    std::vector<Elem> rest;
    for (const SliceTerm& term : dec.terms) {
        const auto& own = coords[static_cast<std::size_t>(term.axis - 1)];
        Elem head = 1;
        for (int j = 0; j < dec.n; ++j)
            head = mul_mod(head, pow_mod(own[static_cast<std::size_t>(j)], term.axis_monomial[static_cast<std::size_t>(j)], p), p);
        if (head == 0) continue;
        rest.clear();
        for (int i = 0; i < dec.arity; ++i)
            if (i != term.axis - 1) rest.insert(rest.end(), coords[static_cast<std::size_t>(i)].begin(), coords[static_cast<std::size_t>(i)].end());
        total = add_mod(total, mul_mod(head, term.residual.evaluate(rest), p), p);
    }
    return total;
}

bool verify_reconstruction(const SliceDecomposition& dec, const ReducedPolynomial& f, const SizeGuards& guards) {
    if (f.modulus() != dec.p || f.variables() != dec.n) throw DimensionError("decomposition and f disagree on p or n");
    const Elem p = dec.p;
    const std::uint64_t side = point_space_size(p, dec.n);
    checked_power(side, static_cast<std::uint64_t>(dec.arity), guards.grid_cells, "p^(k n)");
    const std::vector<Elem> f_values = f.evaluate_all();

    std::vector<PointCode> tuple(static_cast<std::size_t>(dec.arity), 0);
    for (;;) {
        PointCode sum = 0;
        for (PointCode x : tuple) sum = add_points(sum, x, p, dec.n);
        if (evaluate_decomposition(dec, tuple) != f_values[sum]) return false;
        std::size_t i = 0;
        while (i < tuple.size() && ++tuple[i] == side) tuple[i++] = 0;
        if (i == tuple.size()) return true;
    }
}

// --- sum tensors -----------------------------------------------------------

std::string SumTensor::content_digest() const {
    Fnv1a h;
    h.update_u64(p);
    h.update_u64(static_cast<std::uint64_t>(arity));
    h.update_values(axis_points.points());
    h.update_values(std::span<const Elem>(values));
    return h.hex();
}

SumTensor sum_tensor(const ReducedPolynomial& f, const PointSet& axis_points, int k, const SizeGuards& guards) {
    if (k < 1) throw ParameterError("arity must be positive");
    if (f.modulus() != axis_points.modulus() || f.variables() != axis_points.dimension())
        throw DimensionError("polynomial and axis points disagree on p or n");
    axis_points.require_nonempty();
    const Elem p = f.modulus();
    const int n = f.variables();
    const std::uint64_t side = axis_points.size();
    const std::uint64_t entries = checked_power(side, static_cast<std::uint64_t>(k), guards.tensor_entries, "|A|^k");

    std::vector<Elem> f_table;
    const bool tabulate = axis_points.space_size() <= (std::uint64_t(1) << 20);
    if (tabulate) f_table = f.evaluate_all();

    SumTensor t{p, k, axis_points, f, std::vector<Elem>(entries)};
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    const auto pts = axis_points.points();
    for (std::uint64_t flat = 0; flat < entries; ++flat) {
        PointCode sum = 0;
        for (std::size_t i : idx) sum = add_points(sum, pts[i], p, n);
        t.values[flat] = tabulate ? f_table[sum] : f.evaluate_code(sum);
        // Row-major: the last axis varies fastest.
        for (std::size_t a = idx.size(); a-- > 0;) {
            if (++idx[a] < side) break;
            idx[a] = 0;
        }
    }
    return t;
}

DiagonalReport diagonal_slice_rank_bounds(std::size_t side, int arity, std::span<const Elem> values) {
    std::uint64_t expected = 1, step = 0;
    for (int i = 0; i < arity; ++i) {
        step = step * side + 1;
        expected *= side;
    }
    if (values.size() != expected) throw DimensionError("tensor has the wrong number of entries");

    DiagonalReport r;
    r.is_diagonal = true;
    for (std::uint64_t i = 0; i < values.size(); ++i) {
        if (values[i] == 0) continue;
        if (step != 0 && i % step == 0)
            ++r.nonzero_diagonal_count;
        else
            r.is_diagonal = false;
    }
    r.lower_bound = r.is_diagonal ? r.nonzero_diagonal_count : 0;
    return r;
}

DiagonalReport diagonal_slice_rank_bounds(const SumTensor& t) {
    return diagonal_slice_rank_bounds(t.side(), t.arity, t.values);
}

}  // namespace vcsum
