#pragma once

// p-reduced polynomials over F_p and interpolation degree of point sets.
//
// A p-reduced polynomial has every individual exponent in [0, p-1]; such
// polynomials are in bijection with functions F_p^n -> F_p. Monomials are
// ordered by total degree, then lexicographically descending by exponent
// vector (so x1 comes before x2, and x1^2 before x1*x2).

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "vcsum/field_matrix.hpp"
#include "vcsum/set_family.hpp"

namespace vcsum {

using Exponents = std::vector<std::uint32_t>;

int total_degree(const Exponents& e);

/// Strict weak order: graded, then descending lexicographic.
struct MonomialOrder {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/// "1", "x1", "x1^2*x3", ...
std::string format_monomial(const Exponents& e);

struct MonomialBasis {
    Elem p = 2;
    int n = 1;
    int max_degree = 0;
    std::vector<Exponents> monomials;
};

class ReducedPolynomial {
public:
    using Terms = std::map<Exponents, Elem, MonomialOrder>;

    ReducedPolynomial(Elem p, int n);

    static ReducedPolynomial constant(Elem p, int n, Elem c);
    static ReducedPolynomial monomial(Elem p, int n, const Exponents& e, Elem c = 1);
    /// The variable x_{index+1}.
    static ReducedPolynomial variable(Elem p, int n, int index);

    Elem modulus() const noexcept { return p_; }
    int variables() const noexcept { return n_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Adds c to the coefficient of x^e (c is reduced mod p first).
    void add_term(const Exponents& e, Elem c);
    Elem coefficient(const Exponents& e) const;

    /// Largest total degree of a stored term; 0 for the zero polynomial.
    int degree() const;

    Elem evaluate(std::span<const Elem> point) const;
    Elem evaluate_code(PointCode x) const;
    /// Values at every point of F_p^n in code order (guarded by p^n <= 2^24).
    std::vector<Elem> evaluate_all() const;

    ReducedPolynomial& operator+=(const ReducedPolynomial& other);
    ReducedPolynomial& operator*=(Elem scale);
    friend ReducedPolynomial operator+(ReducedPolynomial a, const ReducedPolynomial& b) { return a += b; }

    /// Terms as "coefficient:e1,e2,...,en" in canonical monomial order,
    /// joined by ';'. The zero polynomial renders as "".
    std::string serialize() const;
    std::vector<std::string> serialize_terms() const;
    static ReducedPolynomial parse(Elem p, int n, const std::string& text);

    friend bool operator==(const ReducedPolynomial&, const ReducedPolynomial&) = default;

private:
    Elem p_;
    int n_;
    Terms terms_;
};

/// A function on a finite point set, values aligned with domain order.
struct PartialFunction {
    PartialFunction(PointSet domain, std::vector<Elem> values);

    PointSet domain;
    std::vector<Elem> values;
};

/// |M_d(p, n)|: monomials with individual degrees <= p-1 and total <= d.
std::uint64_t monomial_count(Elem p, int n, int d);

/// Monomials of total degree exactly `degree`, in canonical order.
std::vector<Exponents> monomials_of_degree(Elem p, int n, int degree);

/// M_d(p, n) in canonical order.
MonomialBasis monomial_basis(Elem p, int n, int d);

/// Row i = domain point i, column j = basis monomial j evaluated there.
FieldMatrix evaluation_matrix(const PointSet& domain, const MonomialBasis& basis);

/// Smallest d such that some reduced polynomial of degree <= d agrees with f.
int deg_on_set(const PartialFunction& f, RankPath path = RankPath::automatic);

/// A polynomial of degree deg_on_set(f) agreeing with f on its domain.
ReducedPolynomial interpolate_min_degree(const PartialFunction& f);

/// Smallest d such that every function on the domain has degree <= d.
int int_deg(const PointSet& domain, RankPath path = RankPath::automatic);

/// Pattern v : S -> {0,1}, stored as the subset of S where v = 1.
struct AbsentPattern {
    Mask support = 0;
    Mask ones = 0;
};

/// Numerically smallest trace pattern on S missing from A.
AbsentPattern find_unshattered_witness(const SetFamily& a, Mask s);

/// Multilinear polynomial over F_2 of degree <= vc_dim(a) agreeing with the
/// monomial prod_{i in S} x_i on every member of a.
ReducedPolynomial represent_monomial(const SetFamily& a, Mask s);

/// prod_j (1 - x_j^{p-1}): 1 at the origin, 0 elsewhere.
ReducedPolynomial indicator_of_zero(Elem p, int n);

}  // namespace vcsum
