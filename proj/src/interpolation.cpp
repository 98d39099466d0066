#include "vcsum/interpolation.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "vcsum/errors.hpp"
#include "vcsum/vc_dimension.hpp"

namespace vcsum {

namespace {

constexpr std::uint64_t kEvaluateAllLimit = std::uint64_t(1) << 24;

void check_exponents(const Exponents& e, Elem p, int n) {
    if (e.size() != static_cast<std::size_t>(n))
        throw DimensionError("exponent vector has " + std::to_string(e.size()) + " entries, expected " +
                             std::to_string(n));
    for (std::uint32_t x : e)
        if (x >= p) throw ParameterError("exponent " + std::to_string(x) + " is not p-reduced");
}

void fill_grade(Elem p, std::size_t var, int remaining, Exponents& current, std::vector<Exponents>& out) {
    const std::size_t n = current.size();
    if (var == n) {
        if (remaining == 0) out.push_back(current);
        return;
    }
    const auto rest_capacity = static_cast<std::uint64_t>(p - 1) * (n - var - 1);
    const int top = static_cast<int>(std::min<std::uint64_t>(p - 1, static_cast<std::uint64_t>(remaining)));
    for (int e = top; e >= 0; --e) {
        if (static_cast<std::uint64_t>(remaining - e) > rest_capacity) break;
        current[var] = static_cast<std::uint32_t>(e);
        fill_grade(p, var + 1, remaining - e, current, out);
    }
    current[var] = 0;
}

int max_degree(Elem p, int n) { return static_cast<int>(std::min<std::uint64_t>(
    static_cast<std::uint64_t>(p - 1) * static_cast<std::uint64_t>(n), std::numeric_limits<int>::max())); }

// Evaluates every monomial at every domain point; row-major per point.
class MonomialEvaluator {
public:
    explicit MonomialEvaluator(const PointSet& domain) : p_(domain.modulus()) {
        coords_.reserve(domain.size());
        for (PointCode x : domain.points()) coords_.push_back(decode_point(x, p_, domain.dimension()));
    }

    std::vector<Elem> column(const Exponents& e) const {
        std::vector<Elem> col(coords_.size());
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            std::uint64_t v = 1;
            for (std::size_t j = 0; j < e.size() && v != 0; ++j)
                if (e[j] != 0) v = v * pow_mod(coords_[i][j], e[j], p_) % p_;
            col[i] = static_cast<Elem>(v);
        }
        return col;
    }

private:
    Elem p_;
    std::vector<std::vector<Elem>> coords_;
};

}  // namespace

int total_degree(const Exponents& e) {
    return static_cast<int>(std::accumulate(e.begin(), e.end(), std::uint64_t(0)));
}

bool MonomialOrder::operator()(const Exponents& a, const Exponents& b) const {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::string format_monomial(const Exponents& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += 'x' + std::to_string(i + 1);
        if (e[i] > 1) out += '^' + std::to_string(e[i]);
    }
    return out.empty() ? "1" : out;
}

// --- ReducedPolynomial -----------------------------------------------------

ReducedPolynomial::ReducedPolynomial(Elem p, int n) : p_(p), n_(n) {
    require_prime(p);
    if (n < 1) throw ParameterError("polynomials need at least one variable");
}

ReducedPolynomial ReducedPolynomial::constant(Elem p, int n, Elem c) {
    ReducedPolynomial f(p, n);
    f.add_term(Exponents(static_cast<std::size_t>(n), 0), c);
    return f;
}

ReducedPolynomial ReducedPolynomial::monomial(Elem p, int n, const Exponents& e, Elem c) {
    ReducedPolynomial f(p, n);
    f.add_term(e, c);
    return f;
}

ReducedPolynomial ReducedPolynomial::variable(Elem p, int n, int index) {
    if (index < 0 || index >= n) throw ParameterError("variable index out of range");
    Exponents e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(index)] = 1;
    return monomial(p, n, e);
}

void ReducedPolynomial::add_term(const Exponents& e, Elem c) {
    check_exponents(e, p_, n_);
    c %= p_;
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second = add_mod(it->second, c, p_);
    if (it->second == 0) terms_.erase(it);
}

Elem ReducedPolynomial::coefficient(const Exponents& e) const {
    const auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
}

int ReducedPolynomial::degree() const { return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first); }

Elem ReducedPolynomial::evaluate(std::span<const Elem> point) const {
    if (point.size() != static_cast<std::size_t>(n_)) throw DimensionError("point has the wrong dimension");
    std::uint64_t sum = 0;
    for (const auto& [e, c] : terms_) {
        std::uint64_t v = c;
        for (std::size_t j = 0; j < e.size() && v != 0; ++j)
            if (e[j] != 0) v = v * pow_mod(point[j] % p_, e[j], p_) % p_;
        sum = (sum + v) % p_;
    }
    return static_cast<Elem>(sum);
}

Elem ReducedPolynomial::evaluate_code(PointCode x) const { return evaluate(decode_point(x, p_, n_)); }

std::vector<Elem> ReducedPolynomial::evaluate_all() const {
    const std::uint64_t size = point_space_size(p_, n_);
    if (size > kEvaluateAllLimit) throw ResourceError("p^n exceeds the 2^24 full-evaluation guard");
    std::vector<Elem> values(size);
    std::vector<Elem> coords(static_cast<std::size_t>(n_), 0);
    for (std::uint64_t x = 0; x < size; ++x) {
        values[x] = evaluate(coords);
        // Odometer increment, coordinate 1 least significant.
        for (auto& c : coords) {
            if (++c < p_) break;
            c = 0;
        }
    }
    return values;
}

ReducedPolynomial& ReducedPolynomial::operator+=(const ReducedPolynomial& other) {
    if (other.p_ != p_ || other.n_ != n_) throw DimensionError("polynomials live in different rings");
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

ReducedPolynomial& ReducedPolynomial::operator*=(Elem scale) {
    scale %= p_;
    if (scale == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c = mul_mod(c, scale, p_);
    return *this;
}

std::vector<std::string> ReducedPolynomial::serialize_terms() const {
    std::vector<std::string> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_) {
        std::string t = std::to_string(c) + ':';
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (j != 0) t += ',';
            t += std::to_string(e[j]);
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::string ReducedPolynomial::serialize() const {
    std::string out;
    for (const auto& t : serialize_terms()) {
        if (!out.empty()) out += ';';
        out += t;
    }
    return out;
}

ReducedPolynomial ReducedPolynomial::parse(Elem p, int n, const std::string& text) {
    ReducedPolynomial f(p, n);
    std::istringstream terms(text);
    std::string term;
    while (std::getline(terms, term, ';')) {
        term.erase(std::remove_if(term.begin(), term.end(), [](char ch) { return ch == ' ' || ch == '\t'; }),
                   term.end());
        if (term.empty()) continue;
        const auto colon = term.find(':');
        if (colon == std::string::npos) throw ParseError("term '" + term + "' lacks 'coefficient:exponents'", 0);
        try {
            std::size_t used = 0;
            const unsigned long c = std::stoul(term.substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument(term);
            Exponents e;
            std::istringstream exps(term.substr(colon + 1));
            std::string x;
            while (std::getline(exps, x, ',')) {
                const unsigned long v = std::stoul(x, &used);
                if (used != x.size()) throw std::invalid_argument(x);
                e.push_back(static_cast<std::uint32_t>(v));
            }
            f.add_term(e, static_cast<Elem>(c % p));
        } catch (const std::logic_error&) {
            throw ParseError("malformed polynomial term '" + term + "'", 0);
        } catch (const Error& e) {
            throw ParseError(std::string("bad polynomial term '") + term + "': " + e.what(), 0);
        }
    }
    return f;
}

PartialFunction::PartialFunction(PointSet dom, std::vector<Elem> vals) : domain(std::move(dom)), values(std::move(vals)) {
    if (values.size() != domain.size())
        throw DimensionError("function has " + std::to_string(values.size()) + " values for a domain of " +
                             std::to_string(domain.size()) + " points");
    for (Elem v : values)
        if (v >= domain.modulus()) throw ParameterError("function value is not reduced mod p");
}

// --- monomials -------------------------------------------------------------

std::uint64_t monomial_count(Elem p, int n, int d) {
    require_prime(p);
    if (n < 1) throw ParameterError("n must be at least 1");
    if (d < 0) throw ParameterError("degree bound must be nonnegative");
    d = std::min(d, max_degree(p, n));
    // ways[g] = monomials in the first i variables with total degree exactly g.
    std::vector<unsigned __int128> ways(static_cast<std::size_t>(d) + 1, 0);
    ways[0] = 1;
    const unsigned __int128 cap = std::numeric_limits<std::uint64_t>::max();
    for (int i = 0; i < n; ++i) {
        std::vector<unsigned __int128> next(ways.size(), 0);
        // Sliding window sum of ways[g - e] over e in [0, p-1].
        unsigned __int128 window = 0;
        for (std::size_t g = 0; g < ways.size(); ++g) {
            window += ways[g];
            if (g >= p) window -= ways[g - p];
            if (window > cap) throw OverflowError("monomial count overflows 64 bits");
            next[g] = window;
        }
        ways = std::move(next);
    }
    unsigned __int128 total = 0;
    for (auto w : ways) {
        total += w;
        if (total > cap) throw OverflowError("monomial count overflows 64 bits");
    }
    return static_cast<std::uint64_t>(total);
}

std::vector<Exponents> monomials_of_degree(Elem p, int n, int degree) {
    require_prime(p);
    if (n < 1) throw ParameterError("n must be at least 1");
    std::vector<Exponents> out;
    if (degree < 0 || degree > max_degree(p, n)) return out;
    Exponents current(static_cast<std::size_t>(n), 0);
    fill_grade(p, 0, degree, current, out);
    return out;
}

MonomialBasis monomial_basis(Elem p, int n, int d) {
    require_prime(p);
    if (d < 0) throw ParameterError("degree bound must be nonnegative");
    point_space_size(p, n);
    MonomialBasis basis{p, n, d, {}};
    for (int g = 0; g <= std::min(d, max_degree(p, n)); ++g) {
        auto grade = monomials_of_degree(p, n, g);
        basis.monomials.insert(basis.monomials.end(), std::make_move_iterator(grade.begin()),
                               std::make_move_iterator(grade.end()));
    }
    return basis;
}

FieldMatrix evaluation_matrix(const PointSet& domain, const MonomialBasis& basis) {
    if (domain.modulus() != basis.p || domain.dimension() != basis.n)
        throw DimensionError("domain and basis disagree on p or n");
    const MonomialEvaluator eval(domain);
    FieldMatrix m(basis.p, domain.size(), basis.monomials.size());
    for (std::size_t j = 0; j < basis.monomials.size(); ++j) {
        const auto col = eval.column(basis.monomials[j]);
        for (std::size_t i = 0; i < col.size(); ++i) m.set(i, j, col[i]);
    }
    return m;
}

// --- interpolation degree --------------------------------------------------

int deg_on_set(const PartialFunction& f, RankPath path) {
    const PointSet& dom = f.domain;
    dom.require_nonempty();
    const MonomialEvaluator eval(dom);
    SpanBasis span(dom.modulus(), dom.size(), path);
    const int top = max_degree(dom.modulus(), dom.dimension());
    for (int g = 0; g <= top; ++g) {
        for (const auto& e : monomials_of_degree(dom.modulus(), dom.dimension(), g)) span.insert(eval.column(e));
        if (span.rank() == dom.size() || span.contains(f.values)) return g;
    }
    throw Error("reduced monomials failed to span the domain");  // unreachable for prime p
}

ReducedPolynomial interpolate_min_degree(const PartialFunction& f) {
    const PointSet& dom = f.domain;
    dom.require_nonempty();
    const Elem p = dom.modulus();
    const int n = dom.dimension();
    const MonomialEvaluator eval(dom);
    SpanBasis span(p, dom.size(), RankPath::automatic, true);
    std::vector<Exponents> columns;
    for (int g = 0; g <= max_degree(p, n); ++g) {
        for (auto& e : monomials_of_degree(p, n, g)) {
            span.insert(eval.column(e));
            columns.push_back(std::move(e));
        }
        if (auto coeffs = span.solve(f.values)) {
            ReducedPolynomial poly(p, n);
            for (std::size_t j = 0; j < coeffs->size(); ++j) poly.add_term(columns[j], (*coeffs)[j]);
            return poly;
        }
    }
    throw Error("reduced monomials failed to span the domain");
}

int int_deg(const PointSet& domain, RankPath path) {
    domain.require_nonempty();
    const MonomialEvaluator eval(domain);
    SpanBasis span(domain.modulus(), domain.size(), path);
    const int top = max_degree(domain.modulus(), domain.dimension());
    for (int g = 0; g <= top; ++g) {
        for (const auto& e : monomials_of_degree(domain.modulus(), domain.dimension(), g)) {
            span.insert(eval.column(e));
            if (span.rank() == domain.size()) return g;
        }
    }
    throw Error("reduced monomials failed to span the domain");
}

// --- constructive reduction ------------------------------------------------

namespace {

// Scatters the low bits of `bits` into the positions selected by `select`.
Mask deposit(std::uint64_t bits, Mask select) {
    Mask out = 0;
    for (Mask m = select; m != 0; m &= m - 1, bits >>= 1)
        if (bits & 1U) out |= m & (~m + 1);
    return out;
}

}  // namespace

AbsentPattern find_unshattered_witness(const SetFamily& a, Mask s) {
    a.require_nonempty();
    if (s == 0) throw ParameterError("witness search needs a nonempty set");
    if ((s >> a.ground_size()) != 0) throw ParameterError("set " + format_set(s) + " is outside the ground set");
    const int k = std::popcount(s);
    if (k > 30) throw ResourceError("witness search limited to |S| <= 30");
    std::vector<std::uint8_t> seen(std::size_t(1) << k, 0);
    std::vector<std::uint64_t> traces(a.size());
    kernels::active_kernels().compress_bits(traces.data(), a.members().data(), s, a.size());
    for (std::uint64_t t : traces) seen[t] = 1;
    // deposit() is monotone, so the first absent compressed trace is also the
    // numerically smallest absent trace.
    for (std::size_t t = 0; t < seen.size(); ++t)
        if (!seen[t]) return {s, deposit(t, s)};
    throw WitnessNotFoundError("set " + format_set(s) + " is shattered; no absent pattern");
}

ReducedPolynomial represent_monomial(const SetFamily& a, Mask s) {
    a.require_nonempty();
    const int n = a.ground_size();
    if ((s >> n) != 0) throw ParameterError("set " + format_set(s) + " is outside the ground set");
    const int d = vc_dim(a);

    // On A, prod_{i in S} (x_i + v_i + 1) vanishes. Over F_2 the factor is x_i
    // when v_i = 1 and x_i + 1 when v_i = 0, so expanding gives
    //   x_S = sum over nonempty U within {i in S : v_i = 0} of x_{S \ U}.
    std::unordered_map<Mask, std::set<Mask>> memo;
    const auto reduce = [&](auto&& self, Mask t) -> const std::set<Mask>& {
        if (auto it = memo.find(t); it != memo.end()) return it->second;
        std::set<Mask> terms;
        if (std::popcount(t) <= d) {
            terms.insert(t);
        } else {
            const AbsentPattern v = find_unshattered_witness(a, t);
            const Mask zeros = t & ~v.ones;
            for (Mask u = zeros; u != 0; u = (u - 1) & zeros)
                for (Mask m : self(self, t & ~u))
                    if (!terms.erase(m)) terms.insert(m);
        }
        return memo.emplace(t, std::move(terms)).first->second;
    };

    ReducedPolynomial poly(2, n);
    for (Mask m : reduce(reduce, s)) {
        Exponents e(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = (m >> i) & 1U;
        poly.add_term(e, 1);
    }
    return poly;
}

ReducedPolynomial indicator_of_zero(Elem p, int n) {
    ReducedPolynomial f(p, n);
    if (n > 24) throw ResourceError("indicator polynomial limited to n <= 24");
    for (Mask t = 0; t < (Mask(1) << n); ++t) {
        Exponents e(static_cast<std::size_t>(n), 0);
        for (int j = 0; j < n; ++j)
            if ((t >> j) & 1U) e[static_cast<std::size_t>(j)] = p - 1;
        f.add_term(e, std::popcount(t) % 2 == 0 ? 1 : p - 1);
    }
    return f;
}

}  // namespace vcsum
