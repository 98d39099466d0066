#pragma once

// Slow, obviously-correct reference computations. None of these call into
// the library beyond its value types.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <vector>

#include "vcsum/set_family.hpp"

namespace oracle {

using vcsum::Mask;

inline std::vector<Mask> all_families_members(int n, std::uint64_t index) {
    std::vector<Mask> out;
    for (Mask s = 0; s < (Mask(1) << n); ++s)
        if ((index >> s) & 1) out.push_back(s);
    return out;
}

// Y is shattered iff all 2^|Y| traces occur; checked with a std::set.
inline bool shattered(const std::vector<Mask>& a, Mask y) {
    std::set<Mask> traces;
    for (Mask s : a) traces.insert(s & y);
    return traces.size() == (std::size_t(1) << std::popcount(y));
}

// Every candidate Y, no pruning.
inline int vc(const std::vector<Mask>& a, int n) {
    int best = 0;
    for (Mask y = 0; y < (Mask(1) << n); ++y)
        if (std::popcount(y) > best && shattered(a, y)) best = std::popcount(y);
    return best;
}

inline std::vector<Mask> pairwise(const std::vector<Mask>& a, const std::vector<Mask>& b, int op) {
    std::set<Mask> out;
    for (Mask s : a)
        for (Mask t : b) out.insert(op == 0 ? (s ^ t) : op == 1 ? (s & t) : (s | t));
    return {out.begin(), out.end()};
}

inline std::uint64_t binom_sum(int n, int d) {
    std::uint64_t total = 0;
    for (int i = 0; i <= std::min(n, d); ++i) {
        std::uint64_t c = 1;
        for (int j = 0; j < i; ++j) c = c * (n - j) / (j + 1);
        total += c;
    }
    return total;
}

// Exponent vectors with entries < p, as a flat list (x1 digit fastest).
inline std::vector<std::vector<unsigned>> all_exponents(unsigned p, int n) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> e(n, 0);
    for (;;) {
        out.push_back(e);
        int i = 0;
        while (i < n && ++e[i] == p) e[i++] = 0;
        if (i == n) break;
    }
    return out;
}

inline unsigned eval_monomial(const std::vector<unsigned>& e, const std::vector<unsigned>& x, unsigned p) {
    unsigned v = 1;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned k = 0; k < e[i]; ++k) v = v * x[i] % p;
    return v;
}

// Minimal degree of a reduced polynomial agreeing with `values` on `points`,
// found by enumerating every coefficient vector over the monomials of degree
// <= d, for d = 0, 1, ... Only for tiny p^(#monomials).
inline int brute_deg_on_set(unsigned p, int n, const std::vector<std::vector<unsigned>>& points,
                            const std::vector<unsigned>& values) {
    const auto exps = all_exponents(p, n);
    int top = 0;
    for (const auto& e : exps) {
        int t = 0;
        for (unsigned v : e) t += static_cast<int>(v);
        top = std::max(top, t);
    }
    for (int d = 0; d <= top; ++d) {
        std::vector<std::vector<unsigned>> basis;
        for (const auto& e : exps) {
            int t = 0;
            for (unsigned v : e) t += static_cast<int>(v);
            if (t <= d) basis.push_back(e);
        }
        std::vector<unsigned> coef(basis.size(), 0);
        for (;;) {
            bool ok = true;
            for (std::size_t i = 0; ok && i < points.size(); ++i) {
                unsigned v = 0;
                for (std::size_t j = 0; j < basis.size(); ++j)
                    v = (v + coef[j] * eval_monomial(basis[j], points[i], p)) % p;
                ok = v == values[i];
            }
            if (ok) return d;
            std::size_t i = 0;
            while (i < coef.size() && ++coef[i] == p) coef[i++] = 0;
            if (i == coef.size()) break;
        }
    }
    return -1;
}

inline std::vector<unsigned> digits(std::uint64_t code, unsigned p, int n) {
    std::vector<unsigned> x(n);
    for (int i = 0; i < n; ++i) {
        x[i] = static_cast<unsigned>(code % p);
        code /= p;
    }
    return x;
}

// Rank by plain Gaussian elimination on a copy, no packing.
inline std::size_t rank(std::vector<std::vector<unsigned>> m, unsigned p) {
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        unsigned inv = 1;
        for (unsigned t = 1; t < p; ++t)
            if (m[r][c] * t % p == 1) inv = t;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            const unsigned f = m[i][c] * inv % p;
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = (m[i][j] + (p - f) * m[r][j]) % p;
        }
        ++r;
    }
    return r;
}

// int_deg by counting the distinct restrictions to `points` of all
// polynomials of degree <= d, for d = 0, 1, ...  The domain is interpolable
// at degree d once every one of the p^|points| functions appears.
inline int brute_int_deg(unsigned p, int n, const std::vector<std::vector<unsigned>>& points) {
    const auto exps = all_exponents(p, n);
    std::uint64_t want = 1;
    for (std::size_t i = 0; i < points.size(); ++i) want *= p;
    for (int d = 0;; ++d) {
        std::vector<std::vector<unsigned>> cols;
        for (const auto& e : exps) {
            int t = 0;
            for (unsigned v : e) t += static_cast<int>(v);
            if (t > d) continue;
            std::vector<unsigned> col;
            for (const auto& x : points) col.push_back(eval_monomial(e, x, p));
            cols.push_back(col);
        }
        std::set<std::vector<unsigned>> seen;
        std::vector<unsigned> coef(cols.size(), 0);
        for (;;) {
            std::vector<unsigned> f(points.size(), 0);
            for (std::size_t j = 0; j < cols.size(); ++j)
                for (std::size_t i = 0; i < points.size(); ++i) f[i] = (f[i] + coef[j] * cols[j][i]) % p;
            seen.insert(f);
            std::size_t i = 0;
            while (i < coef.size() && ++coef[i] == p) coef[i++] = 0;
            if (i == coef.size()) break;
        }
        if (seen.size() == want) return d;
    }
}

}  // namespace oracle
