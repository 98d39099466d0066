#include "vcsum/set_family.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "vcsum/errors.hpp"
#include "vcsum/random.hpp"

namespace vcsum {

namespace {

// Families and sumset buffers larger than this are refused rather than
// materialized.
constexpr std::uint64_t kMaxMaterialized = std::uint64_t(1) << 26;
// Presence tables are used for sumset dedup up to this many cells.
constexpr std::uint64_t kPresenceTableLimit = std::uint64_t(1) << 24;

void check_ground_size(int n) {
    if (n < 0 || n > kMaxGroundSize)
        throw ParameterError("ground size must be in [0, " + std::to_string(kMaxGroundSize) +
                             "], got " + std::to_string(n));
}

template <class T>
void canonicalize(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    if (p < 4) return true;
    if (p % 2 == 0) return false;
    for (std::uint64_t q = 3; q <= p / q; q += 2)
        if (p % q == 0) return false;
    return true;
}

void require_prime(std::uint64_t p) {
    if (p > kMaxModulus) throw ParameterError("modulus " + std::to_string(p) + " exceeds the supported range");
    if (!is_prime(p)) throw ParameterError("modulus " + std::to_string(p) + " is not prime");
}

std::uint64_t point_space_size(std::uint32_t p, int n) {
    if (n < 1) throw ParameterError("dimension must be at least 1");
    std::uint64_t size = 1;
    for (int i = 0; i < n; ++i) {
        if (size > kMaxPointSpace / p)
            throw ResourceError("p^n = " + std::to_string(p) + "^" + std::to_string(n) +
                                " exceeds the 2^48 encoding guard");
        size *= p;
    }
    return size;
}

// --- SetFamily -------------------------------------------------------------

SetFamily::SetFamily(int ground_size, std::vector<Mask> members) : n_(ground_size), members_(std::move(members)) {
    check_ground_size(n_);
    const Mask limit = Mask(1) << n_;
    for (Mask m : members_)
        if (m >= limit)
            throw ParameterError("member " + std::to_string(m) + " does not fit in " + std::to_string(n_) + " bits");
    canonicalize(members_);
}

bool SetFamily::contains(Mask s) const { return std::binary_search(members_.begin(), members_.end(), s); }

void SetFamily::require_nonempty() const {
    if (members_.empty()) throw EmptyFamilyError();
}

// --- PointSet --------------------------------------------------------------

PointSet::PointSet(std::uint32_t modulus, int dimension, std::vector<PointCode> points)
    : p_(modulus), n_(dimension), points_(std::move(points)) {
    require_prime(p_);
    space_ = point_space_size(p_, n_);
    for (PointCode x : points_)
        if (x >= space_) throw ParameterError("point code " + std::to_string(x) + " is outside F_p^n");
    canonicalize(points_);
}

bool PointSet::contains(PointCode x) const { return std::binary_search(points_.begin(), points_.end(), x); }

void PointSet::require_nonempty() const {
    if (points_.empty()) throw EmptyFamilyError();
}

std::vector<std::uint32_t> decode_point(PointCode code, std::uint32_t p, int n) {
    std::vector<std::uint32_t> coords(static_cast<std::size_t>(n));
    for (auto& c : coords) {
        c = static_cast<std::uint32_t>(code % p);
        code /= p;
    }
    return coords;
}

PointCode encode_point(std::span<const std::uint32_t> coords, std::uint32_t p) {
    PointCode code = 0;
    for (std::size_t i = coords.size(); i-- > 0;) code = code * p + coords[i];
    return code;
}

PointCode add_points(PointCode a, PointCode b, std::uint32_t p, int n) {
    if (p == 2) return a ^ b;
    PointCode out = 0, scale = 1;
    for (int i = 0; i < n; ++i) {
        const std::uint64_t s = a % p + b % p;
        out += (s >= p ? s - p : s) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    return out;
}

// --- counting --------------------------------------------------------------

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0) throw ParameterError("binomial arguments must be nonnegative");
    if (k > n) return 0;
    k = std::min(k, n - k);
    // C(n, i) = C(n, i-1) * (n-i+1) / i stays integral at every step.
    unsigned __int128 c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<unsigned>(n - i + 1) / static_cast<unsigned>(i);
        if (c > std::numeric_limits<std::uint64_t>::max())
            throw OverflowError("C(" + std::to_string(n) + "," + std::to_string(k) + ") overflows 64 bits");
    }
    return static_cast<std::uint64_t>(c);
}

std::uint64_t binom_sum(int n, int d) {
    if (n < 0 || d < 0) throw ParameterError("binom_sum arguments must be nonnegative");
    std::uint64_t total = 0;
    for (int i = 0; i <= std::min(d, n); ++i) {
        const std::uint64_t c = binomial(n, i);
        if (total > std::numeric_limits<std::uint64_t>::max() - c)
            throw OverflowError("binom_sum(" + std::to_string(n) + "," + std::to_string(d) + ") overflows 64 bits");
        total += c;
    }
    return total;
}

// --- family operations -----------------------------------------------------

const char* to_string(SetOp op) {
    switch (op) {
        case SetOp::sym_diff: return "sym_diff";
        case SetOp::intersect: return "intersect";
        case SetOp::union_: return "union";
    }
    return "?";
}

SetOp parse_set_op(const std::string& name) {
    if (name == "sym_diff" || name == "xor") return SetOp::sym_diff;
    if (name == "intersect") return SetOp::intersect;
    if (name == "union") return SetOp::union_;
    throw ParameterError("unknown set operation '" + name + "'");
}

SetFamily pairwise_family(const SetFamily& a, const SetFamily& b, SetOp op) {
    if (a.ground_size() != b.ground_size())
        throw DimensionError("ground sizes differ: " + std::to_string(a.ground_size()) + " vs " +
                             std::to_string(b.ground_size()));
    a.require_nonempty();
    b.require_nonempty();
    const int n = a.ground_size();
    const auto combine = [op](Mask s, Mask t) -> Mask {
        switch (op) {
            case SetOp::sym_diff: return s ^ t;
            case SetOp::intersect: return s & t;
            case SetOp::union_: return s | t;
        }
        return 0;
    };

    std::vector<Mask> out;
    if (n <= 24) {
        std::vector<bool> seen(std::size_t(1) << n);
        for (Mask s : a.members())
            for (Mask t : b.members()) seen[combine(s, t)] = true;
        for (std::size_t m = 0; m < seen.size(); ++m)
            if (seen[m]) out.push_back(m);
    } else {
        if (a.size() * b.size() > kMaxMaterialized) throw ResourceError("pairwise family too large to materialize");
        out.reserve(a.size() * b.size());
        for (Mask s : a.members())
            for (Mask t : b.members()) out.push_back(combine(s, t));
    }
    return SetFamily(n, std::move(out));
}

PointSet k_fold_sumset(const PointSet& a, int k) {
    if (k <= 0) throw ParameterError("k must be positive, got " + std::to_string(k));
    a.require_nonempty();
    const std::uint32_t p = a.modulus();
    const int n = a.dimension();

    // Fold one summand at a time, deduplicating after each step.
    std::vector<PointCode> current(a.points().begin(), a.points().end());
    if (a.space_size() <= kPresenceTableLimit) {
        std::vector<bool> seen(a.space_size());
        for (int step = 1; step < k; ++step) {
            std::fill(seen.begin(), seen.end(), false);
            for (PointCode x : current)
                for (PointCode y : a.points()) seen[add_points(x, y, p, n)] = true;
            current.clear();
            for (std::uint64_t x = 0; x < seen.size(); ++x)
                if (seen[x]) current.push_back(x);
        }
    } else {
        for (int step = 1; step < k; ++step) {
            if (current.size() * a.size() > kMaxMaterialized) throw ResourceError("sumset buffer too large");
            std::vector<PointCode> next;
            next.reserve(current.size() * a.size());
            for (PointCode x : current)
                for (PointCode y : a.points()) next.push_back(add_points(x, y, p, n));
            canonicalize(next);
            current = std::move(next);
        }
    }
    return PointSet(p, n, std::move(current));
}

PointSet embed_01(const SetFamily& a, std::uint32_t p) {
    require_prime(p);
    a.require_nonempty();
    const int n = a.ground_size();
    point_space_size(p, n);
    std::vector<PointCode> points;
    points.reserve(a.size());
    for (Mask s : a.members()) {
        PointCode code = 0;
        for (int i = n; i-- > 0;) code = code * p + ((s >> i) & 1U);
        points.push_back(code);
    }
    return PointSet(p, n, std::move(points));
}

SetFamily decode_01(const PointSet& a) {
    const std::uint32_t p = a.modulus();
    std::vector<Mask> members;
    members.reserve(a.size());
    for (PointCode x : a.points()) {
        Mask s = 0;
        for (int i = 0; i < a.dimension(); ++i) {
            const std::uint64_t digit = x % p;
            if (digit > 1) throw ParameterError("point " + std::to_string(x) + " is not a 0/1 vector");
            s |= Mask(digit) << i;
            x /= p;
        }
        members.push_back(s);
    }
    return SetFamily(a.dimension(), std::move(members));
}

std::vector<std::uint64_t> sample_distinct(Rng& rng, std::uint64_t universe, std::uint64_t count) {
    if (count > universe) throw ParameterError("cannot draw more distinct values than the universe holds");
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(count);
    for (std::uint64_t j = universe - count; j < universe; ++j) {
        const std::uint64_t t = rng.below(j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

SetFamily generate_family(int n, const FamilyKind& kind) {
    check_ground_size(n);
    using Tag = FamilyKind::Tag;
    const bool enumerates = kind.tag != Tag::random;
    if (enumerates && n > 26) throw ResourceError("enumerated families are limited to n <= 26");
    if ((kind.tag == Tag::lowweight || kind.tag == Tag::highweight) && (kind.d < 0 || kind.d > n))
        throw ParameterError("weight parameter d must satisfy 0 <= d <= n");

    std::vector<Mask> members;
    const Mask full = Mask(1) << n;
    switch (kind.tag) {
        case Tag::lowweight:
            for (Mask s = 0; s < full; ++s)
                if (std::popcount(s) <= kind.d) members.push_back(s);
            break;
        case Tag::highweight:
            for (Mask s = 0; s < full; ++s)
                if (std::popcount(s) >= n - kind.d) members.push_back(s);
            break;
        case Tag::powerset:
            members.resize(full);
            for (Mask s = 0; s < full; ++s) members[s] = s;
            break;
        case Tag::random: {
            if (kind.size < 1 || kind.size > full)
                throw ParameterError("random family size must be in [1, 2^n]");
            if (kind.size > kMaxMaterialized) throw ResourceError("random family too large");
            Rng rng(kind.seed);
            members = sample_distinct(rng, full, kind.size);
            break;
        }
    }
    return SetFamily(n, std::move(members));
}

// --- text format -----------------------------------------------------------

PointSet read_point_set(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::uint32_t p = 0;
    int n = 0;
    std::vector<PointCode> points;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!have_header) {
            std::istringstream hs(t);
            std::string a, b, extra;
            hs >> a >> b;
            if (a.rfind("n=", 0) != 0 || b.rfind("p=", 0) != 0 || (hs >> extra))
                throw ParseError("expected header 'n=<int> p=<int>'", line_no);
            try {
                std::size_t used = 0;
                const long nv = std::stol(a.substr(2), &used);
                if (used != a.size() - 2) throw ParseError("bad n value", line_no);
                const long pv = std::stol(b.substr(2), &used);
                if (used != b.size() - 2) throw ParseError("bad p value", line_no);
                if (nv < 1 || nv > kMaxGroundSize) throw ParseError("n out of range", line_no);
                if (pv < 2 || static_cast<unsigned long>(pv) > kMaxModulus || !is_prime(static_cast<std::uint64_t>(pv)))
                    throw ParseError("p must be a supported prime", line_no);
                n = static_cast<int>(nv);
                p = static_cast<std::uint32_t>(pv);
            } catch (const std::logic_error&) {
                throw ParseError("malformed header numbers", line_no);
            }
            if (p > 10) throw ParseError("digit-string format supports p <= 10", line_no);
            try {
                point_space_size(p, n);
            } catch (const ResourceError& e) {
                throw ParseError(e.what(), line_no);
            }
            have_header = true;
            continue;
        }
        if (t.size() != static_cast<std::size_t>(n))
            throw ParseError("expected " + std::to_string(n) + " digits, got '" + t + "'", line_no);
        PointCode code = 0;
        for (std::size_t i = t.size(); i-- > 0;) {
            const char c = t[i];
            if (c < '0' || static_cast<std::uint32_t>(c - '0') >= p)
                throw ParseError(std::string("invalid digit '") + c + "' for p=" + std::to_string(p), line_no);
            code = code * p + static_cast<std::uint32_t>(c - '0');
        }
        points.push_back(code);
    }
    if (!have_header) throw ParseError("missing 'n=<int> p=<int>' header", line_no == 0 ? 1 : line_no);
    return PointSet(p, n, std::move(points));
}

void write_point_set(std::ostream& out, const PointSet& points) {
    out << "n=" << points.dimension() << " p=" << points.modulus() << '\n';
    for (PointCode x : points.points()) {
        for (std::uint32_t digit : decode_point(x, points.modulus(), points.dimension()))
            out << static_cast<char>('0' + digit);
        out << '\n';
    }
}

SetFamily read_family(std::istream& in) {
    const PointSet points = read_point_set(in);
    if (points.modulus() != 2) throw ParseError("expected a set family (p=2)", 1);
    std::vector<Mask> members(points.points().begin(), points.points().end());
    return SetFamily(points.dimension(), std::move(members));
}

void write_family(std::ostream& out, const SetFamily& family) {
    out << "n=" << family.ground_size() << " p=2\n";
    for (Mask s : family.members()) {
        for (int i = 0; i < family.ground_size(); ++i) out << (((s >> i) & 1U) ? '1' : '0');
        out << '\n';
    }
}

std::string format_set(Mask s) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; s != 0; ++i, s >>= 1) {
        if (!(s & 1U)) continue;
        if (!first) out += ',';
        out += std::to_string(i + 1);
        first = false;
    }
    return out + "}";
}

Mask parse_set(const std::string& text, int n) {
    std::string body = trim(text);
    if (!body.empty() && body.front() == '{') {
        if (body.back() != '}') throw ParseError("unbalanced braces in set '" + text + "'", 0);
        body = body.substr(1, body.size() - 2);
    }
    Mask s = 0;
    std::istringstream items(body);
    std::string item;
    while (std::getline(items, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        int e = 0;
        try {
            std::size_t used = 0;
            e = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw ParseError("bad set element '" + item + "'", 0);
        }
        if (e < 1 || e > n) throw ParseError("set element " + item + " outside [1," + std::to_string(n) + "]", 0);
        s |= Mask(1) << (e - 1);
    }
    return s;
}

}  // namespace vcsum
