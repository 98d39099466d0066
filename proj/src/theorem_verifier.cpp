#include "vcsum/theorem_verifier.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "vcsum/clp_slice.hpp"
#include "vcsum/errors.hpp"
#include "vcsum/interpolation.hpp"
#include "vcsum/random.hpp"
#include "vcsum/vc_dimension.hpp"

namespace vcsum {

namespace {

constexpr std::uint64_t kBlock = 4096;
constexpr int kMaxExhaustiveN = 4;
constexpr int kMaxRandomFamilyN = 16;

constexpr std::array<TheoremId, 7> kTheorems{TheoremId::sauer,        TheoremId::main,      TheoremId::intdeg_main,
                                             TheoremId::intdeg_le_vc, TheoremId::clp_bound, TheoremId::psums,
                                             TheoremId::vc_monotone};

std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > ~std::uint64_t(0) / a) throw OverflowError("bound overflows 64 bits");
    return a * b;
}

bool tighter(std::uint64_t lhs, std::uint64_t rhs, const Extreme& best) {
    const auto r = static_cast<unsigned __int128>(std::max<std::uint64_t>(rhs, 1));
    const auto br = static_cast<unsigned __int128>(std::max<std::uint64_t>(best.rhs, 1));
    return static_cast<unsigned __int128>(lhs) * br > static_cast<unsigned __int128>(best.lhs) * r;
}

struct Partial {
    std::uint64_t count = 0;
    std::vector<std::string> violations;
    std::optional<Extreme> extreme;

    template <class Describe>
    void record(const InstanceOutcome& o, Describe&& describe) {
        ++count;
        if (!o.ok) violations.push_back(describe());
        if (!extreme || tighter(o.lhs, o.rhs, *extreme)) extreme = Extreme{describe(), o.lhs, o.rhs};
    }

    void merge(Partial&& other) {
        count += other.count;
        for (auto& v : other.violations) violations.push_back(std::move(v));
        if (other.extreme && (!extreme || tighter(other.extreme->lhs, other.extreme->rhs, *extreme)))
            extreme = std::move(other.extreme);
    }
};

// Runs check(i, partial) for i in [0, total) in blocks of kBlock. Blocks are
// merged in index order, so the result does not depend on scheduling.
template <class Check>
Partial run_blocks(std::uint64_t total, const ScanOptions& options, Check&& check) {
    const std::uint64_t blocks = (total + kBlock - 1) / kBlock;
    std::vector<Partial> partials(blocks);
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> done{0};
    std::mutex progress_mutex;
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto worker = [&] {
        for (;;) {
            const std::uint64_t b = next.fetch_add(1);
            if (b >= blocks) return;
            try {
                const std::uint64_t begin = b * kBlock, end = std::min(total, begin + kBlock);
                for (std::uint64_t i = begin; i < end; ++i) check(i, partials[b]);
                const std::uint64_t finished = done.fetch_add(end - begin) + (end - begin);
                if (options.progress) {
                    std::lock_guard lock(progress_mutex);
                    options.progress(finished, total);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = blocks;
                return;
            }
        }
    };

    const unsigned workers = std::max(1U, std::min<unsigned>(options.workers, static_cast<unsigned>(std::max<std::uint64_t>(blocks, 1))));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    Partial merged;
    for (auto& part : partials) merged.merge(std::move(part));
    return merged;
}

SetFamily random_family(int n, Rng& rng) {
    const std::uint64_t universe = std::uint64_t(1) << n;
    const std::uint64_t m = rng.between(1, universe);
    auto members = sample_distinct(rng, universe, m);
    return SetFamily(n, std::move(members));
}

std::string serialize_polynomial_instance(const ReducedPolynomial& f) {
    return "p=" + std::to_string(f.modulus()) + " n=" + std::to_string(f.variables()) + ":" + f.serialize();
}

InstanceOutcome check_polynomial(const ReducedPolynomial& f) {
    const ClpReport r = verify_clp_bound(f);
    return {r.ok, r.rank, r.bound};
}

}  // namespace

const char* to_string(TheoremId id) {
    switch (id) {
        case TheoremId::sauer: return "sauer";
        case TheoremId::main: return "main";
        case TheoremId::intdeg_main: return "intdeg_main";
        case TheoremId::intdeg_le_vc: return "intdeg_le_vc";
        case TheoremId::clp_bound: return "clp_bound";
        case TheoremId::psums: return "psums";
        case TheoremId::vc_monotone: return "vc_monotone";
    }
    return "?";
}

TheoremId parse_theorem(const std::string& name) {
    for (TheoremId id : kTheorems)
        if (name == to_string(id)) return id;
    throw ParameterError("unknown theorem '" + name + "'");
}

std::span<const TheoremId> all_theorems() { return kTheorems; }

std::string serialize_instance(const SetFamily& a) {
    std::string out = "n=" + std::to_string(a.ground_size()) + ":";
    bool first = true;
    for (Mask s : a.members()) {
        if (!first) out += ',';
        out += format_set(s);
        first = false;
    }
    return out;
}

SetFamily family_from_index(int n, std::uint64_t index) {
    if (n < 1 || n > 6) throw ParameterError("characteristic-vector indexing supports 1 <= n <= 6");
    std::vector<Mask> members;
    for (Mask s = 0; s < (Mask(1) << n); ++s)
        if ((index >> s) & 1U) members.push_back(s);
    return SetFamily(n, std::move(members));
}

InstanceOutcome evaluate_instance(TheoremId id, const SetFamily& a, std::optional<Elem> p) {
    a.require_nonempty();
    const int n = a.ground_size();
    if (p) require_prime(*p);
    const std::uint64_t size = a.size();

    switch (id) {
        case TheoremId::sauer: {
            const std::uint64_t bound = binom_sum(n, vc_dim(a));
            return {size <= bound, size, bound};
        }
        case TheoremId::main: {
            const int d = vc_dim(pairwise_family(a, a, SetOp::sym_diff));
            const std::uint64_t bound = mul_checked(2, binom_sum(n, d / 2));
            return {size <= bound, size, bound};
        }
        case TheoremId::intdeg_main: {
            const int e = int_deg(embed_01(pairwise_family(a, a, SetOp::sym_diff), 2));
            const std::uint64_t bound = mul_checked(2, binom_sum(n, e / 2));
            return {size <= bound, size, bound};
        }
        case TheoremId::intdeg_le_vc: {
            const auto deg = static_cast<std::uint64_t>(int_deg(embed_01(a, 2)));
            const auto vc = static_cast<std::uint64_t>(vc_dim(a));
            return {deg <= vc, deg, vc};
        }
        case TheoremId::clp_bound: {
            if (p && *p != 2) throw ParameterError("clp_bound on families works over F_2");
            const PointSet sums = embed_01(pairwise_family(a, a, SetOp::sym_diff), 2);
            std::vector<Elem> values(sums.size(), 0);
            values[0] = 1;  // the origin is the smallest code and always present
            const ReducedPolynomial poly = interpolate_min_degree(PartialFunction(sums, values));
            const FieldMatrix m = clp_matrix(poly);
            const ClpReport r = verify_clp_bound(poly);
            bool identity_block = true;
            for (Mask x : a.members())
                for (Mask y : a.members()) identity_block = identity_block && m.at(x, y) == (x == y ? 1U : 0U);
            return {r.ok && identity_block && r.rank >= size, r.rank, r.bound};
        }
        case TheoremId::psums: {
            if (!p) throw ParameterError("psums requires a prime p");
            const PointSet sums = k_fold_sumset(embed_01(a, *p), static_cast<int>(*p));
            const int e = int_deg(sums);
            const std::uint64_t bound = mul_checked(*p, monomial_count(*p, n, e / static_cast<int>(*p)));
            return {size <= bound, size, bound};
        }
        case TheoremId::vc_monotone: {
            const auto vc = static_cast<std::uint64_t>(vc_dim(a));
            std::uint64_t lowest = ~std::uint64_t(0);
            for (SetOp op : {SetOp::sym_diff, SetOp::intersect, SetOp::union_})
                lowest = std::min<std::uint64_t>(lowest, static_cast<std::uint64_t>(vc_dim(pairwise_family(a, a, op))));
            return {vc <= lowest, vc, lowest};
        }
    }
    throw ParameterError("unknown theorem id");
}

bool check_instance(TheoremId id, const SetFamily& a, std::optional<Elem> p) {
    return evaluate_instance(id, a, p).ok;
}

ReducedPolynomial random_polynomial(Elem p, int n, int degree, std::uint64_t seed) {
    require_prime(p);
    const int top = static_cast<int>(static_cast<std::uint64_t>(p - 1) * static_cast<std::uint64_t>(n));
    if (degree < 0 || degree > top) throw ParameterError("degree must lie in [0, (p-1) n]");
    Rng rng(seed);
    ReducedPolynomial f(p, n);
    for (int g = 0; g <= degree; ++g)
        for (const auto& e : monomials_of_degree(p, n, g)) f.add_term(e, static_cast<Elem>(rng.below(p)));
    const auto tops = monomials_of_degree(p, n, degree);
    const Exponents& lead = tops[rng.below(tops.size())];
    if (f.coefficient(lead) == 0) f.add_term(lead, static_cast<Elem>(rng.between(1, p - 1)));
    return f;
}

VerificationReport exhaustive_scan(TheoremId id, int n, std::optional<Elem> p, const ScanOptions& options) {
    if (n < 1) throw ParameterError("n must be at least 1");
    if (n > kMaxExhaustiveN)
        throw ResourceError("exhaustive scans are limited to n <= 4 (2^(2^n) families); use random_scan");
    if (id == TheoremId::psums && !p) throw ParameterError("psums requires a prime p");
    if (p) require_prime(*p);

    const std::uint64_t total = (std::uint64_t(1) << (std::uint64_t(1) << n)) - 1;
    Partial merged = run_blocks(total, options, [&](std::uint64_t i, Partial& part) {
        const SetFamily a = family_from_index(n, i + 1);
        part.record(evaluate_instance(id, a, p), [&] { return serialize_instance(a); });
    });

    VerificationReport r;
    r.theorem = id;
    r.n = n;
    r.p = p;
    r.mode = "exhaustive";
    r.instances_checked = merged.count;
    r.violations = std::move(merged.violations);
    r.extreme = std::move(merged.extreme);
    return r;
}

VerificationReport random_scan(TheoremId id, int n, std::optional<Elem> p, std::uint64_t samples,
                               std::uint64_t seed, const ScanOptions& options) {
    if (samples < 1) throw ParameterError("samples must be at least 1");
    if (n < 1) throw ParameterError("n must be at least 1");
    if (id == TheoremId::psums && !p) throw ParameterError("psums requires a prime p");
    if (p) require_prime(*p);
    if (id != TheoremId::clp_bound && n > kMaxRandomFamilyN)
        throw ResourceError("random family scans are limited to n <= 16");

    Partial merged;
    if (id == TheoremId::clp_bound) {
        const Elem q = p.value_or(2);
        const int top = static_cast<int>((q - 1) * static_cast<std::uint64_t>(n));
        merged = run_blocks(samples, options, [&](std::uint64_t i, Partial& part) {
            const int degree = static_cast<int>(i % static_cast<std::uint64_t>(top + 1));
            const ReducedPolynomial f = random_polynomial(q, n, degree, derive_seed(seed, i));
            part.record(check_polynomial(f), [&] { return serialize_polynomial_instance(f); });
        });
    } else {
        merged = run_blocks(samples, options, [&](std::uint64_t i, Partial& part) {
            Rng rng(derive_seed(seed, i));
            const SetFamily a = random_family(n, rng);
            part.record(evaluate_instance(id, a, p), [&] { return serialize_instance(a); });
        });
    }

    VerificationReport r;
    r.theorem = id;
    r.n = n;
    r.p = id == TheoremId::clp_bound ? std::optional<Elem>(p.value_or(2)) : p;
    r.mode = "random";
    r.seed = seed;
    r.samples = samples;
    r.instances_checked = merged.count;
    r.violations = std::move(merged.violations);
    r.extreme = std::move(merged.extreme);
    return r;
}

// --- counterexamples -------------------------------------------------------

CounterexampleReport counterexample_demo(SetOp op, int n, int d) {
    if (op == SetOp::sym_diff) throw ParameterError("counterexamples exist for intersect and union only");
    if (d < 2) throw ParameterError("the construction needs d >= 2");
    if (d > n) throw ParameterError("the construction needs d <= n");
    const SetFamily a =
        generate_family(n, op == SetOp::intersect ? FamilyKind::lowweight(d) : FamilyKind::highweight(d));
    CounterexampleReport r{op, n, d, a.size(), vc_dim(pairwise_family(a, a, op)),
                           mul_checked(2, binom_sum(n, d / 2)), false};
    r.witness = r.family_size > r.half_bound;
    return r;
}

// --- open-question search --------------------------------------------------

const char* to_string(OpenQuestion q) { return q == OpenQuestion::q1 ? "q1" : "q2"; }

OpenQuestion parse_question(const std::string& name) {
    if (name == "q1") return OpenQuestion::q1;
    if (name == "q2") return OpenQuestion::q2;
    throw ParameterError("unknown question '" + name + "'");
}

const char* to_string(SearchMode m) { return m == SearchMode::exhaustive ? "exhaustive" : "heuristic"; }

SearchMode parse_search_mode(const std::string& name) {
    if (name == "exhaustive") return SearchMode::exhaustive;
    if (name == "heuristic") return SearchMode::heuristic;
    throw ParameterError("unknown search mode '" + name + "'");
}

bool satisfies_constraint(OpenQuestion q, const SetFamily& a, int d) {
    if (a.empty()) return true;
    if (q == OpenQuestion::q1)
        return vc_dim(pairwise_family(a, a, SetOp::intersect)) <= d && vc_dim(pairwise_family(a, a, SetOp::union_)) <= d;
    const SetFamily twice = pairwise_family(a, a, SetOp::sym_diff);
    return vc_dim(pairwise_family(twice, a, SetOp::sym_diff)) <= d;
}

namespace {

class FamilySearch {
public:
    FamilySearch(OpenQuestion q, int n, int d, std::uint64_t budget) : q_(q), n_(n), d_(d), budget_(budget) {}

    bool feasible(std::vector<Mask> members) {
        if (budget_ != 0 && evaluations_ >= budget_) throw ResourceError("search budget exhausted");
        ++evaluations_;
        return satisfies_constraint(q_, SetFamily(n_, std::move(members)), d_);
    }

    bool budget_left() const { return budget_ == 0 || evaluations_ < budget_; }

    void offer(const std::vector<Mask>& members) {
        if (members.size() > best_.size()) best_ = members;
    }

    // Include-first depth-first search over masks 0..2^n-1 with
    // size-based pruning; infeasible partial families are never extended.
    void branch(std::vector<Mask>& current, Mask next) {
        const Mask universe = Mask(1) << n_;
        if (current.size() + (universe - next) <= best_.size()) return;
        if (next == universe) return;
        current.push_back(next);
        if (feasible(current)) {
            offer(current);
            branch(current, next + 1);
        }
        current.pop_back();
        branch(current, next + 1);
    }

    void local_search(Rng& rng) {
        const Mask universe = Mask(1) << n_;
        while (budget_left()) {
            std::vector<Mask> current{rng.below(universe)};
            if (!feasible(current)) continue;
            offer(current);
            unsigned plateau_moves = 0;
            while (budget_left()) {
                std::vector<Mask> outside;
                for (Mask s = 0; s < universe; ++s)
                    if (std::find(current.begin(), current.end(), s) == current.end()) outside.push_back(s);
                if (outside.empty()) break;
                for (std::size_t i = outside.size(); i > 1; --i) std::swap(outside[i - 1], outside[rng.below(i)]);

                bool grew = false;
                for (Mask c : outside) {
                    if (!budget_left()) break;
                    auto trial = current;
                    trial.push_back(c);
                    if (feasible(trial)) {
                        current = std::move(trial);
                        grew = true;
                        break;
                    }
                }
                if (grew) {
                    offer(current);
                    plateau_moves = 0;
                    continue;
                }
                // Plateau: try one size-preserving swap.
                bool swapped = false;
                for (std::size_t attempt = 0; attempt < outside.size() && budget_left(); ++attempt) {
                    auto trial = current;
                    trial[rng.below(trial.size())] = outside[attempt];
                    if (feasible(trial)) {
                        current = std::move(trial);
                        swapped = true;
                        break;
                    }
                }
                if (!swapped || ++plateau_moves > 16) break;
            }
        }
    }

    std::uint64_t evaluations() const { return evaluations_; }
    const std::vector<Mask>& best() const { return best_; }

private:
    OpenQuestion q_;
    int n_;
    int d_;
    std::uint64_t budget_;
    std::uint64_t evaluations_ = 0;
    std::vector<Mask> best_;
};

}  // namespace

EvidenceRow search_open_question(OpenQuestion q, int n, int d, SearchMode mode, std::uint64_t budget,
                                 std::uint64_t seed) {
    if (d < 0) throw ParameterError("d must be nonnegative");
    if (n < 1) throw ParameterError("n must be at least 1");
    if (mode == SearchMode::exhaustive && n > kMaxExhaustiveN)
        throw ResourceError("exhaustive search is limited to n <= 4");
    if (mode == SearchMode::heuristic) {
        if (n > 8) throw ResourceError("heuristic search is limited to n <= 8");
        if (budget < 1) throw ParameterError("heuristic search needs a positive budget");
    }

    FamilySearch search(q, n, d, budget);
    if (mode == SearchMode::exhaustive) {
        std::vector<Mask> current;
        search.branch(current, 0);
    } else {
        Rng rng(seed);
        try {
            search.local_search(rng);
        } catch (const ResourceError&) {
            // budget exhausted mid-move; keep the best family found so far
        }
    }

    SetFamily certificate(n, search.best());
    if (certificate.empty() || !satisfies_constraint(q, certificate, d))
        throw Error("search produced a certificate that fails its constraint");
    return EvidenceRow{q,
                       n,
                       d,
                       mode,
                       certificate.size(),
                       binom_sum(n, d),
                       mul_checked(2, binom_sum(n, d / 2)),
                       search.evaluations(),
                       std::move(certificate)};
}

}  // namespace vcsum
