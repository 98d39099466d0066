#pragma once

// Executable bound checks over set families, exhaustive and seeded random
// scan harnesses, counterexample constructions for intersection and union,
// and finite search tables for the two open questions.
//
// Every theorem is checked in its instance form: a quantity `lhs` that must
// not exceed `rhs`. This keeps each instance informative instead of letting
// a false antecedent make it pass vacuously.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vcsum/field_matrix.hpp"
#include "vcsum/interpolation.hpp"
#include "vcsum/set_family.hpp"

namespace vcsum {

enum class TheoremId { sauer, main, intdeg_main, intdeg_le_vc, clp_bound, psums, vc_monotone };

const char* to_string(TheoremId id);
TheoremId parse_theorem(const std::string& name);
std::span<const TheoremId> all_theorems();

/// Instance-level inequality lhs <= rhs:
///   sauer         |A| <= binom_sum(n, vc(A))
///   main          |A| <= 2 binom_sum(n, floor(vc(A^A)/2))
///   intdeg_main   |A| <= 2 binom_sum(n, floor(int_deg(A+A)/2))
///   intdeg_le_vc  int_deg(A) <= vc(A)
///   clp_bound     rank M <= 2 binom_sum(n, floor(d/2)) for the minimal-degree
///                 P representing the indicator of 0 on A+A; additionally the
///                 A x A block of M must be the identity, so rank M >= |A|
///   psums         |A| <= p |M_{floor(e/p)}(p,n)|, e = int_deg_p(p*A)
///   vc_monotone   vc(A) <= min over ops of vc(A op A)
struct InstanceOutcome {
    bool ok = false;
    std::uint64_t lhs = 0;
    std::uint64_t rhs = 0;
};

InstanceOutcome evaluate_instance(TheoremId id, const SetFamily& a, std::optional<Elem> p = std::nullopt);
bool check_instance(TheoremId id, const SetFamily& a, std::optional<Elem> p = std::nullopt);

/// Random polynomial over F_p in n variables with total degree exactly
/// `degree`: every monomial of degree <= `degree` gets a uniform coefficient
/// and one random top-degree monomial gets a nonzero one.
ReducedPolynomial random_polynomial(Elem p, int n, int degree, std::uint64_t seed);

/// Tightest instance seen: largest lhs / rhs, first one wins ties.
struct Extreme {
    std::string instance;
    std::uint64_t lhs = 0;
    std::uint64_t rhs = 0;
};

struct VerificationReport {
    TheoremId theorem = TheoremId::sauer;
    int n = 0;
    std::optional<Elem> p;
    std::string mode;                     // "exhaustive" or "random"
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    std::uint64_t instances_checked = 0;
    std::vector<std::string> violations;  // serialized offending instances
    std::optional<Extreme> extreme;

    bool ok() const noexcept { return violations.empty() && instances_checked > 0; }
};

struct ScanOptions {
    unsigned workers = 1;
    /// Called after every completed block of 4096 instances, from one
    /// thread at a time.
    std::function<void(std::uint64_t done, std::uint64_t total)> progress;
};

/// Families serialize as "n=<n>:{..},{..}"; polynomials as "p=<p> n=<n>:<terms>".
std::string serialize_instance(const SetFamily& a);

/// The family whose characteristic vector over the 2^n masks is `index`.
SetFamily family_from_index(int n, std::uint64_t index);

/// Checks every nonempty A over [n] (n <= 4), in characteristic-vector order.
VerificationReport exhaustive_scan(TheoremId id, int n, std::optional<Elem> p = std::nullopt,
                                   const ScanOptions& options = {});

/// Seeded scan. Families: size uniform in [1, 2^n], members by Floyd sampling.
/// clp_bound draws random_polynomial(p or 2, n, i mod ((p-1)n+1), ...) instead.
/// Sample i uses the stream derive_seed(seed, i), so results do not depend on
/// the worker count.
VerificationReport random_scan(TheoremId id, int n, std::optional<Elem> p, std::uint64_t samples,
                               std::uint64_t seed, const ScanOptions& options = {});

struct CounterexampleReport {
    SetOp op;
    int n;
    int d;
    std::uint64_t family_size;
    int vc_star;
    std::uint64_t half_bound;
    bool witness;
};

/// Low-weight (intersect) or high-weight (union) family of parameter d.
CounterexampleReport counterexample_demo(SetOp op, int n, int d);

enum class OpenQuestion { q1, q2 };
enum class SearchMode { exhaustive, heuristic };

const char* to_string(OpenQuestion q);
OpenQuestion parse_question(const std::string& name);
const char* to_string(SearchMode m);
SearchMode parse_search_mode(const std::string& name);

/// q1: vc(A & A) <= d and vc(A | A) <= d.   q2: vc((A ^ A) ^ A) <= d.
bool satisfies_constraint(OpenQuestion q, const SetFamily& a, int d);

struct EvidenceRow {
    OpenQuestion question;
    int n;
    int d;
    SearchMode mode;
    std::uint64_t best_size;
    std::uint64_t sauer_bound;  // binom_sum(n, d)
    std::uint64_t half_bound;   // 2 binom_sum(n, floor(d/2))
    std::uint64_t evaluations;
    SetFamily certificate;
};

/// Largest family found under the question's constraint. Both constraints
/// are closed under taking subfamilies, so the exhaustive mode is a
/// branch-and-bound that prunes every superset of an infeasible family.
/// The heuristic mode is seeded local search (add moves, then swap moves on
/// plateaus, random restarts) limited to `budget` constraint evaluations.
EvidenceRow search_open_question(OpenQuestion q, int n, int d, SearchMode mode, std::uint64_t budget,
                                 std::uint64_t seed);

/// Header line carried by every evidence table.
inline constexpr const char* kEvidenceDisclaimer =
    "finite evidence only: these open questions concern asymptotic growth with O(1) exponent slack, "
    "which no finite table can confirm or refute";

}  // namespace vcsum
