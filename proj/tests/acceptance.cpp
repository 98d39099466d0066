// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "vcsum/cli.hpp"
#include "vcsum/clp_slice.hpp"
#include "vcsum/random.hpp"
#include "vcsum/theorem_verifier.hpp"
#include "vcsum/vc_dimension.hpp"

using namespace vcsum;

namespace {

struct Result {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
}

Result main_exhaustive() {
    const auto t0 = std::chrono::steady_clock::now();
    ScanOptions single;
    single.workers = 1;
    const VerificationReport r = exhaustive_scan(TheoremId::main, 4, std::nullopt, single);
    const double s = seconds_since(t0);
    return {r.instances_checked == 65535 && r.violations.empty() && s < 300,
            std::to_string(r.instances_checked) + " families, " + std::to_string(r.violations.size()) +
                " violations, " + fmt(s) + " on one thread"};
}

Result intdeg_le_vc() {
    std::uint64_t total = 0, bad = 0;
    for (int n = 1; n <= 4; ++n) {
        const VerificationReport r = exhaustive_scan(TheoremId::intdeg_le_vc, n);
        total += r.instances_checked;
        bad += r.violations.size();
    }
    int mismatches = 0;
    for (std::uint64_t idx = 1; idx < 256; ++idx) {
        std::vector<PointCode> pts;
        std::vector<std::vector<unsigned>> coords;
        for (PointCode c = 0; c < 8; ++c)
            if ((idx >> c) & 1) {
                pts.push_back(c);
                coords.push_back(oracle::digits(c, 2, 3));
            }
        if (int_deg(PointSet(2, 3, pts)) != oracle::brute_int_deg(2, 3, coords)) ++mismatches;
    }
    return {total == 3 + 15 + 255 + 65535 && bad == 0 && mismatches == 0,
            std::to_string(total) + " families at n=1..4, " + std::to_string(bad) + " violations; int_deg vs " +
                "enumeration on 255 subsets of F2^3: " + std::to_string(mismatches) + " mismatches"};
}

Result clp_bound() {
    const auto t0 = std::chrono::steady_clock::now();
    int bad = 0;
    std::vector<int> per_degree(9, 0);
    for (int i = 0; i < 1000; ++i) {
        const int d = i % 9;
        const ClpReport r = verify_clp_bound(random_polynomial(2, 8, d, derive_seed(7, i)));
        bad += !r.ok;
        per_degree[r.degree] += 1;
    }
    for (int i = 0; i < 200; ++i) bad += !verify_clp_bound(random_polynomial(3, 4, i % 9, derive_seed(11, i))).ok;
    bool all_degrees = true;
    for (int c : per_degree) all_degrees = all_degrees && c > 0;
    // the same corpus through the scan harness
    const VerificationReport scan2 = random_scan(TheoremId::clp_bound, 8, 2, 1000, 7);
    const VerificationReport scan3 = random_scan(TheoremId::clp_bound, 4, 3, 200, 11);
    const double s = seconds_since(t0);
    const bool ok = bad == 0 && all_degrees && scan2.ok() && scan3.ok() && s < 600;
    return {ok, "1000 over F2 (n=8, degrees 0-8) + 200 over F3 (n=4): " + std::to_string(bad) +
                    " violations; harness scans " + (scan2.ok() && scan3.ok() ? "clean" : "NOT clean") + ", " +
                    fmt(s)};
}

Result psums() {
    const VerificationReport r = random_scan(TheoremId::psums, 4, 3, 500, 1);
    return {r.instances_checked == 500 && r.violations.empty(),
            std::to_string(r.instances_checked) + " random A in {0,1}^4, p=3, " + std::to_string(r.violations.size()) +
                " violations"};
}

Result counterexamples() {
    const CounterexampleReport a = counterexample_demo(SetOp::intersect, 10, 2);
    const CounterexampleReport b = counterexample_demo(SetOp::union_, 10, 2);
    auto good = [](const CounterexampleReport& r) {
        return r.family_size == 56 && r.vc_star == 2 && r.half_bound == 22 && r.witness;
    };
    return {good(a) && good(b), "intersect: " + std::to_string(a.family_size) + "/" + std::to_string(a.vc_star) + "/" +
                                    std::to_string(a.half_bound) + ", union: " + std::to_string(b.family_size) + "/" +
                                    std::to_string(b.vc_star) + "/" + std::to_string(b.half_bound)};
}

Result slices() {
    int cases = 0, bad = 0;
    for (Elem p : {2U, 3U})
        for (int n = 1; n <= 3; ++n)
            for (int k : {2, 3}) {
                const int top = static_cast<int>(p - 1) * n;
                for (int i = 0; i < 10; ++i) {
                    const int d = i % (top + 1);
                    const ReducedPolynomial f = random_polynomial(p, n, d, derive_seed(600 + p * 10 + n, k * 100 + i));
                    const SliceDecomposition dec = slice_decompose(f, k);
                    const bool ok = verify_reconstruction(dec, f) &&
                                    dec.terms.size() <= static_cast<std::uint64_t>(k) * monomial_count(p, n, d / k);
                    bad += !ok;
                    ++cases;
                }
            }
    return {bad == 0, std::to_string(cases) + " random f, p in {2,3}, n <= 3, k in {2,3}: " + std::to_string(bad) +
                          " failures"};
}

Result diagonals() {
    int bad = 0, identity_bad = 0, cases = 0;
    for (std::uint64_t idx = 1; idx < 256; ++idx) {
        const SetFamily a = family_from_index(3, idx);
        for (Elem p : {2U, 3U, 5U}) {
            const SumTensor t = sum_tensor(indicator_of_zero(p, 3), embed_01(a, p), static_cast<int>(p));
            const DiagonalReport dr = diagonal_slice_rank_bounds(t);
            bad += !(dr.is_diagonal && dr.nonzero_diagonal_count == a.size() && dr.lower_bound == a.size());
            if (p == 2) {
                const FieldMatrix id = FieldMatrix::identity(2, a.size());
                identity_bad += !std::equal(t.values.begin(), t.values.end(), id.entries().begin(), id.entries().end());
            }
            ++cases;
        }
    }
    return {bad == 0 && identity_bad == 0, std::to_string(cases) + " tensors (255 families x p in {2,3,5}): " +
                                               std::to_string(bad) + " not diagonal with |A| nonzero entries, " +
                                               std::to_string(identity_bad) + " p=2 cases differ from the identity"};
}

Result representations() {
    int bad = 0, cases = 0;
    for (std::uint64_t idx = 1; idx < 256; ++idx) {
        const SetFamily a = family_from_index(3, idx);
        const int vc = vc_dim(a);
        for (Mask s = 0; s < 8; ++s) {
            const ReducedPolynomial f = represent_monomial(a, s);
            bool ok = f.degree() <= vc;
            for (Mask x : a.members()) ok = ok && f.evaluate_code(x) == ((x & s) == s ? 1U : 0U);
            bad += !ok;
            ++cases;
        }
    }
    return {bad == 0, std::to_string(cases) + " (family, monomial) pairs: " + std::to_string(bad) + " failures"};
}

Result determinism() {
    int rank_mismatch = 0;
    Rng rng(20240501);
    for (int i = 0; i < 500; ++i) {
        const std::size_t rows = 1 + rng.below(150), cols = 1 + rng.below(150);
        std::vector<Elem> e(rows * cols);
        const std::uint64_t density = 1 + rng.below(8);
        for (auto& v : e) v = rng.below(density) == 0 ? 1 : 0;
        const FieldMatrix m(2, rows, cols, std::move(e));
        if (rank(m, RankPath::packed_f2) != rank(m, RankPath::generic)) ++rank_mismatch;
    }

    const std::vector<std::vector<std::string>> commands{
        {"gen-family", "--n", "8", "--kind", "random", "--m", "40", "--seed", "3"},
        {"verify", "--theorem", "main", "--n", "6", "--mode", "random", "--samples", "500", "--seed", "42"},
        {"verify", "--theorem", "psums", "--n", "4", "--p", "3", "--mode", "random", "--samples", "100", "--seed", "1"},
        {"verify", "--theorem", "clp_bound", "--n", "6", "--p", "2", "--mode", "random", "--samples", "50", "--seed", "7"},
        {"verify", "--theorem", "intdeg_main", "--n", "3", "--format", "csv"},
        {"clp-rank", "--p", "3", "--n", "4", "--degree", "5", "--seed", "9", "--format", "json"},
        {"slice-decompose", "--p", "3", "--n", "2", "--k", "3", "--degree", "3", "--seed", "4", "--format", "json"},
        {"demo-counterexample", "--op", "union", "--n", "10", "--d", "2"},
        {"search", "--question", "q1", "--n", "6", "--d", "2", "--mode", "heuristic", "--budget", "800", "--seed", "5",
         "--format", "json"},
    };
    int differing = 0;
    for (auto c : commands) {
        std::ostringstream a, b, err;
        vcsum::cli::run(c, a, err);
        if (c.front() == "verify") {
            c.push_back("--workers");
            c.push_back("4");
        }
        vcsum::cli::run(c, b, err);
        if (a.str() != b.str() || a.str().empty()) ++differing;
    }
    return {rank_mismatch == 0 && differing == 0,
            "packed vs generic rank on 500 seeded matrices: " + std::to_string(rank_mismatch) + " mismatches; " +
                std::to_string(commands.size()) + " CLI commands run twice: " + std::to_string(differing) +
                " differ"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
        {"1 main theorem, exhaustive n=4", main_exhaustive},
        {"2 int-deg <= VC-dim, exhaustive n<=4; rank int_deg = enumeration", intdeg_le_vc},
        {"3 CLP rank bound on random polynomials", clp_bound},
        {"4 p-sums theorem, random p=3 n=4", psums},
        {"5 intersection/union counterexample arithmetic", counterexamples},
        {"6 slice decomposition reconstruction and term bound", slices},
        {"7 diagonal p-fold sum tensors", diagonals},
        {"8 constructive monomial representation", representations},
        {"9 determinism and rank kernels", determinism},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Result r;
        try {
            r = check();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        failures += !r.pass;
        std::printf("%s criterion %s: %s\n", r.pass ? "PASS" : "FAIL", name.c_str(), r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
