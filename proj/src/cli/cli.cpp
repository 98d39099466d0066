#include "vcsum/cli.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "vcsum/clp_slice.hpp"
#include "vcsum/errors.hpp"
#include "vcsum/interpolation.hpp"
#include "vcsum/report.hpp"
#include "vcsum/theorem_verifier.hpp"
#include "vcsum/vc_dimension.hpp"

namespace vcsum::cli {

namespace {

using report::Json;

// Exit 1 from inside a handler without losing the already-written report.
struct Outcome {
    std::string text;
    int code = kExitOk;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    return in;
}

PointSet load_points(const std::string& path) {
    auto in = open_input(path);
    try {
        return read_point_set(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

SetFamily load_family(const std::string& path) {
    auto in = open_input(path);
    try {
        return read_family(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

std::vector<Elem> parse_values(const std::string& text, Elem p) {
    std::vector<Elem> values;
    std::istringstream items(text);
    std::string item;
    while (std::getline(items, item, ',')) {
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(item, &used);
            if (used != item.size() || v >= p) throw std::invalid_argument(item);
            values.push_back(static_cast<Elem>(v));
        } catch (const std::logic_error&) {
            throw ParseError("bad function value '" + item + "'", 0);
        }
    }
    return values;
}

std::string show(const ReducedPolynomial& f) {
    const std::string s = f.serialize();
    return s.empty() ? "0" : s;
}

Json polynomial_json(const ReducedPolynomial& f) {
    Json j;
    j["p"] = f.modulus();
    j["n"] = f.variables();
    j["degree"] = f.degree();
    j["terms"] = f.serialize_terms();
    return j;
}

std::string render(Json j, const std::string& format, const std::string& text) {
    if (format == "text") return text;
    report::seal(j);
    return report::dump(j);
}

struct Options {
    std::string format;
    std::string out_path;

    // shared numeric flags
    int n = 0;
    int d = 0;
    int k = 0;
    int summands = 2;
    Elem p = 2;
    std::uint64_t seed = 0;

    // gen-family
    std::string kind;
    std::uint64_t m = 0;

    // inputs
    std::string in_path;
    std::string in2_path;
    std::string set_text;
    bool levels = false;
    std::string values_text;
    std::string represent_text;
    std::string witness_text;
    int monomials_degree = -1;
    int eval_matrix_degree = -1;
    std::string op;

    // polynomials
    std::string poly_text;
    int degree = -1;
    std::string diagonal_in;
    SizeGuards guards;

    // verify
    std::string theorem;
    std::optional<Elem> verify_p;
    std::string mode = "exhaustive";
    std::uint64_t samples = 1000;
    unsigned workers = 1;
    bool timing = false;
    std::string replay_path;

    // search
    std::string question;
    std::optional<int> d_to;
    std::optional<std::uint64_t> budget;
};

ReducedPolynomial polynomial_from_options(const Options& o) {
    if (o.n < 1) throw ParameterError("--n is required");
    if (!o.poly_text.empty()) return ReducedPolynomial::parse(o.p, o.n, o.poly_text);
    if (o.degree < 0) throw ParameterError("give either --poly or --degree");
    return random_polynomial(o.p, o.n, o.degree, o.seed);
}

// --- handlers --------------------------------------------------------------

Outcome cmd_gen_family(const Options& o) {
    FamilyKind kind;
    if (o.kind == "lowweight")
        kind = FamilyKind::lowweight(o.d);
    else if (o.kind == "highweight")
        kind = FamilyKind::highweight(o.d);
    else if (o.kind == "powerset")
        kind = FamilyKind::powerset();
    else
        kind = FamilyKind::random(o.m, o.seed);
    std::ostringstream text;
    write_family(text, generate_family(o.n, kind));
    return {text.str()};
}

Outcome cmd_vcdim(const Options& o, const std::string& echo) {
    const SetFamily a = load_family(o.in_path);
    const ShatterReport rep = shattered_sets(a);
    std::optional<bool> shattered;
    Mask y = 0;
    if (!o.set_text.empty()) {
        y = parse_set(o.set_text, a.ground_size());
        shattered = is_shattered(a, y);
    }

    std::ostringstream text;
    text << rep.vc_dim << '\n';
    if (shattered) text << "shattered " << format_set(y) << ": " << (*shattered ? "true" : "false") << '\n';
    if (o.levels)
        for (std::size_t k = 0; k < rep.levels.size(); ++k) {
            text << "level " << k << ':';
            for (Mask s : rep.levels[k]) text << ' ' << format_set(s);
            text << '\n';
        }

    Json j = report::envelope(echo);
    j["family_size"] = rep.family_size;
    j["vc_dim"] = rep.vc_dim;
    Json levels = Json::array();
    for (const auto& level : rep.levels) {
        Json l = Json::array();
        for (Mask s : level) l.push_back(format_set(s));
        levels.push_back(std::move(l));
    }
    j["shattered_sets_by_level"] = std::move(levels);
    if (shattered) j["is_shattered"] = {{"set", format_set(y)}, {"value", *shattered}};
    return {render(std::move(j), o.format, text.str())};
}

Outcome cmd_intdeg(const Options& o, const std::string& echo) {
    const PointSet dom = load_points(o.in_path);
    const int deg = int_deg(dom);
    std::ostringstream text;
    text << deg << '\n';
    Json j = report::envelope(echo);
    j["domain"] = {{"n", dom.dimension()}, {"p", dom.modulus()}, {"size", dom.size()}};
    j["int_deg"] = deg;

    if (!o.values_text.empty()) {
        const PartialFunction f(dom, parse_values(o.values_text, dom.modulus()));
        const int d = deg_on_set(f);
        const ReducedPolynomial poly = interpolate_min_degree(f);
        text << "deg_on_set: " << d << '\n' << "polynomial: " << show(poly) << '\n';
        j["deg_on_set"] = {{"degree", d}, {"polynomial", polynomial_json(poly)}};
    }
    if (!o.witness_text.empty()) {
        const SetFamily a = decode_01(dom);
        const Mask s = parse_set(o.witness_text, a.ground_size());
        const AbsentPattern v = find_unshattered_witness(a, s);
        text << "witness on " << format_set(s) << ": ones " << format_set(v.ones) << '\n';
        j["witness"] = {{"set", format_set(s)}, {"ones", format_set(v.ones)}};
    }
    if (!o.represent_text.empty()) {
        if (dom.modulus() != 2) throw ParameterError("--represent works on set families (p=2)");
        const SetFamily a = decode_01(dom);
        const Mask s = parse_set(o.represent_text, a.ground_size());
        const ReducedPolynomial poly = represent_monomial(a, s);
        text << "represent " << format_set(s) << ": " << show(poly) << '\n';
        j["represent"] = {{"set", format_set(s)}, {"vc_dim", vc_dim(a)}, {"polynomial", polynomial_json(poly)}};
    }
    if (o.monomials_degree >= 0) {
        const MonomialBasis basis = monomial_basis(dom.modulus(), dom.dimension(), o.monomials_degree);
        Json names = Json::array();
        text << "monomials(" << o.monomials_degree << "): " << basis.monomials.size() << '\n';
        for (const auto& e : basis.monomials) names.push_back(format_monomial(e));
        j["monomials"] = {{"degree", o.monomials_degree},
                          {"count", monomial_count(dom.modulus(), dom.dimension(), o.monomials_degree)},
                          {"basis", std::move(names)}};
    }
    if (o.eval_matrix_degree >= 0) {
        const FieldMatrix m =
            evaluation_matrix(dom, monomial_basis(dom.modulus(), dom.dimension(), o.eval_matrix_degree));
        Json rows = Json::array();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            const auto row = m.row(r);
            rows.push_back(std::vector<Elem>(row.begin(), row.end()));
            for (Elem e : row) text << e << ' ';
            text << '\n';
        }
        j["evaluation_matrix"] = {{"degree", o.eval_matrix_degree}, {"rank", rank(m)}, {"rows", std::move(rows)}};
    }
    return {render(std::move(j), o.format, text.str())};
}

Outcome cmd_family_op(const Options& o) {
    std::ostringstream text;
    if (o.op == "sumset") {
        write_point_set(text, k_fold_sumset(load_points(o.in_path), o.summands));
    } else if (o.op == "embed") {
        write_point_set(text, embed_01(load_family(o.in_path), o.p));
    } else {
        const SetFamily a = load_family(o.in_path);
        const SetFamily b = o.in2_path.empty() ? a : load_family(o.in2_path);
        write_family(text, pairwise_family(a, b, parse_set_op(o.op)));
    }
    return {text.str()};
}

Outcome cmd_clp_rank(const Options& o, const std::string& echo) {
    const ReducedPolynomial poly = polynomial_from_options(o);
    const ClpReport r = verify_clp_bound(poly, o.guards);
    std::ostringstream text;
    text << "degree " << r.degree << ": rank " << r.rank << " <= " << r.bound << (r.ok ? " [ok]" : " [VIOLATED]") << '\n';
    Json j = report::envelope(echo);
    j["polynomial"] = polynomial_json(poly);
    j["rank"] = r.rank;
    j["bound"] = r.bound;
    j["monomial_count"] = monomial_count(poly.modulus(), poly.variables(), r.degree / 2);
    j["ok"] = r.ok;
    return {render(std::move(j), o.format, text.str()), r.ok ? kExitOk : kExitViolation};
}

Outcome cmd_slice(const Options& o, const std::string& echo) {
    std::ostringstream text;
    Json j = report::envelope(echo);
    bool ok = true;

    if (!o.diagonal_in.empty()) {
        const SetFamily a = load_family(o.diagonal_in);
        const int k = o.k > 0 ? o.k : static_cast<int>(o.p);
        const PointSet axis = embed_01(a, o.p);
        const SumTensor t = sum_tensor(indicator_of_zero(o.p, a.ground_size()), axis, k, o.guards);
        const DiagonalReport dr = diagonal_slice_rank_bounds(t);
        if (k == static_cast<int>(o.p)) ok = dr.is_diagonal && dr.nonzero_diagonal_count == a.size();
        text << "tensor " << t.side() << "^" << k << ": diagonal " << (dr.is_diagonal ? "yes" : "no")
             << ", nonzero diagonal " << dr.nonzero_diagonal_count << ", slice-rank lower bound " << dr.lower_bound
             << ", digest " << t.content_digest() << '\n';
        j["tensor"] = {{"side", t.side()},
                       {"arity", k},
                       {"p", o.p},
                       {"is_diagonal", dr.is_diagonal},
                       {"nonzero_diagonal_count", dr.nonzero_diagonal_count},
                       {"lower_bound", dr.lower_bound},
                       {"content_digest", t.content_digest()}};
    } else {
        const ReducedPolynomial f = polynomial_from_options(o);
        const int k = o.k > 0 ? o.k : static_cast<int>(o.p);
        const SliceDecomposition dec = slice_decompose(f, k, o.guards);
        const std::uint64_t bound = static_cast<std::uint64_t>(k) * monomial_count(f.modulus(), f.variables(), dec.axis_degree_bound);
        const bool reconstructs = verify_reconstruction(dec, f, o.guards);
        ok = reconstructs && dec.terms.size() <= bound;
        text << "deg " << dec.source_degree << ", k " << k << ": " << dec.terms.size() << " terms <= " << bound
             << ", reconstruction " << (reconstructs ? "exact" : "FAILED") << '\n';
        Json terms = Json::array();
        for (const SliceTerm& t : dec.terms) {
            text << "  axis " << t.axis << " " << format_monomial(t.axis_monomial) << " * [" << show(t.residual)
                 << "]\n";
            terms.push_back({{"axis", t.axis},
                             {"monomial", std::vector<std::uint32_t>(t.axis_monomial.begin(), t.axis_monomial.end())},
                             {"residual", t.residual.serialize_terms()}});
        }
        j["polynomial"] = polynomial_json(f);
        j["arity"] = k;
        j["axis_degree_bound"] = dec.axis_degree_bound;
        j["term_count"] = dec.terms.size();
        j["term_bound"] = bound;
        j["reconstruction_exact"] = reconstructs;
        j["terms"] = std::move(terms);
    }
    j["ok"] = ok;
    return {render(std::move(j), o.format, text.str()), ok ? kExitOk : kExitViolation};
}

VerificationReport rerun(const VerificationReport& r, const ScanOptions& scan) {
    const TheoremId id = r.theorem;
    if (r.mode == "exhaustive") return exhaustive_scan(id, r.n, r.p, scan);
    if (r.mode == "random") {
        if (!r.seed || !r.samples) throw ParseError("random report lacks seed or samples", 0);
        return random_scan(id, r.n, r.p, *r.samples, *r.seed, scan);
    }
    throw ParseError("unknown scan mode '" + r.mode + "'", 0);
}

Outcome cmd_replay(const Options& o, const std::string& echo, const ScanOptions& scan) {
    auto in = open_input(o.replay_path);
    Json recorded;
    try {
        recorded = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(o.replay_path + ": " + e.what(), 0);
    }
    const VerificationReport claimed = report::verification_from_json(recorded);
    const VerificationReport fresh = rerun(claimed, scan);

    std::vector<std::string> mismatches;
    if (!claimed.violations.empty()) mismatches.push_back("recorded report lists violations");
    if (!recorded.contains("content_digest") || !recorded["content_digest"].is_string() ||
        recorded["content_digest"].get<std::string>() != report::compute_digest(recorded))
        mismatches.push_back("content_digest does not match report content");
    if (fresh.instances_checked != claimed.instances_checked) mismatches.push_back("instances_checked differs");
    if (fresh.violations != claimed.violations) mismatches.push_back("violations differ");
    const bool same_extreme =
        fresh.extreme.has_value() == claimed.extreme.has_value() &&
        (!fresh.extreme || (fresh.extreme->instance == claimed.extreme->instance &&
                            fresh.extreme->lhs == claimed.extreme->lhs && fresh.extreme->rhs == claimed.extreme->rhs));
    if (!same_extreme) mismatches.push_back("extremes differ");
    if (!fresh.ok()) mismatches.push_back("re-run found violations");

    std::ostringstream text;
    text << "replay of " << to_string(claimed.theorem) << ": " << (mismatches.empty() ? "reproduced" : "FAILED") << '\n';
    for (const auto& m : mismatches) text << "  " << m << '\n';
    Json j = report::envelope(echo);
    j["theorem"] = to_string(claimed.theorem);
    j["reproduced"] = mismatches.empty();
    j["mismatches"] = mismatches;
    return {render(std::move(j), o.format, text.str()), mismatches.empty() ? kExitOk : kExitViolation};
}

Outcome cmd_verify(const Options& o, const std::string& echo, std::ostream& err) {
    ScanOptions scan;
    scan.workers = std::max(1U, o.workers);
    scan.progress = [&err](std::uint64_t done, std::uint64_t total) {
        if (total >= 2 * 4096) err << "progress: " << done << "/" << total << '\n';
    };
    if (!o.replay_path.empty()) return cmd_replay(o, echo, scan);
    if (o.theorem.empty()) throw ParameterError("--theorem is required");
    if (o.n < 1) throw ParameterError("--n is required");

    const TheoremId id = parse_theorem(o.theorem);
    const auto start = std::chrono::steady_clock::now();
    const VerificationReport r = o.mode == "exhaustive" ? exhaustive_scan(id, o.n, o.verify_p, scan)
                                                        : random_scan(id, o.n, o.verify_p, o.samples, o.seed, scan);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    std::string body;
    if (o.format == "csv")
        body = report::verification_csv(r);
    else if (o.format == "text")
        body = report::verification_text(r);
    else
        body = report::dump(report::verification_json(r, echo, o.timing ? std::optional<double>(ms) : std::nullopt));
    return {body, r.ok() ? kExitOk : kExitViolation};
}

Outcome cmd_demo(const Options& o, const std::string& echo) {
    const CounterexampleReport r = counterexample_demo(parse_set_op(o.op), o.n, o.d);
    if (o.format == "text") {
        std::ostringstream text;
        text << to_string(r.op) << " n=" << r.n << " d=" << r.d << ": |A| = " << r.family_size
             << ", vc(A*A) = " << r.vc_star << ", 2*binom_sum(n,d/2) = " << r.half_bound
             << (r.witness ? " -> bound fails" : " -> bound holds") << '\n';
        return {text.str()};
    }
    return {report::dump(report::counterexample_json(r, echo))};
}

Outcome cmd_search(const Options& o, const std::string& echo) {
    const OpenQuestion q = parse_question(o.question);
    const SearchMode mode = parse_search_mode(o.mode);
    const std::uint64_t budget = o.budget.value_or(mode == SearchMode::exhaustive ? 0 : 20000);
    const int last = o.d_to.value_or(o.d);
    if (last < o.d) throw ParameterError("--d-to must be at least --d");
    std::vector<EvidenceRow> rows;
    for (int d = o.d; d <= last; ++d) rows.push_back(search_open_question(q, o.n, d, mode, budget, o.seed));
    if (o.format == "csv") return {report::evidence_csv(rows)};
    if (o.format == "json") return {report::dump(report::evidence_json(rows, echo))};
    return {report::evidence_text(rows)};
}

void add_guards(CLI::App* sub, Options& o) {
    sub->add_option("--max-points", o.guards.clp_points, "size guard on p^n for sum matrices")->capture_default_str();
    sub->add_option("--max-grid", o.guards.grid_cells, "size guard on the p^(k n) reconstruction grid")
        ->capture_default_str();
    sub->add_option("--max-tensor", o.guards.tensor_entries, "size guard on |A|^k tensor entries")
        ->capture_default_str();
}

void add_format(CLI::App* sub, Options& o, const std::string& fallback) {
    sub->add_option("--format", o.format, "output format (default " + fallback + ")")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", o.out_path, "write the report here instead of standard output");
}

}  // namespace

std::vector<std::string> subcommands() {
    return {"vcdim", "intdeg", "family-op", "clp-rank", "slice-decompose", "verify", "demo-counterexample",
            "search", "gen-family", "schema"};
}

const std::vector<std::pair<std::string, std::string>>& operation_coverage() {
    static const std::vector<std::pair<std::string, std::string>> table{
        {"binom_sum", "demo-counterexample"},
        {"pairwise_family", "family-op"},
        {"k_fold_sumset", "family-op"},
        {"embed_01", "family-op"},
        {"generate_family", "gen-family"},
        {"is_shattered", "vcdim"},
        {"shattered_sets", "vcdim"},
        {"vc_dim", "vcdim"},
        {"monomial_count", "intdeg"},
        {"monomial_basis", "intdeg"},
        {"evaluation_matrix", "intdeg"},
        {"rank", "clp-rank"},
        {"deg_on_set", "intdeg"},
        {"int_deg", "intdeg"},
        {"find_unshattered_witness", "intdeg"},
        {"represent_monomial", "intdeg"},
        {"clp_matrix", "clp-rank"},
        {"verify_clp_bound", "clp-rank"},
        {"slice_decompose", "slice-decompose"},
        {"sum_tensor", "slice-decompose"},
        {"diagonal_slice_rank_bounds", "slice-decompose"},
        {"check_instance", "verify"},
        {"exhaustive_scan", "verify"},
        {"random_scan", "verify"},
        {"counterexample_demo", "demo-counterexample"},
        {"search_open_question", "search"},
        {"report_schema", "schema"},
    };
    return table;
}

std::string command_echo(const std::vector<std::string>& args) {
    std::string echo;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--out" || a == "--workers") {
            ++i;
            continue;
        }
        if (a == "--timing" || a.rfind("--out=", 0) == 0 || a.rfind("--workers=", 0) == 0) continue;
        if (!echo.empty()) echo += ' ';
        echo += a;
    }
    return echo;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Set-family sumsets, VC dimension and interpolation degree: exact computations and bound checks",
                 "vcsum"};
    app.require_subcommand(1, 1);
    Options o;
    o.workers = std::max(1U, std::thread::hardware_concurrency());

    auto* gen = app.add_subcommand("gen-family", "write a named family in the family text format");
    gen->add_option("--n", o.n, "ground size")->required();
    gen->add_option("--kind", o.kind, "lowweight | highweight | powerset | random")
        ->required()
        ->check(CLI::IsMember({"lowweight", "highweight", "powerset", "random"}));
    gen->add_option("--d", o.d, "weight parameter")->capture_default_str();
    gen->add_option("--m", o.m, "random family size");
    gen->add_option("--seed", o.seed, "random seed")->capture_default_str();
    gen->add_option("--out", o.out_path, "output file (default standard output)");

    auto* vc = app.add_subcommand("vcdim", "VC dimension and shattered sets of a family");
    vc->add_option("--in", o.in_path, "family file")->required();
    vc->add_option("--set", o.set_text, "also test whether this set (e.g. {1,3}) is shattered");
    vc->add_flag("--levels", o.levels, "list shattered sets level by level");
    add_format(vc, o, "text");

    auto* id = app.add_subcommand("intdeg", "interpolation degree of a point set and related queries");
    id->add_option("--in", o.in_path, "point-set file")->required();
    id->add_option("--values", o.values_text, "comma-separated function values in domain order");
    id->add_option("--witness", o.witness_text, "smallest absent pattern on this set (p=2)");
    id->add_option("--represent", o.represent_text, "low-degree representation of the monomial x_S (p=2)");
    id->add_option("--monomials", o.monomials_degree, "list the reduced monomial basis up to this degree");
    id->add_option("--eval-matrix", o.eval_matrix_degree, "print the evaluation matrix up to this degree");
    add_format(id, o, "text");

    auto* fo = app.add_subcommand("family-op", "pairwise families, k-fold sumsets and 0/1 embeddings");
    fo->add_option("--in", o.in_path, "input file")->required();
    fo->add_option("--in2", o.in2_path, "second family for pairwise ops (default: the first)");
    fo->add_option("--op", o.op, "sym_diff | intersect | union | sumset | embed")
        ->required()
        ->check(CLI::IsMember({"sym_diff", "intersect", "union", "sumset", "embed"}));
    fo->add_option("--k", o.summands, "summands for sumset")->capture_default_str();
    fo->add_option("--p", o.p, "target modulus for embed")->capture_default_str();
    fo->add_option("--out", o.out_path, "output file (default standard output)");

    auto* clp = app.add_subcommand("clp-rank", "rank of the sum matrix P(x+y) against its monomial bound");
    clp->add_option("--p", o.p, "modulus")->capture_default_str();
    clp->add_option("--n", o.n, "variables")->required();
    clp->add_option("--poly", o.poly_text, "terms 'c:e1,...,en;...'");
    clp->add_option("--degree", o.degree, "draw a random polynomial of this degree");
    clp->add_option("--seed", o.seed, "seed for --degree")->capture_default_str();
    add_guards(clp, o);
    add_format(clp, o, "text");

    auto* sl = app.add_subcommand("slice-decompose", "slice-rank decomposition of f(X1+...+Xk), or diagonal test");
    sl->add_option("--p", o.p, "modulus")->capture_default_str();
    sl->add_option("--n", o.n, "variables");
    sl->add_option("--k", o.k, "arity (default p)");
    sl->add_option("--poly", o.poly_text, "terms 'c:e1,...,en;...'");
    sl->add_option("--degree", o.degree, "draw a random polynomial of this degree");
    sl->add_option("--seed", o.seed, "seed for --degree")->capture_default_str();
    sl->add_option("--diagonal-in", o.diagonal_in, "family file: test the k-fold sum tensor of the origin indicator");
    add_guards(sl, o);
    add_format(sl, o, "text");

    auto* ver = app.add_subcommand("verify", "check a theorem over every or over random families");
    ver->add_option("--theorem", o.theorem, "sauer | main | intdeg_main | intdeg_le_vc | clp_bound | psums | vc_monotone");
    ver->add_option("--n", o.n, "ground size");
    ver->add_option("--p", o.verify_p, "modulus (psums, clp_bound)");
    ver->add_option("--mode", o.mode, "exhaustive | random")
        ->capture_default_str()
        ->check(CLI::IsMember({"exhaustive", "random"}));
    ver->add_option("--samples", o.samples, "random samples")->capture_default_str();
    ver->add_option("--seed", o.seed, "random seed")->capture_default_str();
    ver->add_option("--workers", o.workers, "worker threads (default: available parallelism)");
    ver->add_flag("--timing", o.timing, "include timing_ms (excluded from the digest)");
    ver->add_option("--replay", o.replay_path, "re-run the scan described by a saved JSON report and compare");
    add_format(ver, o, "json");

    auto* demo = app.add_subcommand("demo-counterexample", "families where the symmetric-difference bound fails");
    demo->add_option("--op", o.op, "intersect | union")->required()->check(CLI::IsMember({"intersect", "union"}));
    demo->add_option("--n", o.n, "ground size")->required();
    demo->add_option("--d", o.d, "weight parameter (>= 2)")->required();
    add_format(demo, o, "json");

    auto* se = app.add_subcommand("search", "largest families under the open-question constraints");
    se->add_option("--question", o.question, "q1 | q2")->required()->check(CLI::IsMember({"q1", "q2"}));
    se->add_option("--n", o.n, "ground size")->required();
    se->add_option("--d", o.d, "VC-dimension bound")->required();
    se->add_option("--d-to", o.d_to, "emit one row per d in [--d, --d-to]");
    se->add_option("--mode", o.mode, "exhaustive | heuristic")
        ->capture_default_str()
        ->check(CLI::IsMember({"exhaustive", "heuristic"}));
    se->add_option("--budget", o.budget, "constraint evaluations (heuristic default 20000, exhaustive unlimited)");
    se->add_option("--seed", o.seed, "heuristic seed")->capture_default_str();
    add_format(se, o, "text");

    auto* sc = app.add_subcommand("schema", "print the JSON schema of verification reports");
    sc->add_option("--out", o.out_path, "output file (default standard output)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    const std::string echo = command_echo(args);
    const auto fmt = [&o](const char* fallback) {
        if (o.format.empty()) o.format = fallback;
    };

    try {
        Outcome result;
        if (app.got_subcommand(gen)) {
            result = cmd_gen_family(o);
        } else if (app.got_subcommand(vc)) {
            fmt("text");
            result = cmd_vcdim(o, echo);
        } else if (app.got_subcommand(id)) {
            fmt("text");
            result = cmd_intdeg(o, echo);
        } else if (app.got_subcommand(fo)) {
            result = cmd_family_op(o);
        } else if (app.got_subcommand(clp)) {
            fmt("text");
            result = cmd_clp_rank(o, echo);
        } else if (app.got_subcommand(sl)) {
            fmt("text");
            result = cmd_slice(o, echo);
        } else if (app.got_subcommand(ver)) {
            fmt("json");
            result = cmd_verify(o, echo, err);
        } else if (app.got_subcommand(demo)) {
            fmt("json");
            result = cmd_demo(o, echo);
        } else if (app.got_subcommand(se)) {
            fmt("text");
            result = cmd_search(o, echo);
        } else {
            result = {report::dump(report::schema())};
        }

        if (o.out_path.empty()) {
            out << result.text;
        } else {
            std::ofstream file(o.out_path, std::ios::binary | std::ios::trunc);
            if (!file) throw ResourceError("cannot write '" + o.out_path + "'");
            file << result.text;
        }
        if (result.code == kExitViolation) err << "violation: the checked bound does not hold (see report)\n";
        return result.code;
    } catch (const EmptyFamilyError& e) {
        err << "error: empty family: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace vcsum::cli
