#include "vcsum/report.hpp"

#include <sstream>

#include "vcsum/digest.hpp"
#include "vcsum/errors.hpp"

namespace vcsum::report {

namespace {

Json optional_number(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

Json set_list(const SetFamily& a) {
    Json list = Json::array();
    for (Mask s : a.members()) list.push_back(format_set(s));
    return list;
}

}  // namespace

const char* tool_version() {
#ifdef VCSUM_VERSION
    return VCSUM_VERSION;
#else
    return "0.0.0";
#endif
}

Json envelope(const std::string& command_echo) {
    Json j;
    j["tool_version"] = tool_version();
    j["schema_version"] = kSchemaVersion;
    j["command_echo"] = command_echo;
    return j;
}

std::string compute_digest(const Json& j) {
    Json copy = j;
    copy.erase("timing_ms");
    copy.erase("content_digest");
    Fnv1a h;
    h.update(copy.dump());
    return h.hex();
}

void seal(Json& j) {
    j.erase("content_digest");
    j["content_digest"] = compute_digest(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json schema() {
    const Json nullable_int = {{"type", Json::array({"integer", "null"})}};
    Json s;
    s["$schema"] = "https://json-schema.org/draft/2020-12/schema";
    s["$id"] = std::string("urn:vcsum:") + kSchemaVersion;
    s["title"] = "vcsum verification report";
    s["version"] = tool_version();
    s["type"] = "object";
    s["required"] = Json::array({"tool_version", "schema_version", "command_echo", "theorem", "parameters", "seed",
                                 "instances_checked", "violations", "extremes", "ok", "content_digest"});
    Json props;
    props["tool_version"] = {{"type", "string"}, {"const", tool_version()}};
    props["schema_version"] = {{"type", "string"}, {"const", kSchemaVersion}};
    props["command_echo"] = {{"type", "string"}};
    Json theorem_names = Json::array();
    for (TheoremId id : all_theorems()) theorem_names.push_back(to_string(id));
    props["theorem"] = {{"type", "string"}, {"enum", theorem_names}};
    props["parameters"] = {
        {"type", "object"},
        {"required", Json::array({"n", "p", "mode", "samples"})},
        {"properties",
         {{"n", {{"type", "integer"}}},
          {"p", nullable_int},
          {"mode", {{"type", "string"}, {"enum", Json::array({"exhaustive", "random"})}}},
          {"samples", nullable_int}}}};
    props["seed"] = nullable_int;
    props["instances_checked"] = {{"type", "integer"}, {"minimum", 1}};
    props["violations"] = {{"type", "array"}, {"items", {{"type", "string"}}}};
    props["extremes"] = {
        {"type", Json::array({"object", "null"})},
        {"required", Json::array({"instance", "lhs", "rhs"})},
        {"properties",
         {{"instance", {{"type", "string"}}}, {"lhs", {{"type", "integer"}}}, {"rhs", {{"type", "integer"}}}}}};
    props["ok"] = {{"type", "boolean"}};
    props["timing_ms"] = {{"type", "number"}};
    props["content_digest"] = {{"type", "string"}, {"pattern", "^[0-9a-f]{16}$"}};
    s["properties"] = props;
    s["additionalProperties"] = false;
    return s;
}

Json verification_json(const VerificationReport& r, const std::string& command_echo, std::optional<double> timing_ms) {
    Json j = envelope(command_echo);
    j["theorem"] = to_string(r.theorem);
    Json params;
    params["n"] = r.n;
    params["p"] = r.p ? Json(*r.p) : Json(nullptr);
    params["mode"] = r.mode;
    params["samples"] = optional_number(r.samples);
    j["parameters"] = params;
    j["seed"] = optional_number(r.seed);
    j["instances_checked"] = r.instances_checked;
    j["violations"] = r.violations;
    if (r.extreme)
        j["extremes"] = {{"instance", r.extreme->instance}, {"lhs", r.extreme->lhs}, {"rhs", r.extreme->rhs}};
    else
        j["extremes"] = nullptr;
    j["ok"] = r.ok();
    if (timing_ms) j["timing_ms"] = *timing_ms;
    seal(j);
    return j;
}

VerificationReport verification_from_json(const Json& j) {
    try {
        VerificationReport r;
        r.theorem = parse_theorem(j.at("theorem").get<std::string>());
        const Json& params = j.at("parameters");
        r.n = params.at("n").get<int>();
        if (!params.at("p").is_null()) r.p = params.at("p").get<Elem>();
        r.mode = params.at("mode").get<std::string>();
        if (!params.at("samples").is_null()) r.samples = params.at("samples").get<std::uint64_t>();
        if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
        r.instances_checked = j.at("instances_checked").get<std::uint64_t>();
        r.violations = j.at("violations").get<std::vector<std::string>>();
        const Json& ex = j.at("extremes");
        if (!ex.is_null())
            r.extreme = Extreme{ex.at("instance").get<std::string>(), ex.at("lhs").get<std::uint64_t>(),
                                ex.at("rhs").get<std::uint64_t>()};
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what(), 0);
    }
}

std::string verification_csv(const VerificationReport& r) {
    std::ostringstream out;
    out << "theorem,n,p,mode,seed,samples,instances_checked,violations,ok,extreme_lhs,extreme_rhs,extreme_instance\n";
    out << to_string(r.theorem) << ',' << r.n << ',' << (r.p ? std::to_string(*r.p) : "") << ',' << r.mode << ','
        << (r.seed ? std::to_string(*r.seed) : "") << ',' << (r.samples ? std::to_string(*r.samples) : "") << ','
        << r.instances_checked << ',' << r.violations.size() << ',' << (r.ok() ? "true" : "false") << ',';
    if (r.extreme)
        out << r.extreme->lhs << ',' << r.extreme->rhs << ',' << csv_field(r.extreme->instance);
    else
        out << ",,";
    out << '\n';
    return out.str();
}

std::string verification_text(const VerificationReport& r) {
    std::ostringstream out;
    out << "theorem " << to_string(r.theorem) << " n=" << r.n;
    if (r.p) out << " p=" << *r.p;
    out << " mode=" << r.mode;
    if (r.seed) out << " seed=" << *r.seed;
    out << ": " << r.instances_checked << " instances, " << r.violations.size() << " violations"
        << (r.ok() ? " [ok]" : " [VIOLATED]") << '\n';
    if (r.extreme)
        out << "tightest: " << r.extreme->lhs << " <= " << r.extreme->rhs << " at " << r.extreme->instance << '\n';
    for (const auto& v : r.violations) out << "violation: " << v << '\n';
    return out.str();
}

Json family_json(const SetFamily& a) {
    Json j;
    j["n"] = a.ground_size();
    j["size"] = a.size();
    j["members"] = set_list(a);
    return j;
}

Json evidence_json(const std::vector<EvidenceRow>& rows, const std::string& command_echo) {
    Json j = envelope(command_echo);
    j["disclaimer"] = kEvidenceDisclaimer;
    Json list = Json::array();
    for (const auto& row : rows) {
        Json r;
        r["question"] = to_string(row.question);
        r["n"] = row.n;
        r["d"] = row.d;
        r["mode"] = to_string(row.mode);
        r["best_size"] = row.best_size;
        r["sauer_bound"] = row.sauer_bound;
        r["half_bound"] = row.half_bound;
        r["evaluations"] = row.evaluations;
        r["certificate"] = set_list(row.certificate);
        list.push_back(std::move(r));
    }
    j["rows"] = std::move(list);
    seal(j);
    return j;
}

std::string evidence_csv(const std::vector<EvidenceRow>& rows) {
    std::ostringstream out;
    out << "# " << kEvidenceDisclaimer << '\n';
    out << "question,n,d,mode,best_size,sauer_bound,half_bound,evaluations,certificate\n";
    for (const auto& row : rows) {
        std::string cert;
        for (Mask s : row.certificate.members()) cert += format_set(s);
        out << to_string(row.question) << ',' << row.n << ',' << row.d << ',' << to_string(row.mode) << ','
            << row.best_size << ',' << row.sauer_bound << ',' << row.half_bound << ',' << row.evaluations << ','
            << csv_field(cert) << '\n';
    }
    return out.str();
}

std::string evidence_text(const std::vector<EvidenceRow>& rows) {
    std::ostringstream out;
    out << "# " << kEvidenceDisclaimer << '\n';
    out << "question  n  d  best |A|  binom_sum(n,d)  2*binom_sum(n,d/2)\n";
    for (const auto& row : rows) {
        out << to_string(row.question) << "        " << row.n << "  " << row.d << "  " << row.best_size << "  "
            << row.sauer_bound << "  " << row.half_bound << '\n';
        out << "  certificate:";
        for (Mask s : row.certificate.members()) out << ' ' << format_set(s);
        out << '\n';
    }
    return out.str();
}

Json counterexample_json(const CounterexampleReport& r, const std::string& command_echo) {
    Json j = envelope(command_echo);
    j["op"] = to_string(r.op);
    j["n"] = r.n;
    j["d"] = r.d;
    j["family_size"] = r.family_size;
    j["vc_star"] = r.vc_star;
    j["half_bound"] = r.half_bound;
    j["witness"] = r.witness;
    seal(j);
    return j;
}

}  // namespace vcsum::report
