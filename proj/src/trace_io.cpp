#include "fatpoint/trace_io.hpp"

#include <stdexcept>

namespace fatpoint {

using nlohmann::json;

json system_json(const LinearSystem& s) { return json::array({s.d, s.m0, s.n, s.m}); }

LinearSystem system_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) throw std::runtime_error("system must be [d, m0, n, m]");
    return LinearSystem{j[0].get<Int>(), j[1].get<Int>(), j[2].get<Int>(), j[3].get<Int>()};
}

namespace {

json node_json(const DegenerationNode& n) {
    json j = {{"k", n.k},
              {"b", n.b},
              {"rule", to_string(n.rule)},
              {"children",
               {{"lf_hat", system_json(n.lf_hat)},
                {"lf", system_json(n.lf)},
                {"lp", system_json(n.lp)},
                {"lp_hat", system_json(n.lp_hat)}}}};
    if (n.dims) {
        j["dims"] = {{"lf_hat", n.dims->lf_hat}, {"lf", n.dims->lf}, {"lp", n.dims->lp}, {"lp_hat", n.dims->lp_hat}};
    }
    if (n.l0) j["l0"] = *n.l0;
    return j;
}

DegenerationNode node_from_json(const json& j, const LinearSystem& parent) {
    DegenerationNode n;
    n.parent = parent;
    n.k = j.at("k").get<Int>();
    n.b = j.at("b").get<Int>();
    auto rule = parse_rule(j.at("rule").get<std::string>());
    if (!rule) throw std::runtime_error("unknown degeneration rule " + j.at("rule").dump());
    n.rule = *rule;
    const json& ch = j.at("children");
    n.lf_hat = system_from_json(ch.at("lf_hat"));
    n.lf = system_from_json(ch.at("lf"));
    n.lp = system_from_json(ch.at("lp"));
    n.lp_hat = system_from_json(ch.at("lp_hat"));
    if (j.contains("dims")) {
        const json& d = j["dims"];
        n.dims = ChildDimensions{d.at("lf_hat").get<Int>(), d.at("lf").get<Int>(), d.at("lp").get<Int>(),
                                 d.at("lp_hat").get<Int>()};
    }
    if (j.contains("l0")) n.l0 = j["l0"].get<Int>();
    return n;
}

json vector_json(const MultVector& v) { return {{"d", v.d}, {"mults", v.mults}}; }

MultVector vector_from_json(const json& j) { return MultVector{j.at("d").get<Int>(), j.at("mults").get<std::vector<Int>>()}; }

} // namespace

json to_json(const ProofTrace& t) {
    json claims = json::array();
    for (const Claim& c : t.claims) {
        json jc = {{"system", system_json(c.system)},
                   {"dimension", c.dimension},
                   {"kind", to_string(c.kind)},
                   {"rule", c.rule},
                   {"deps", c.deps},
                   {"certified", c.certified}};
        if (c.node) jc["node"] = node_json(*c.node);
        if (c.cremona_final) jc["cremona_final"] = vector_json(*c.cremona_final);
        if (c.oracle) {
            jc["oracle"] = {{"prime", c.oracle->prime},
                            {"seed", c.oracle->seed},
                            {"trials", c.oracle->trials},
                            {"unanimous", c.oracle->unanimous}};
        }
        claims.push_back(std::move(jc));
    }
    return {{"format", trace_format},
            {"version", trace_format_version},
            {"tool", t.version},
            {"root", system_json(t.root)},
            {"dimension", t.dimension},
            {"certified", t.certified()},
            {"uncertified_leaves", t.uncertified_leaves()},
            {"provenance", {{"prime", t.prime}, {"seed", t.seed}}},
            {"claims", std::move(claims)}};
}

ProofTrace trace_from_json(const json& j) {
    try {
        if (j.at("format").get<std::string>() != trace_format) throw std::runtime_error("not a trace document");
        if (j.at("version").get<int>() != trace_format_version) throw std::runtime_error("unsupported trace version");
        ProofTrace t;
        t.version = j.at("tool").get<std::string>();
        t.root = system_from_json(j.at("root"));
        t.dimension = j.at("dimension").get<Int>();
        t.prime = j.at("provenance").at("prime").get<std::uint64_t>();
        t.seed = j.at("provenance").at("seed").get<std::uint64_t>();
        for (const json& jc : j.at("claims")) {
            Claim c;
            c.system = system_from_json(jc.at("system"));
            c.dimension = jc.at("dimension").get<Int>();
            auto kind = parse_claim_kind(jc.at("kind").get<std::string>());
            if (!kind) throw std::runtime_error("unknown claim kind " + jc.at("kind").dump());
            c.kind = *kind;
            c.rule = jc.value("rule", "");
            c.deps = jc.at("deps").get<std::vector<std::size_t>>();
            c.certified = jc.at("certified").get<bool>();
            if (jc.contains("node")) c.node = node_from_json(jc["node"], c.system);
            if (jc.contains("cremona_final")) c.cremona_final = vector_from_json(jc["cremona_final"]);
            if (jc.contains("oracle")) {
                const json& o = jc["oracle"];
                c.oracle = OracleProvenance{o.at("prime").get<std::uint64_t>(), o.at("seed").get<std::uint64_t>(),
                                            o.at("trials").get<int>(), o.at("unanimous").get<bool>()};
            }
            t.claims.push_back(std::move(c));
        }
        return t;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed trace: ") + e.what());
    }
}

std::string serialize_trace(const ProofTrace& t) { return to_json(t).dump(2) + "\n"; }

ProofTrace parse_trace(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("trace is not JSON: ") + e.what());
    }
    return trace_from_json(j);
}

} // namespace fatpoint
