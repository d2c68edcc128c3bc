#include "bispec/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

#include "bispec/parser.hpp"

namespace bispec {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw config_error("config: " + where + ": " + what);
}

void require_object(const json& j, const std::string& where,
                    std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(where, "expected an object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed) known = known || item.key() == k;
        if (!known) fail(where, "unknown key \"" + item.key() + "\"");
    }
}

double get_number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

long long get_integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long long>();
}

cplx get_point(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(where, "expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Relation parse_relation(const json& j, const std::string& where) {
    require_object(j, where, {"kind", "p", "q"});
    if (!j.contains("kind")) fail(where, "missing \"kind\"");
    std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
    Relation rel;
    if (kind == "independent") {
        rel.kind = RelationKind::Independent;
        if (j.contains("p") || j.contains("q"))
            fail(where, "\"independent\" takes no exponents");
        return rel;
    }
    if (kind == "positive")
        rel.kind = RelationKind::Positive;
    else if (kind == "mixed")
        rel.kind = RelationKind::Mixed;
    else
        fail(where, "kind must be \"independent\", \"positive\" or \"mixed\"");
    if (!j.contains("p") || !j.contains("q")) fail(where, "missing exponent p or q");
    rel.p = get_integer(j["p"], where + ".p");
    rel.q = get_integer(j["q"], where + ".q");
    if (rel.p < 1 || rel.q < 1) fail(where, "exponents must be positive");
    return rel;
}

AngleSpec parse_angle(const json& j, const std::string& where) {
    require_object(j, where, {"rational", "radians", "relation"});
    bool has_rat = j.contains("rational"), has_irr = j.contains("radians");
    if (has_rat == has_irr)
        fail(where, "exactly one of \"rational\" or \"radians\" is required");
    std::optional<Relation> rel;
    if (j.contains("relation")) rel = parse_relation(j["relation"], where + ".relation");
    if (has_rat) {
        const json& r = j["rational"];
        if (!r.is_array() || r.size() != 2)
            fail(where + ".rational", "expected [num, den]");
        long long num = get_integer(r[0], where + ".rational[0]");
        long long den = get_integer(r[1], where + ".rational[1]");
        AngleSpec a = AngleSpec::make_rational(num, den);
        a.relation = rel;
        return a;
    }
    return AngleSpec::make_irrational(get_number(j["radians"], where + ".radians"), rel);
}

MobiusMap parse_map(const json& j, const std::string& where) {
    require_object(j, where,
                   {"type", "angle", "fixed", "beta", "strength", "axis", "a", "b",
                    "c", "d"});
    if (!j.contains("type") || !j["type"].is_string())
        fail(where, "missing map \"type\"");
    std::string type = j["type"].get<std::string>();
    auto forbid = [&](const char* key) {
        if (j.contains(key))
            fail(where, "key \"" + std::string(key) + "\" does not apply to type \"" +
                            type + "\"");
    };
    if (type == "rotation") {
        for (const char* k : {"fixed", "beta", "strength", "axis", "a", "b", "c", "d"})
            forbid(k);
        if (!j.contains("angle")) fail(where, "rotation needs an \"angle\"");
        return mobius_rotation(parse_angle(j["angle"], where + ".angle"));
    }
    if (type == "parabolic") {
        for (const char* k : {"angle", "strength", "axis", "a", "b", "c", "d"})
            forbid(k);
        if (!j.contains("fixed") || !j.contains("beta"))
            fail(where, "parabolic needs \"fixed\" and \"beta\"");
        return mobius_parabolic(get_point(j["fixed"], where + ".fixed"),
                                get_number(j["beta"], where + ".beta"));
    }
    if (type == "hyperbolic") {
        for (const char* k : {"angle", "fixed", "beta", "a", "b", "c", "d"}) forbid(k);
        if (!j.contains("strength")) fail(where, "hyperbolic needs a \"strength\"");
        cplx axis{1.0, 0.0};
        if (j.contains("axis")) axis = get_point(j["axis"], where + ".axis");
        return mobius_hyperbolic(get_number(j["strength"], where + ".strength"), axis);
    }
    if (type == "matrix") {
        for (const char* k : {"fixed", "beta", "strength", "axis"}) forbid(k);
        for (const char* k : {"a", "b", "c", "d"})
            if (!j.contains(k))
                fail(where, "matrix needs entries \"a\", \"b\", \"c\", \"d\"");
        std::optional<AngleSpec> angle;
        if (j.contains("angle")) angle = parse_angle(j["angle"], where + ".angle");
        return mobius_from_matrix(get_point(j["a"], where + ".a"),
                                  get_point(j["b"], where + ".b"),
                                  get_point(j["c"], where + ".c"),
                                  get_point(j["d"], where + ".d"), angle);
    }
    fail(where, "type must be \"rotation\", \"parabolic\", \"hyperbolic\" or \"matrix\"");
}

void parse_oracle(const json& j, OracleOptions& o) {
    require_object(j, "oracle", {"grid", "n_max", "horizon", "tolerance"});
    if (j.contains("grid")) o.grid = get_integer(j["grid"], "oracle.grid");
    if (j.contains("n_max")) o.n_max = get_integer(j["n_max"], "oracle.n_max");
    if (j.contains("horizon")) o.horizon = get_integer(j["horizon"], "oracle.horizon");
    if (j.contains("tolerance")) {
        o.slack = get_number(j["tolerance"], "oracle.tolerance");
        if (!(o.slack > 0.0)) fail("oracle.tolerance", "must be positive");
    }
    if (o.grid < 16) fail("oracle.grid", "must be at least 16");
    if (o.n_max < 1) fail("oracle.n_max", "must be positive");
    if (o.horizon < 1) fail("oracle.horizon", "must be positive");
}

std::string get_path(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a path string");
    return j.get<std::string>();
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    require_object(j, "top level", {"phi", "psi", "swap", "weight", "oracle", "output"});
    if (!j.contains("phi") || !j.contains("psi")) fail("top level", "missing phi or psi");
    if (!j.contains("weight")) fail("top level", "missing weight");

    RunConfig cfg;
    try {
        cfg.map.first = parse_map(j["phi"], "phi");
        cfg.map.second = parse_map(j["psi"], "psi");
    } catch (const config_error&) {
        throw;
    } catch (const error& e) {
        throw config_error(std::string("config: invalid map: ") + e.what());
    }
    if (j.contains("swap")) {
        if (!j["swap"].is_boolean()) fail("swap", "expected a boolean");
        cfg.map.swapped = j["swap"].get<bool>();
    }
    if (!j["weight"].is_string()) fail("weight", "expected an expression string");
    cfg.weight_text = j["weight"].get<std::string>();
    try {
        cfg.weight = parse_weight(cfg.weight_text);
    } catch (const error& e) {
        throw config_error(std::string("config: weight: ") + e.what());
    }
    if (j.contains("oracle")) parse_oracle(j["oracle"], cfg.oracle);
    if (j.contains("output")) {
        const json& out = j["output"];
        require_object(out, "output", {"json", "svg"});
        if (out.contains("json")) cfg.json_path = get_path(out["json"], "output.json");
        if (out.contains("svg")) cfg.svg_path = get_path(out["svg"], "output.svg");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace bispec
