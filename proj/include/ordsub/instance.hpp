/**
 * Instance files: a JSON format naming spaces, ordering cones, sets, mappings,
 * points, and the checks to run on them.  Parsing is strict — every rational
 * is an exact string or integer (decimal literals are rejected), every
 * reference must resolve, and every dimension is validated up front — so that
 * a parsed Instance can be executed without further error checking.
 */

#ifndef ORDSUB_INSTANCE_HPP
#define ORDSUB_INSTANCE_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ordsub/verifier.hpp"

namespace ordsub {

using Json = nlohmann::ordered_json;

/** One check to run, as named references into the instance tables. */
struct CheckSpec {
    std::string kind;
    std::string label;                        // defaults to `kind`
    std::map<std::string, std::string> refs;  // role (e.g. "f1", "cone") -> name

    bool operator==(const CheckSpec& o) const
    {
        return kind == o.kind && label == o.label && refs == o.refs;
    }
};

struct Instance {
    std::map<std::string, std::size_t> spaces;
    std::map<std::string, OrderCone> cones;
    std::map<std::string, PolySet> sets;
    std::map<std::string, PolyMap> maps;
    std::map<std::string, RatVector> points;
    std::vector<CheckSpec> checks;

    bool operator==(const Instance& o) const
    {
        return spaces == o.spaces && cones == o.cones && sets == o.sets && maps == o.maps &&
               points == o.points && checks == o.checks;
    }
};

namespace detail {

inline Rational rational_from_json(const Json& v, const std::string& where)
{
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const MalformedRational& e) {
            throw MalformedRational(where + ": " + e.what());
        }
    }
    if (v.is_number_float())
        throw MalformedRational(where + ": decimal literals are inexact; write \"" +
                                v.dump() + "\" as an exact string like \"3/2\"");
    if (v.is_number_integer()) return parse_rational(v.dump());
    throw MalformedRational(where + ": expected a rational string, got " + v.dump());
}

inline std::size_t dim_from_json(const Json& v, const std::map<std::string, std::size_t>& spaces,
                                 const std::string& where)
{
    if (v.is_number_unsigned()) return v.get<std::size_t>();
    if (v.is_number_integer())
        throw Error(where + ": dimension must be nonnegative, got " + v.dump());
    if (v.is_string()) {
        const std::string name = v.get<std::string>();
        auto it = spaces.find(name);
        if (it == spaces.end())
            throw UnresolvedReference(where + ": space '" + name + "' is not defined");
        return it->second;
    }
    throw Error(where + ": expected a dimension (integer or space name), got " + v.dump());
}

inline RatVector vector_from_json(const Json& v, const std::string& where)
{
    if (!v.is_array()) throw Error(where + ": expected an array of rationals");
    RatVector out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(rational_from_json(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

/** One constraint row [a1, ..., an, b] meaning a.x <= b (or = b for "eq"). */
inline LinearConstraint row_from_json(const Json& v, std::size_t dim, const std::string& where)
{
    RatVector row = vector_from_json(v, where);
    if (row.size() != dim + 1)
        throw DimensionMismatch(where + ": row has " + std::to_string(row.size()) +
                                " entries, expected " + std::to_string(dim + 1) +
                                " (coefficients then offset)");
    LinearConstraint c;
    c.offset = row.back();
    row.pop_back();
    c.normal = std::move(row);
    return c;
}

inline void rows_from_json(const Json& obj, const char* key, std::size_t dim,
                           const std::string& where, std::vector<LinearConstraint>& out)
{
    if (!obj.contains(key)) return;
    const Json& rows = obj.at(key);
    if (!rows.is_array()) throw Error(where + "." + key + ": expected an array of rows");
    for (std::size_t i = 0; i < rows.size(); ++i)
        out.push_back(row_from_json(rows[i], dim, where + "." + key + "[" + std::to_string(i) + "]"));
}

inline void reject_unknown_keys(const Json& obj, const std::vector<std::string>& allowed,
                                const std::string& where)
{
    for (const auto& item : obj.items()) {
        const std::string& key = item.key();
        if (key == "strict" || key == "strict_ineq")
            throw OpenSetRejected(where + ": strict inequalities describe open sets, "
                                          "which are not representable here");
        bool known = false;
        for (const auto& a : allowed)
            if (key == a) known = true;
        if (!known) throw Error(where + ": unknown key '" + key + "'");
    }
}

inline Polyhedron polyhedron_from_json(const Json& v, std::size_t dim, const std::string& where)
{
    if (!v.is_object()) throw Error(where + ": expected a constraint object");
    reject_unknown_keys(v, {"ineq", "eq"}, where);
    HRep h;
    rows_from_json(v, "ineq", dim, where, h.ineqs);
    rows_from_json(v, "eq", dim, where, h.eqs);
    return Polyhedron::from_hrep(dim, h);
}

inline PolySet polyset_from_json(const Json& v, std::size_t dim, const std::string& where)
{
    if (!v.is_object()) throw Error(where + ": expected an object with \"pieces\"");
    reject_unknown_keys(v, {"pieces"}, where);
    std::vector<Polyhedron> pieces;
    if (v.contains("pieces")) {
        const Json& arr = v.at("pieces");
        if (!arr.is_array()) throw Error(where + ".pieces: expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i)
            pieces.push_back(
                polyhedron_from_json(arr[i], dim, where + ".pieces[" + std::to_string(i) + "]"));
    }
    return PolySet::from_pieces(dim, std::move(pieces));
}

/** Role keys a check of the given kind must carry (besides "kind"/"label"). */
inline const std::vector<std::string>& check_roles(const std::string& kind)
{
    static const std::map<std::string, std::vector<std::string>> table = {
        {"sum_rule", {"f1", "f2", "cone", "point"}},
        {"epi_sum_identity", {"f1", "f2", "cone"}},
        {"restricted_sum", {"map", "set", "cone", "point"}},
        {"indicator_identity", {"set", "cone", "point"}},
        {"chain_rule", {"g", "f", "inner_cone", "outer_cone", "point"}},
        {"epi_chain_identity", {"g", "f", "inner_cone", "outer_cone"}},
        {"single_valued_chain", {"g", "f", "inner_cone", "outer_cone", "point"}},
        {"wellposed_chain", {"g", "f", "inner_cone", "outer_cone", "point"}},
    };
    auto it = table.find(kind);
    if (it == table.end()) throw Error("unknown check kind '" + kind + "'");
    return it->second;
}

inline RatVector slice(const RatVector& v, std::size_t from, std::size_t count)
{
    return RatVector(v.begin() + static_cast<std::ptrdiff_t>(from),
                     v.begin() + static_cast<std::ptrdiff_t>(from + count));
}

}  // namespace detail

inline const PolyMap& get_map(const Instance& inst, const std::string& name)
{
    auto it = inst.maps.find(name);
    if (it == inst.maps.end()) throw UnresolvedReference("map '" + name + "' is not defined");
    return it->second;
}

inline const PolySet& get_set(const Instance& inst, const std::string& name)
{
    auto it = inst.sets.find(name);
    if (it == inst.sets.end()) throw UnresolvedReference("set '" + name + "' is not defined");
    return it->second;
}

inline const OrderCone& get_cone(const Instance& inst, const std::string& name)
{
    auto it = inst.cones.find(name);
    if (it == inst.cones.end()) throw UnresolvedReference("cone '" + name + "' is not defined");
    return it->second;
}

inline const RatVector& get_point(const Instance& inst, const std::string& name)
{
    auto it = inst.points.find(name);
    if (it == inst.points.end()) throw UnresolvedReference("point '" + name + "' is not defined");
    return it->second;
}

namespace detail {

inline const std::string& role(const CheckSpec& spec, const std::string& key)
{
    auto it = spec.refs.find(key);
    if (it == spec.refs.end())
        throw Error("check '" + spec.label + "': missing reference '" + key + "'");
    return it->second;
}

inline void require_point_dim(const RatVector& p, std::size_t dim, const CheckSpec& spec)
{
    if (p.size() != dim)
        throw DimensionMismatch("check '" + spec.label + "': point has dimension " +
                                std::to_string(p.size()) + ", expected " + std::to_string(dim));
}

/** Resolves every reference of a check and validates all dimensions. */
inline void validate_check(const Instance& inst, const CheckSpec& spec)
{
    auto mismatch = [&](const std::string& what) {
        throw DimensionMismatch("check '" + spec.label + "': " + what);
    };
    if (spec.kind == "sum_rule" || spec.kind == "epi_sum_identity") {
        const PolyMap& f1 = get_map(inst, role(spec, "f1"));
        const PolyMap& f2 = get_map(inst, role(spec, "f2"));
        const OrderCone& cone = get_cone(inst, role(spec, "cone"));
        if (f1.dom_dim() != f2.dom_dim() || f1.rng_dim() != f2.rng_dim())
            mismatch("summand mapping spaces differ");
        if (cone.dim() != f1.rng_dim()) mismatch("ordering cone lives in the wrong space");
        if (spec.kind == "sum_rule")
            require_point_dim(get_point(inst, role(spec, "point")),
                              f1.dom_dim() + f1.rng_dim(), spec);
    } else if (spec.kind == "restricted_sum") {
        const PolyMap& f = get_map(inst, role(spec, "map"));
        const PolySet& omega = get_set(inst, role(spec, "set"));
        const OrderCone& cone = get_cone(inst, role(spec, "cone"));
        if (omega.dim() != f.dom_dim()) mismatch("restriction set lives in the wrong space");
        if (cone.dim() != f.rng_dim()) mismatch("ordering cone lives in the wrong space");
        require_point_dim(get_point(inst, role(spec, "point")), f.dom_dim() + f.rng_dim(), spec);
    } else if (spec.kind == "indicator_identity") {
        const PolySet& omega = get_set(inst, role(spec, "set"));
        get_cone(inst, role(spec, "cone"));
        require_point_dim(get_point(inst, role(spec, "point")), omega.dim(), spec);
    } else {
        const PolyMap& g = get_map(inst, role(spec, "g"));
        const PolyMap& f = get_map(inst, role(spec, "f"));
        const OrderCone& inner = get_cone(inst, role(spec, "inner_cone"));
        const OrderCone& outer = get_cone(inst, role(spec, "outer_cone"));
        if (g.rng_dim() != f.dom_dim()) mismatch("intermediate spaces differ");
        if (inner.dim() != g.rng_dim()) mismatch("inner cone lives in the wrong space");
        if (outer.dim() != f.rng_dim()) mismatch("outer cone lives in the wrong space");
        if (spec.kind == "wellposed_chain")
            require_point_dim(get_point(inst, role(spec, "point")),
                              g.dom_dim() + g.rng_dim() + f.rng_dim(), spec);
        else if (spec.kind != "epi_chain_identity")
            require_point_dim(get_point(inst, role(spec, "point")),
                              g.dom_dim() + f.rng_dim(), spec);
    }
}

inline CheckSpec check_from_json(const Json& v, const std::string& where)
{
    if (!v.is_object()) throw Error(where + ": expected a check object");
    if (!v.contains("kind") || !v.at("kind").is_string())
        throw Error(where + ": missing string key 'kind'");
    CheckSpec spec;
    spec.kind = v.at("kind").get<std::string>();
    const std::vector<std::string>& roles = check_roles(spec.kind);

    std::vector<std::string> allowed = {"kind", "label"};
    allowed.insert(allowed.end(), roles.begin(), roles.end());
    reject_unknown_keys(v, allowed, where);

    if (v.contains("label") && !v.at("label").is_string())
        throw Error(where + ".label: expected a string");
    spec.label = v.contains("label") ? v.at("label").get<std::string>() : spec.kind;
    for (const auto& key : roles) {
        if (!v.contains(key)) throw Error(where + ": missing reference '" + key + "'");
        if (!v.at(key).is_string()) throw Error(where + "." + key + ": expected a name");
        spec.refs[key] = v.at(key).get<std::string>();
    }
    return spec;
}

}  // namespace detail

inline Instance parse_instance(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw Error(std::string("instance: ") + e.what());
    }
    if (!j.is_object()) throw Error("instance: top level must be an object");
    detail::reject_unknown_keys(j, {"spaces", "cones", "sets", "maps", "points", "checks"},
                                "instance");

    Instance inst;
    if (j.contains("spaces")) {
        const Json& sec = j.at("spaces");
        if (!sec.is_object()) throw Error("spaces: expected an object");
        for (const auto& item : sec.items()) {
            const std::string where = "spaces." + item.key();
            if (!item.value().is_number_unsigned())
                throw Error(where + ": expected a nonnegative integer dimension");
            inst.spaces.emplace(item.key(), item.value().get<std::size_t>());
        }
    }
    if (j.contains("cones")) {
        const Json& sec = j.at("cones");
        if (!sec.is_object()) throw Error("cones: expected an object");
        for (const auto& item : sec.items()) {
            const std::string where = "cones." + item.key();
            const Json& v = item.value();
            if (!v.is_object() || !v.contains("dim"))
                throw Error(where + ": expected an object with 'dim'");
            detail::reject_unknown_keys(v, {"dim", "ineq", "eq"}, where);
            std::size_t dim = detail::dim_from_json(v.at("dim"), inst.spaces, where + ".dim");
            HRep h;
            detail::rows_from_json(v, "ineq", dim, where, h.ineqs);
            detail::rows_from_json(v, "eq", dim, where, h.eqs);
            try {
                inst.cones.emplace(item.key(), OrderCone(Polyhedron::from_hrep(dim, h)));
            } catch (const NotACone& e) {
                throw NotACone(where + ": " + e.what());
            }
        }
    }
    if (j.contains("sets")) {
        const Json& sec = j.at("sets");
        if (!sec.is_object()) throw Error("sets: expected an object");
        for (const auto& item : sec.items()) {
            const std::string where = "sets." + item.key();
            const Json& v = item.value();
            if (!v.is_object() || !v.contains("dim"))
                throw Error(where + ": expected an object with 'dim' and 'pieces'");
            std::size_t dim = detail::dim_from_json(v.at("dim"), inst.spaces, where + ".dim");
            Json body = v;
            body.erase("dim");
            inst.sets.emplace(item.key(), detail::polyset_from_json(body, dim, where));
        }
    }
    if (j.contains("maps")) {
        const Json& sec = j.at("maps");
        if (!sec.is_object()) throw Error("maps: expected an object");
        for (const auto& item : sec.items()) {
            const std::string where = "maps." + item.key();
            const Json& v = item.value();
            if (!v.is_object() || !v.contains("dom_dim") || !v.contains("rng_dim") ||
                !v.contains("graph"))
                throw Error(where + ": expected an object with 'dom_dim', 'rng_dim', 'graph'");
            detail::reject_unknown_keys(v, {"dom_dim", "rng_dim", "graph"}, where);
            std::size_t dom =
                detail::dim_from_json(v.at("dom_dim"), inst.spaces, where + ".dom_dim");
            std::size_t rng =
                detail::dim_from_json(v.at("rng_dim"), inst.spaces, where + ".rng_dim");
            PolySet graph =
                detail::polyset_from_json(v.at("graph"), dom + rng, where + ".graph");
            inst.maps.emplace(item.key(), PolyMap(dom, rng, std::move(graph)));
        }
    }
    if (j.contains("points")) {
        const Json& sec = j.at("points");
        if (!sec.is_object()) throw Error("points: expected an object");
        for (const auto& item : sec.items())
            inst.points.emplace(item.key(),
                                detail::vector_from_json(item.value(), "points." + item.key()));
    }
    if (j.contains("checks")) {
        const Json& sec = j.at("checks");
        if (!sec.is_array()) throw Error("checks: expected an array");
        for (std::size_t i = 0; i < sec.size(); ++i) {
            CheckSpec spec =
                detail::check_from_json(sec[i], "checks[" + std::to_string(i) + "]");
            detail::validate_check(inst, spec);
            inst.checks.push_back(std::move(spec));
        }
    }
    return inst;
}

/** Executes one (already validated) check and returns its report. */
inline CheckReport run_check(const Instance& inst, const CheckSpec& spec)
{
    using detail::role;
    using detail::slice;
    if (spec.kind == "sum_rule" || spec.kind == "epi_sum_identity") {
        const PolyMap& f1 = get_map(inst, role(spec, "f1"));
        const PolyMap& f2 = get_map(inst, role(spec, "f2"));
        const OrderCone& cone = get_cone(inst, role(spec, "cone"));
        if (spec.kind == "epi_sum_identity") return check_epi_sum_identity(f1, f2, cone);
        const RatVector& p = get_point(inst, role(spec, "point"));
        return check_sum_rule(f1, f2, cone, slice(p, 0, f1.dom_dim()),
                              slice(p, f1.dom_dim(), f1.rng_dim()));
    }
    if (spec.kind == "restricted_sum") {
        const PolyMap& f = get_map(inst, role(spec, "map"));
        const RatVector& p = get_point(inst, role(spec, "point"));
        return check_restricted_sum(f, get_set(inst, role(spec, "set")),
                                    get_cone(inst, role(spec, "cone")),
                                    slice(p, 0, f.dom_dim()),
                                    slice(p, f.dom_dim(), f.rng_dim()));
    }
    if (spec.kind == "indicator_identity")
        return check_indicator_identity(get_set(inst, role(spec, "set")),
                                        get_cone(inst, role(spec, "cone")),
                                        get_point(inst, role(spec, "point")));

    const PolyMap& g = get_map(inst, role(spec, "g"));
    const PolyMap& f = get_map(inst, role(spec, "f"));
    const OrderCone& inner = get_cone(inst, role(spec, "inner_cone"));
    const OrderCone& outer = get_cone(inst, role(spec, "outer_cone"));
    if (spec.kind == "epi_chain_identity") return check_epi_chain_identity(g, f, inner, outer);
    const RatVector& p = get_point(inst, role(spec, "point"));
    if (spec.kind == "wellposed_chain")
        return check_wellposed_chain(g, f, inner, outer, slice(p, 0, g.dom_dim()),
                                     slice(p, g.dom_dim(), g.rng_dim()),
                                     slice(p, g.dom_dim() + g.rng_dim(), f.rng_dim()));
    if (spec.kind == "single_valued_chain")
        return check_single_valued_chain_equality(g, f, inner, outer, slice(p, 0, g.dom_dim()),
                                                  slice(p, g.dom_dim(), f.rng_dim()));
    return check_chain_rule(g, f, inner, outer, slice(p, 0, g.dom_dim()),
                            slice(p, g.dom_dim(), f.rng_dim()));
}

// ---------------------------------------------------------------------------
// Canonical instance serialization (round-trips through parse_instance).
// ---------------------------------------------------------------------------

namespace detail {

inline Json json_of_rational_vector(const RatVector& v)
{
    Json arr = Json::array();
    for (const auto& q : v) arr.push_back(format_rational(q));
    return arr;
}

inline Json json_of_rows(const std::vector<LinearConstraint>& rows)
{
    Json arr = Json::array();
    for (const auto& c : rows) {
        Json row = json_of_rational_vector(c.normal);
        row.push_back(format_rational(c.offset));
        arr.push_back(std::move(row));
    }
    return arr;
}

inline Json json_of_hrep(const Polyhedron& p)
{
    Json obj = Json::object();
    if (!p.hrep().ineqs.empty()) obj["ineq"] = json_of_rows(p.hrep().ineqs);
    if (!p.hrep().eqs.empty()) obj["eq"] = json_of_rows(p.hrep().eqs);
    return obj;
}

inline Json json_of_pieces(const PolySet& s)
{
    Json arr = Json::array();
    for (const auto& p : s.pieces()) arr.push_back(json_of_hrep(p));
    return arr;
}

}  // namespace detail

inline Json json_of_instance(const Instance& inst)
{
    Json j = Json::object();
    if (!inst.spaces.empty()) {
        Json sec = Json::object();
        for (const auto& [name, dim] : inst.spaces) sec[name] = dim;
        j["spaces"] = std::move(sec);
    }
    if (!inst.cones.empty()) {
        Json sec = Json::object();
        for (const auto& [name, cone] : inst.cones) {
            Json obj = Json::object();
            obj["dim"] = cone.dim();
            Json h = detail::json_of_hrep(cone.cone());
            obj.update(h);
            sec[name] = std::move(obj);
        }
        j["cones"] = std::move(sec);
    }
    if (!inst.sets.empty()) {
        Json sec = Json::object();
        for (const auto& [name, set] : inst.sets) {
            Json obj = Json::object();
            obj["dim"] = set.dim();
            obj["pieces"] = detail::json_of_pieces(set);
            sec[name] = std::move(obj);
        }
        j["sets"] = std::move(sec);
    }
    if (!inst.maps.empty()) {
        Json sec = Json::object();
        for (const auto& [name, map] : inst.maps) {
            Json obj = Json::object();
            obj["dom_dim"] = map.dom_dim();
            obj["rng_dim"] = map.rng_dim();
            Json graph = Json::object();
            graph["pieces"] = detail::json_of_pieces(map.graph());
            obj["graph"] = std::move(graph);
            sec[name] = std::move(obj);
        }
        j["maps"] = std::move(sec);
    }
    if (!inst.points.empty()) {
        Json sec = Json::object();
        for (const auto& [name, p] : inst.points) sec[name] = detail::json_of_rational_vector(p);
        j["points"] = std::move(sec);
    }
    if (!inst.checks.empty()) {
        Json arr = Json::array();
        for (const auto& spec : inst.checks) {
            Json obj = Json::object();
            obj["kind"] = spec.kind;
            if (spec.label != spec.kind) obj["label"] = spec.label;
            for (const auto& key : detail::check_roles(spec.kind)) obj[key] = spec.refs.at(key);
            arr.push_back(std::move(obj));
        }
        j["checks"] = std::move(arr);
    }
    return j;
}

inline std::string serialize_instance(const Instance& inst)
{
    return json_of_instance(inst).dump(2) + "\n";
}

}  // namespace ordsub

#endif  // ORDSUB_INSTANCE_HPP
