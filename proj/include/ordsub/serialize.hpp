/**
 * Canonical report output.  Every result set is emitted in both
 * representations — constraint rows and generators — with exact rational
 * strings, in the canonical piece order, so that reports are byte-identical
 * across runs and platforms.  Timing is deliberately excluded from the JSON
 * forms for the same reason.
 */

#ifndef ORDSUB_SERIALIZE_HPP
#define ORDSUB_SERIALIZE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "ordsub/instance.hpp"
#include "ordsub/oracle.hpp"

namespace ordsub {

inline Json json_of_piece(const Polyhedron& p)
{
    Json obj = detail::json_of_hrep(p);
    Json vertices = Json::array(), rays = Json::array(), lines = Json::array();
    for (const auto& v : p.vrep().vertices) vertices.push_back(detail::json_of_rational_vector(v));
    for (const auto& r : p.vrep().rays) rays.push_back(detail::json_of_rational_vector(r));
    for (const auto& l : p.vrep().lines) lines.push_back(detail::json_of_rational_vector(l));
    if (!vertices.empty()) obj["vertices"] = std::move(vertices);
    if (!rays.empty()) obj["rays"] = std::move(rays);
    if (!lines.empty()) obj["lines"] = std::move(lines);
    return obj;
}

inline Json json_of_polyset(const PolySet& s)
{
    Json obj = Json::object();
    obj["dim"] = s.dim();
    Json pieces = Json::array();
    for (const auto& p : s.pieces()) pieces.push_back(json_of_piece(p));
    obj["pieces"] = std::move(pieces);
    return obj;
}

inline Json json_of_report(const CheckReport& report, const std::string& label, std::size_t index)
{
    Json obj = Json::object();
    obj["index"] = index;
    obj["label"] = label;
    obj["check"] = report.check_id;
    obj["verdict"] = verdict_name(report.verdict);
    Json hyps = Json::array();
    for (const auto& h : report.hypotheses) {
        Json hj = Json::object();
        hj["name"] = h.name;
        hj["status"] = hyp_status_name(h.status);
        if (!h.detail.empty()) hj["detail"] = h.detail;
        hyps.push_back(std::move(hj));
    }
    obj["hypotheses"] = std::move(hyps);
    obj["lhs"] = json_of_polyset(report.lhs);
    obj["rhs"] = json_of_polyset(report.rhs);
    Json wits = Json::array();
    for (const auto& w : report.witnesses) wits.push_back(detail::json_of_rational_vector(w));
    obj["witnesses"] = std::move(wits);
    if (report.singular_verdict) {
        Json sing = Json::object();
        sing["verdict"] = verdict_name(*report.singular_verdict);
        if (report.singular_lhs) sing["lhs"] = json_of_polyset(*report.singular_lhs);
        if (report.singular_rhs) sing["rhs"] = json_of_polyset(*report.singular_rhs);
        obj["singular"] = std::move(sing);
    }
    if (!report.notes.empty()) {
        Json notes = Json::object();
        for (const auto& [key, value] : report.notes) notes[key] = value;
        obj["notes"] = std::move(notes);
    }
    return obj;
}

inline Json json_of_oracle_report(const OracleCompareReport& report, long resolution,
                                  std::size_t samples)
{
    Json obj = Json::object();
    obj["resolution"] = resolution;
    obj["samples"] = samples;
    obj["sound"] = report.sound;
    Json unsound = Json::array();
    for (const auto& v : report.unsound) unsound.push_back(detail::json_of_rational_vector(v));
    obj["unsound-samples"] = std::move(unsound);
    obj["generators-total"] = report.generators_total;
    obj["generators-covered"] = report.generators_covered;
    obj["coverage"] = format_rational(report.coverage);
    return obj;
}

// ---------------------------------------------------------------------------
// Plain-text rendering.
// ---------------------------------------------------------------------------

/** "conv{(0), (1)} + cone{(1, 1)} + span{(0, 1)}", with trivial parts elided. */
inline std::string format_piece(const Polyhedron& p)
{
    if (p.is_empty()) return "(empty)";
    auto list = [](const std::vector<RatVector>& pts) {
        std::string out = "{";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) out += ", ";
            out += detail::format_point(pts[i]);
        }
        return out + "}";
    };
    const VRep& v = p.vrep();
    const bool apex_only = v.vertices.size() == 1 && is_zero(v.vertices[0]) &&
                           !(v.rays.empty() && v.lines.empty());
    std::string out;
    if (!apex_only) out += (v.vertices.size() == 1 ? "" : "conv") + list(v.vertices);
    if (!v.rays.empty()) out += (out.empty() ? "" : " + ") + ("cone" + list(v.rays));
    if (!v.lines.empty()) out += (out.empty() ? "" : " + ") + ("span" + list(v.lines));
    return out;
}

inline std::string format_polyset(const PolySet& s)
{
    if (s.is_empty()) return "(empty)";
    std::string out;
    for (std::size_t i = 0; i < s.pieces().size(); ++i) {
        if (i) out += "  u  ";
        out += format_piece(s.pieces()[i]);
    }
    return out;
}

inline std::string format_report_text(const CheckReport& report, const std::string& label,
                                      std::size_t index)
{
    std::string out = "[" + std::to_string(index) + "] " + label;
    if (label != report.check_id) out += " (" + report.check_id + ")";
    out += ": " + std::string(verdict_name(report.verdict)) + "\n";
    for (const auto& h : report.hypotheses) {
        out += "    hypothesis " + h.name + ": " + hyp_status_name(h.status);
        if (!h.detail.empty()) out += " -- " + h.detail;
        out += "\n";
    }
    out += "    lhs = " + format_polyset(report.lhs) + "\n";
    out += "    rhs = " + format_polyset(report.rhs) + "\n";
    if (report.singular_verdict) {
        out += "    singular rule: " + std::string(verdict_name(*report.singular_verdict));
        if (report.singular_lhs) out += "; lhs = " + format_polyset(*report.singular_lhs);
        if (report.singular_rhs) out += "; rhs = " + format_polyset(*report.singular_rhs);
        out += "\n";
    }
    for (const auto& w : report.witnesses)
        out += "    witness: " + detail::format_point(w) + "\n";
    for (const auto& [key, value] : report.notes) out += "    note " + key + ": " + value + "\n";
    return out;
}

}  // namespace ordsub

#endif  // ORDSUB_SERIALIZE_HPP
