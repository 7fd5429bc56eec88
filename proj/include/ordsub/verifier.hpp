/**
 * Executable renditions of the calculus rules for ordered set-valued
 * mappings: every check computes its hypotheses, left-hand side and
 * right-hand side exactly and returns a structured verdict with witnesses.
 *
 * A violated hypothesis never aborts a check: both sides are still computed
 * and compared, the report simply records that the conclusion is not
 * guaranteed.  Counterexample hunting is a first-class use case.
 */

#ifndef ORDSUB_VERIFIER_HPP
#define ORDSUB_VERIFIER_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordsub/subcalc.hpp"

namespace ordsub {

enum class HypStatus { verified, violated, heuristic, assumed_finite_dim };

inline const char* hyp_status_name(HypStatus s)
{
    switch (s) {
        case HypStatus::verified: return "verified";
        case HypStatus::violated: return "violated";
        case HypStatus::heuristic: return "heuristic";
        default: return "assumed-finite-dim";
    }
}

struct Hypothesis {
    std::string name;
    HypStatus status = HypStatus::verified;
    std::string detail;
};

enum class Verdict { inclusion_holds, equality_holds, inclusion_fails, vacuous };

inline const char* verdict_name(Verdict v)
{
    switch (v) {
        case Verdict::inclusion_holds: return "inclusion-holds";
        case Verdict::equality_holds: return "equality-holds";
        case Verdict::inclusion_fails: return "inclusion-fails";
        default: return "vacuous";
    }
}

struct CheckReport {
    std::string check_id;
    std::vector<Hypothesis> hypotheses;
    PolySet lhs;
    PolySet rhs;
    Verdict verdict = Verdict::vacuous;
    std::vector<RatVector> witnesses;  // strictness or failure certificates
    // Secondary conclusion (the singular rule) where a check has one.
    std::optional<PolySet> singular_lhs;
    std::optional<PolySet> singular_rhs;
    std::optional<Verdict> singular_verdict;
    // Auxiliary verified facts, as (name, value) pairs.
    std::vector<std::pair<std::string, std::string>> notes;
    double timing_seconds = 0.0;  // omitted from canonical serializations
};

struct QualificationStatus {
    bool intersects_trivially = true;
    std::optional<RatVector> witness;  // nonzero common point when violated
};

namespace detail {

inline std::string format_point(const RatVector& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_rational(v[i]);
    }
    return out + ")";
}

/** Vertices plus one relative-interior representative per piece. */
inline std::vector<RatVector> decomposition_points(const PolySet& s)
{
    std::vector<RatVector> pts;
    for (const auto& p : s.pieces()) {
        pts.push_back(p.relint_point());
        for (const auto& v : p.vrep().vertices) pts.push_back(v);
    }
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

/** First nonzero generator of a cone-union, if any: certifies K != {0}. */
inline std::optional<RatVector> nonzero_generator(const PolySet& cones)
{
    for (const auto& piece : cones.pieces()) {
        if (!piece.vrep().rays.empty()) return piece.vrep().rays.front();
        if (!piece.vrep().lines.empty()) return piece.vrep().lines.front();
    }
    return std::nullopt;
}

/** Trivial-intersection test K1 ∩ (-K2) = {0} for two cone unions. */
inline QualificationStatus cones_intersect_trivially(const PolySet& k1, const PolySet& k2)
{
    RatMatrix neg(k2.dim(), k2.dim());
    for (std::size_t j = 0; j < k2.dim(); ++j) neg.at(j, j) = -1;
    PolySet nk2 = affine_image_set(k2, neg, RatVector(k2.dim(), Rational(0)));
    PolySet common = intersect_sets(k1, nk2);
    if (auto w = nonzero_generator(common)) return {false, std::move(w)};
    return {true, std::nullopt};
}

struct InclusionOutcome {
    Verdict verdict = Verdict::vacuous;
    std::vector<RatVector> witnesses;
};

/** Compare lhs against rhs; witnesses certify failure or strictness. */
inline InclusionOutcome judge_inclusion(const PolySet& lhs, const PolySet& rhs)
{
    if (lhs.is_empty() && rhs.is_empty()) return {Verdict::equality_holds, {}};
    if (lhs.is_empty()) return {Verdict::vacuous, {}};
    SubsetResult forward = subset(lhs, rhs);
    if (!forward.holds) {
        InclusionOutcome out{Verdict::inclusion_fails, {}};
        if (forward.witness) out.witnesses.push_back(*forward.witness);
        return out;
    }
    SubsetResult backward = subset(rhs, lhs);
    if (backward.holds) return {Verdict::equality_holds, {}};
    InclusionOutcome out{Verdict::inclusion_holds, {}};
    if (backward.witness) out.witnesses.push_back(*backward.witness);  // strictness point
    return out;
}

/** Fold a secondary verdict into the primary one. */
inline Verdict combine_verdicts(Verdict primary, Verdict secondary)
{
    if (primary == Verdict::inclusion_fails || secondary == Verdict::inclusion_fails)
        return Verdict::inclusion_fails;
    if (primary == Verdict::vacuous) return secondary;
    if (secondary == Verdict::vacuous) return primary;
    if (primary == Verdict::equality_holds && secondary == Verdict::equality_holds)
        return Verdict::equality_holds;
    return Verdict::inclusion_holds;
}

class StopWatch {
  public:
    StopWatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/** Boundedness heuristic for an auxiliary decomposition set: certified
 *  bounded when every piece has a trivial recession cone. */
inline Hypothesis inner_semicompact_heuristic(const PolySet& aux)
{
    if (aux.is_empty())
        return {"inner-semicompactness", HypStatus::heuristic, "auxiliary set empty (vacuous)"};
    for (const auto& p : aux.pieces())
        if (!p.vrep().rays.empty() || !p.vrep().lines.empty())
            return {"inner-semicompactness", HypStatus::heuristic,
                    "unknown: auxiliary set has unbounded directions"};
    return {"inner-semicompactness", HypStatus::verified,
            "auxiliary set bounded, hence inner semicompact"};
}

/** Trivial-intersection qualification for sums at a decomposition pair. */
inline QualificationStatus check_qualification_sum(const PolyMap& f1, const PolyMap& f2,
                                                   const OrderCone& theta, const RatVector& x,
                                                   const RatVector& z1, const RatVector& z2)
{
    PolySet k1 = singular_subdiff(f1, theta, x, z1, ConeKind::limiting).set;
    PolySet k2 = singular_subdiff(f2, theta, x, z2, ConeKind::limiting).set;
    return detail::cones_intersect_trivially(k1, k2);
}

/**
 * Sum rule at (x̄,z̄): the subdifferential of F1+F2 against the union over
 * decompositions z̄ = z̄1+z̄2 of the sums of the parts' subdifferentials, for
 * both the plain and the singular subdifferential.
 */
inline CheckReport check_sum_rule(const PolyMap& f1, const PolyMap& f2, const OrderCone& theta,
                                  const RatVector& x, const RatVector& z)
{
    detail::StopWatch watch;
    const std::size_t n = f1.dom_dim(), m = f1.rng_dim();
    PolyMap sum = sum_map(f1, f2);
    PolyMap esum = epi_map(sum, theta);
    detail::require_in_epigraph(esum, x, z);

    CheckReport report;
    report.check_id = "sum_rule";

    PolySet s_e = s_e_eval(f1, f2, theta, x, z);
    std::vector<RatVector> decomps = detail::decomposition_points(s_e);

    bool qualification_ok = true;
    std::optional<RatVector> qual_witness;
    PolySet rhs_plain = PolySet::empty_set(n);
    PolySet rhs_sing = PolySet::empty_set(n);
    for (const auto& pt : decomps) {
        RatVector z1(pt.begin(), pt.begin() + static_cast<std::ptrdiff_t>(m));
        RatVector z2(pt.begin() + static_cast<std::ptrdiff_t>(m), pt.end());
        QualificationStatus q = check_qualification_sum(f1, f2, theta, x, z1, z2);
        if (!q.intersects_trivially) {
            qualification_ok = false;
            if (!qual_witness) qual_witness = q.witness;
        }
        rhs_plain = union_sets(
            rhs_plain,
            minkowski_sum_sets(subdiff(f1, theta, x, z1, ConeKind::limiting).set,
                               subdiff(f2, theta, x, z2, ConeKind::limiting).set));
        rhs_sing = union_sets(
            rhs_sing,
            minkowski_sum_sets(singular_subdiff(f1, theta, x, z1, ConeKind::limiting).set,
                               singular_subdiff(f2, theta, x, z2, ConeKind::limiting).set));
    }

    report.hypotheses.push_back(
        {"qualification", qualification_ok ? HypStatus::verified : HypStatus::violated,
         qualification_ok
             ? "singular subdifferentials intersect trivially at every decomposition"
             : "nonzero common singular direction " + detail::format_point(*qual_witness) +
                   "; conclusion not guaranteed by the rule"});
    report.hypotheses.push_back(
        {"epiclosedness", HypStatus::assumed_finite_dim,
         "graphs are finite unions of closed polyhedra; closedness is automatic"});
    report.hypotheses.push_back(
        {"partial-normal-compactness", HypStatus::assumed_finite_dim,
         "automatic in finite dimensions"});
    report.hypotheses.push_back(inner_semicompact_heuristic(s_e));

    report.lhs = subdiff(sum, theta, x, z, ConeKind::limiting).set;
    report.rhs = std::move(rhs_plain);
    detail::InclusionOutcome plain = detail::judge_inclusion(report.lhs, report.rhs);

    report.singular_lhs = singular_subdiff(sum, theta, x, z, ConeKind::limiting).set;
    report.singular_rhs = std::move(rhs_sing);
    detail::InclusionOutcome sing = detail::judge_inclusion(*report.singular_lhs,
                                                            *report.singular_rhs);

    report.verdict = detail::combine_verdicts(plain.verdict, sing.verdict);
    report.singular_verdict = sing.verdict;
    for (auto& w : plain.witnesses) report.witnesses.push_back(std::move(w));
    for (auto& w : sing.witnesses) report.witnesses.push_back(std::move(w));
    report.notes.emplace_back("plain-rule", verdict_name(plain.verdict));
    report.notes.emplace_back("singular-rule", verdict_name(sing.verdict));
    report.notes.emplace_back("decomposition-points", std::to_string(decomps.size()));
    report.timing_seconds = watch.seconds();
    return report;
}

/** Graph-level identity: the epigraphical mapping of a sum equals the sum of
 *  the epigraphical mappings. */
inline CheckReport check_epi_sum_identity(const PolyMap& f1, const PolyMap& f2,
                                          const OrderCone& theta)
{
    detail::StopWatch watch;
    CheckReport report;
    report.check_id = "epi_sum_identity";
    report.lhs = epi_map(sum_map(f1, f2), theta).graph();
    report.rhs = sum_map(epi_map(f1, theta), epi_map(f2, theta)).graph();
    detail::InclusionOutcome out = detail::judge_inclusion(report.lhs, report.rhs);
    report.verdict = out.verdict;
    report.witnesses = std::move(out.witnesses);
    report.timing_seconds = watch.seconds();
    return report;
}

/** The singular subdifferential of an indicator mapping is the limiting
 *  normal cone of the underlying set. */
inline CheckReport check_indicator_identity(const PolySet& omega, const OrderCone& theta,
                                            const RatVector& x)
{
    detail::StopWatch watch;
    if (!omega.member(x)) throw PointNotInSet("check_indicator_identity: point not in set");
    CheckReport report;
    report.check_id = "indicator_identity";
    PolyMap ind = indicator_map(omega, theta.dim());
    RatVector zero(theta.dim(), Rational(0));
    report.lhs = singular_subdiff(ind, theta, x, zero, ConeKind::limiting).set;
    report.rhs = limiting_normal_cone(omega, x).set();
    detail::InclusionOutcome out = detail::judge_inclusion(report.lhs, report.rhs);
    report.verdict = out.verdict;
    report.witnesses = std::move(out.witnesses);
    report.timing_seconds = watch.seconds();
    return report;
}

/**
 * Restricted sum rule: subdifferentials of F restricted to Ω against
 * subdifferentials of F plus normal cones of Ω, with the regular-kind
 * reverse inclusion and the equality branch under regularity.
 */
inline CheckReport check_restricted_sum(const PolyMap& f, const PolySet& omega,
                                        const OrderCone& theta, const RatVector& x,
                                        const RatVector& z)
{
    detail::StopWatch watch;
    if (!omega.member(x)) throw PointNotInSet("check_restricted_sum: base point not in set");
    PolyMap ef = epi_map(f, theta);
    detail::require_in_epigraph(ef, x, z);
    PolyMap f_omega = restrict(f, omega);

    CheckReport report;
    report.check_id = "restricted_sum";

    // Qualification: singular subdifferential of F against the normal cone
    // of the restriction set.
    PolySet k1 = singular_subdiff(f, theta, x, z, ConeKind::limiting).set;
    PolySet k2 = limiting_normal_cone(omega, x).set();
    QualificationStatus qual = detail::cones_intersect_trivially(k1, k2);
    report.hypotheses.push_back(
        {"qualification", qual.intersects_trivially ? HypStatus::verified : HypStatus::violated,
         qual.intersects_trivially
             ? "singular subdifferential meets the negated normal cone only at 0"
             : "nonzero common direction " + detail::format_point(*qual.witness) +
                   "; conclusion not guaranteed by the rule"});
    report.hypotheses.push_back({"partial-normal-compactness", HypStatus::assumed_finite_dim,
                                 "automatic in finite dimensions"});

    report.lhs = subdiff(f_omega, theta, x, z, ConeKind::limiting).set;
    report.rhs = minkowski_sum_sets(subdiff(f, theta, x, z, ConeKind::limiting).set, k2);
    detail::InclusionOutcome plain = detail::judge_inclusion(report.lhs, report.rhs);

    report.singular_lhs = singular_subdiff(f_omega, theta, x, z, ConeKind::limiting).set;
    report.singular_rhs =
        minkowski_sum_sets(singular_subdiff(f, theta, x, z, ConeKind::limiting).set, k2);
    detail::InclusionOutcome sing =
        detail::judge_inclusion(*report.singular_lhs, *report.singular_rhs);
    report.singular_verdict = sing.verdict;

    // Reverse inclusion for the regular kind: regular subdifferential of F
    // plus the regular normal cone sits inside the regular subdifferential
    // of the restriction.
    PolySet reg_sum =
        minkowski_sum_sets(subdiff(f, theta, x, z, ConeKind::regular).set,
                           PolySet::single(frechet_normal_cone(omega, x)));
    PolySet reg_restricted = subdiff(f_omega, theta, x, z, ConeKind::regular).set;
    bool reverse_ok = reg_sum.is_empty() || subset(reg_sum, reg_restricted).holds;
    report.notes.emplace_back("regular-reverse-inclusion",
                              reverse_ok ? "verified" : "violated");

    // Equality branch under regularity of both data pieces.
    bool f_regular = is_epiregular(f, theta, x, z);
    bool omega_regular = is_normally_regular(omega, x);
    report.notes.emplace_back("epiregular-mapping", f_regular ? "true" : "false");
    report.notes.emplace_back("normally-regular-set", omega_regular ? "true" : "false");
    if (f_regular && omega_regular && qual.intersects_trivially) {
        report.hypotheses.push_back({"regularity-equality-branch", HypStatus::verified,
                                     "mapping epiregular and set normally regular"});
        report.notes.emplace_back("restriction-epiregular",
                                  is_epiregular(f_omega, theta, x, z) ? "true" : "false");
    }

    report.verdict = detail::combine_verdicts(plain.verdict, sing.verdict);
    for (auto& w : plain.witnesses) report.witnesses.push_back(std::move(w));
    for (auto& w : sing.witnesses) report.witnesses.push_back(std::move(w));
    report.notes.emplace_back("plain-rule", verdict_name(plain.verdict));
    report.notes.emplace_back("singular-rule", verdict_name(sing.verdict));
    report.timing_seconds = watch.seconds();
    return report;
}

namespace detail {

/** {x* : exists (y*,z*) in certificates with x* in D*E_G(x̄,ȳ)(y*)}: joins
 *  dual-pair sets on the shared y*-block and projects onto x*. */
inline PolySet compose_coderivative(const PolySet& eg_pairs /* (x*, y*) */,
                                    const PolySet& f_certs /* (y*, z*) */, std::size_t n,
                                    std::size_t m)
{
    PolySet lifted_g = product_sets(eg_pairs, PolySet::whole_space(m));
    PolySet lifted_f = product_sets(PolySet::whole_space(n), f_certs);
    return project_set(intersect_sets(lifted_g, lifted_f), iota_range(0, n));
}

}  // namespace detail

/** Coderivative-form chain qualification at an intermediate point. */
inline QualificationStatus check_chain_qualification(const PolyMap& g, const PolyMap& f,
                                                     const OrderCone& theta1,
                                                     const OrderCone& theta2, const RatVector& x,
                                                     const RatVector& y, const RatVector& z)
{
    PolyMap ef = epi_map(f, theta2);
    PolyMap eg = epi_map(g, theta1);
    PolySet a = coderivative(ef, y, z, RatVector(f.rng_dim(), Rational(0)), ConeKind::limiting);
    PolySet b =
        coderivative(inverse(eg), y, x, RatVector(g.dom_dim(), Rational(0)), ConeKind::limiting);
    return detail::cones_intersect_trivially(a, b);
}

/**
 * Chain rule at (x̄,z̄): the subdifferential of F∘G against the union over
 * intermediate points ȳ of the coderivative of E_G applied to the certified
 * dual pairs of the subdifferential of F, plain and singular.
 */
inline CheckReport check_chain_rule(const PolyMap& g, const PolyMap& f, const OrderCone& theta1,
                                    const OrderCone& theta2, const RatVector& x,
                                    const RatVector& z)
{
    detail::StopWatch watch;
    const std::size_t n = g.dom_dim(), k = g.rng_dim(), m = f.rng_dim();
    PolyMap composed = compose(f, g);
    PolyMap ecomposed = epi_map(composed, theta2);
    detail::require_in_epigraph(ecomposed, x, z);

    CheckReport report;
    report.check_id = "chain_rule";

    PolySet h = h_eval(g, f, theta1, theta2, x, z);
    std::vector<RatVector> mids = detail::decomposition_points(h);

    PolyMap eg = epi_map(g, theta1);
    bool qualification_ok = true;
    std::optional<RatVector> qual_witness;
    PolySet rhs_plain = PolySet::empty_set(n);
    PolySet rhs_sing = PolySet::empty_set(n);
    for (const auto& y : mids) {
        QualificationStatus q = check_chain_qualification(g, f, theta1, theta2, x, y, z);
        if (!q.intersects_trivially) {
            qualification_ok = false;
            if (!qual_witness) qual_witness = q.witness;
        }

        // Normal cone pairs of gph E_G at (x̄,ȳ): {(x*, y*) : (x*,-y*) in N}.
        ConeUnion eg_cone = coderivative_graph(eg, x, y, ConeKind::limiting);
        PolySet eg_pairs = detail::flip_dual_block(eg_cone.set(), n, k);

        SubdiffResult f_sub = subdiff(f, theta2, y, z, ConeKind::limiting);
        PolySet f_certs = detail::unit_slice(f_sub.pairs, k, m);
        rhs_plain =
            union_sets(rhs_plain, detail::compose_coderivative(eg_pairs, f_certs, n, m));

        SubdiffResult f_sing = singular_subdiff(f, theta2, y, z, ConeKind::limiting);
        rhs_sing = union_sets(rhs_sing,
                              detail::compose_coderivative(eg_pairs, f_sing.pairs, n, m));
    }

    report.hypotheses.push_back(
        {"qualification", qualification_ok ? HypStatus::verified : HypStatus::violated,
         qualification_ok
             ? "coderivative-form condition verified on the epigraphical mappings at every "
               "intermediate point"
             : "nonzero common dual direction " + detail::format_point(*qual_witness) +
                   "; conclusion not guaranteed by the rule"});
    report.hypotheses.push_back({"partial-normal-compactness", HypStatus::assumed_finite_dim,
                                 "automatic in finite dimensions"});
    report.hypotheses.push_back(inner_semicompact_heuristic(h));
    report.notes.emplace_back(
        "qualification-form",
        "coderivatives of the epigraphical mappings at 0; the inverse-mapping phrasing with "
        "the outer ordering cone does not typecheck in the composed spaces");

    report.lhs = subdiff(composed, theta2, x, z, ConeKind::limiting).set;
    report.rhs = std::move(rhs_plain);
    detail::InclusionOutcome plain = detail::judge_inclusion(report.lhs, report.rhs);

    report.singular_lhs = singular_subdiff(composed, theta2, x, z, ConeKind::limiting).set;
    report.singular_rhs = std::move(rhs_sing);
    detail::InclusionOutcome sing =
        detail::judge_inclusion(*report.singular_lhs, *report.singular_rhs);

    report.verdict = detail::combine_verdicts(plain.verdict, sing.verdict);
    report.singular_verdict = sing.verdict;
    for (auto& w : plain.witnesses) report.witnesses.push_back(std::move(w));
    for (auto& w : sing.witnesses) report.witnesses.push_back(std::move(w));
    report.notes.emplace_back("plain-rule", verdict_name(plain.verdict));
    report.notes.emplace_back("singular-rule", verdict_name(sing.verdict));
    report.notes.emplace_back("intermediate-points", std::to_string(mids.size()));
    report.timing_seconds = watch.seconds();
    return report;
}

/** Finite-dimensional kernel-form chain qualification. */
inline QualificationStatus check_chain_finite_dim_qc(const PolyMap& g, const PolyMap& f,
                                                     const OrderCone& theta1,
                                                     const OrderCone& theta2, const RatVector& x,
                                                     const RatVector& y, const RatVector& z)
{
    const std::size_t n = g.dom_dim(), k = g.rng_dim();
    PolySet sing_f = singular_subdiff(f, theta2, y, z, ConeKind::limiting).set;

    // ker of the singular epigraphical coderivative of G: dual directions y*
    // sent to x* = 0.
    PolyMap eg = epi_map(g, theta1);
    ConeUnion cone = coderivative_graph(eg, x, y, ConeKind::limiting);
    std::vector<std::pair<std::size_t, Rational>> zero_x;
    for (std::size_t i = 0; i < n; ++i) zero_x.emplace_back(i, Rational(0));
    PolySet w_slice = fix_coords_set(cone.set(), zero_x);  // lives on w = -y*
    RatMatrix neg(k, k);
    for (std::size_t j = 0; j < k; ++j) neg.at(j, j) = -1;
    PolySet ker = affine_image_set(w_slice, neg, RatVector(k, Rational(0)));

    PolySet common = intersect_sets(sing_f, ker);
    if (auto w = detail::nonzero_generator(common)) return {false, std::move(w)};
    return {true, std::nullopt};
}

/** Graph-level chain identity for epigraphical mappings, tested per instance
 *  (it can fail without a compatibility between the outer mapping and the
 *  intermediate ordering cone). */
inline CheckReport check_epi_chain_identity(const PolyMap& g, const PolyMap& f,
                                            const OrderCone& theta1, const OrderCone& theta2)
{
    detail::StopWatch watch;
    CheckReport report;
    report.check_id = "epi_chain_identity";
    report.lhs = compose(epi_map(f, theta2), epi_map(g, theta1)).graph();
    report.rhs = epi_map(compose(f, g), theta2).graph();
    SubsetResult forward = subset(report.lhs, report.rhs);
    SubsetResult backward = subset(report.rhs, report.lhs);
    if (forward.holds && backward.holds) {
        report.verdict = Verdict::equality_holds;
    } else {
        report.verdict = Verdict::inclusion_fails;
        if (!forward.holds && forward.witness) report.witnesses.push_back(*forward.witness);
        if (!backward.holds && backward.witness) report.witnesses.push_back(*backward.witness);
        report.notes.emplace_back("failing-direction",
                                  forward.holds ? "right-into-left" : "left-into-right");
    }
    report.timing_seconds = watch.seconds();
    return report;
}

/** Chain rule through a single-valued inner mapping, with the equality
 *  branch under epigraphical regularity. */
inline CheckReport check_single_valued_chain_equality(const PolyMap& g, const PolyMap& f,
                                                      const OrderCone& theta1,
                                                      const OrderCone& theta2, const RatVector& x,
                                                      const RatVector& z)
{
    if (!is_single_valued(g))
        throw NotSingleValued("check_single_valued_chain_equality: inner mapping is set-valued");
    PolySet value = eval(g, x);
    if (value.is_empty())
        throw PointNotOnGraph("check_single_valued_chain_equality: inner mapping undefined");
    RatVector y = value.pieces().front().relint_point();

    CheckReport report = check_chain_rule(g, f, theta1, theta2, x, z);
    report.check_id = "single_valued_chain";

    const bool f_regular = is_epiregular(f, theta2, y, z);
    const bool g_affine = extract_affine(g).has_value();
    const bool g_regular_pl = g.dom_dim() == 1 && is_epiregular(g, theta1, x, y);
    std::string branch = "none";
    if (f_regular && g_affine) branch = "affine-inner";
    else if (f_regular && g_regular_pl) branch = "regular-piecewise-inner";
    report.notes.emplace_back("equality-branch", branch);
    if (branch != "none") {
        report.hypotheses.push_back({"equality-branch", HypStatus::verified,
                                     "outer mapping epiregular and inner mapping " + branch});
        report.notes.emplace_back("plain-equality-confirmed",
                                  set_equal(report.lhs, report.rhs) ? "true" : "false");
    }
    return report;
}

/** Chain rule with the qualification discharged by well-posedness: ELL of
 *  the outer mapping or metric regularity of the inner epigraphical mapping. */
inline CheckReport check_wellposed_chain(const PolyMap& g, const PolyMap& f,
                                         const OrderCone& theta1, const OrderCone& theta2,
                                         const RatVector& x, const RatVector& y,
                                         const RatVector& z)
{
    const bool ell = is_ell(f, theta2, y, z);
    const bool mreg = is_metrically_regular(epi_map(g, theta1), x, y);

    CheckReport report = check_chain_rule(g, f, theta1, theta2, x, z);
    report.check_id = "wellposed_chain";
    report.notes.emplace_back("outer-ell", ell ? "true" : "false");
    report.notes.emplace_back("inner-metrically-regular", mreg ? "true" : "false");
    if (ell || mreg) {
        for (auto& hyp : report.hypotheses)
            if (hyp.name == "qualification") {
                hyp.status = HypStatus::verified;
                hyp.detail = std::string("implied by well-posedness: ") +
                             (ell ? "outer mapping is epigraphically Lipschitz-like"
                                  : "inner epigraphical mapping is metrically regular");
            }
    }
    return report;
}

}  // namespace ordsub

#endif  // ORDSUB_VERIFIER_HPP
