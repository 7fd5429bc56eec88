/**
 * Coderivatives of set-valued mappings and the subdifferential constructions
 * for mappings ordered by a cone, built on the normal-cone engine applied to
 * graphs and generalized epigraphs.
 *
 * In finite dimensions the "normal" and "mixed" limiting constructions
 * coincide, so a single limiting kind is exposed (with aliases); likewise the
 * partial compactness conditions required by the calculus are automatic and
 * appear only as annotations in the verifier layer.
 *
 * The dual-norm normalization for subdifferential sets uses the sum norm on
 * the dual space, whose unit sphere is polyhedral: it decomposes into orthant
 * sign patterns, keeping every result an exact finite union of polyhedra.
 */

#ifndef ORDSUB_SUBCALC_HPP
#define ORDSUB_SUBCALC_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ordsub/setmap.hpp"
#include "ordsub/varcone.hpp"

namespace ordsub {

enum class ConeKind { regular, limiting, normal = limiting, mixed = limiting };

inline const char* cone_kind_name(ConeKind kind)
{
    return kind == ConeKind::regular ? "regular" : "limiting";
}

/**
 * A subdifferential with its certificates: `pairs` is the set of (x*, z*)
 * with (x*, -z*) in the chosen normal cone of the epigraphical graph and z*
 * admissible for the ordering cone; `set` is the projection onto x* of the
 * pairs whose z* lies on the dual unit sphere (or, for the singular kinds,
 * at z* = 0).
 */
struct SubdiffResult {
    PolySet set;
    PolySet pairs;
    std::string kind;
};

/** Full normal cone (of the requested kind) to gph F at a graph point. */
inline ConeUnion coderivative_graph(const PolyMap& f, const RatVector& x, const RatVector& z,
                                    ConeKind kind)
{
    if (!f.graph_member(x, z)) throw PointNotOnGraph("coderivative_graph: point not on graph");
    RatVector xz = x;
    xz.insert(xz.end(), z.begin(), z.end());
    if (kind == ConeKind::regular)
        return ConeUnion::from_set(PolySet::single(frechet_normal_cone(f.graph(), xz)));
    return limiting_normal_cone(f.graph(), xz);
}

/** D*F(x̄,z̄)(z*) = {x* : (x*,-z*) in the normal cone to gph F at (x̄,z̄)}. */
inline PolySet coderivative(const PolyMap& f, const RatVector& x, const RatVector& z,
                            const RatVector& zstar, ConeKind kind)
{
    if (zstar.size() != f.rng_dim())
        throw DimensionMismatch("coderivative: dual point of wrong dimension");
    ConeUnion cone = coderivative_graph(f, x, z, kind);
    std::vector<std::pair<std::size_t, Rational>> assign;
    for (std::size_t j = 0; j < f.rng_dim(); ++j)
        assign.emplace_back(f.dom_dim() + j, -zstar[j]);
    return fix_coords_set(cone.set(), assign);
}

namespace detail {

/** {(x*, z*) : (x*, -z*) in cone}: flip the sign of the dual z-block. */
inline PolySet flip_dual_block(const PolySet& cone, std::size_t n, std::size_t m)
{
    RatMatrix flip(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i) flip.at(i, i) = 1;
    for (std::size_t j = 0; j < m; ++j) flip.at(n + j, n + j) = -1;
    return affine_image_set(cone, flip, RatVector(n + m, Rational(0)));
}

/** Restrict pairs to the dual sum-norm unit sphere in the z*-block,
 *  decomposing the sphere by orthant sign patterns. */
inline PolySet unit_slice(const PolySet& pairs, std::size_t n, std::size_t m)
{
    std::vector<Polyhedron> out;
    const std::size_t patterns = static_cast<std::size_t>(1) << m;
    for (std::size_t bits = 0; bits < patterns; ++bits) {
        HRep slice;
        LinearConstraint sphere;
        sphere.normal.assign(n + m, Rational(0));
        sphere.offset = 1;
        for (std::size_t j = 0; j < m; ++j) {
            const long eps = (bits >> j) & 1 ? -1 : 1;
            LinearConstraint orthant;
            orthant.normal.assign(n + m, Rational(0));
            orthant.normal[n + j] = -eps;
            orthant.offset = 0;
            slice.ineqs.push_back(std::move(orthant));  // eps_j * z*_j >= 0
            sphere.normal[n + j] = eps;
        }
        slice.eqs.push_back(std::move(sphere));  // sum_j eps_j z*_j = 1
        PolySet sliced =
            intersect_sets(pairs, PolySet::single(Polyhedron::from_hrep(n + m, slice)));
        for (const auto& piece : sliced.pieces()) out.push_back(piece);
    }
    return PolySet::from_pieces(n + m, std::move(out));
}

/** Project the unit-sphere slice of a pair set onto its x*-block. */
inline PolySet project_unit_slice(const PolySet& pairs, std::size_t n, std::size_t m)
{
    std::vector<Polyhedron> out;
    PolySet sliced = unit_slice(pairs, n, m);
    for (const auto& piece : sliced.pieces()) out.push_back(project(piece, iota_range(0, n)));
    return PolySet::from_pieces(n, std::move(out));
}

inline void require_in_epigraph(const PolyMap& e, const RatVector& x, const RatVector& z)
{
    if (!e.graph_member(x, z))
        throw PointNotInEpigraph("subdifferential: point not in the generalized epigraph");
}

}  // namespace detail

/**
 * Subdifferential of F at (x̄,z̄) with respect to the ordering cone:
 * certificates (x*, z*) with (x*,-z*) normal to the epigraphical graph and
 * -z* in the normal cone of the ordering cone at 0, projected at dual norm 1.
 */
inline SubdiffResult subdiff(const PolyMap& f, const OrderCone& theta, const RatVector& x,
                             const RatVector& z, ConeKind kind)
{
    const std::size_t n = f.dom_dim(), m = f.rng_dim();
    PolyMap e = epi_map(f, theta);
    detail::require_in_epigraph(e, x, z);

    ConeUnion cone = coderivative_graph(e, x, z, kind);
    PolySet pairs = detail::flip_dual_block(cone.set(), n, m);

    // -z* in N(0;Θ) = polar(Θ), i.e. z* in -polar(Θ).
    Polyhedron dual = polar_cone(theta.cone());
    RatMatrix neg(m, m);
    for (std::size_t j = 0; j < m; ++j) neg.at(j, j) = -1;
    Polyhedron neg_dual = affine_image(dual, neg, RatVector(m, Rational(0)));
    PolySet admissible = product_sets(PolySet::whole_space(n), PolySet::single(neg_dual));
    pairs = intersect_sets(pairs, admissible);

    return {detail::project_unit_slice(pairs, n, m), std::move(pairs),
            std::string(cone_kind_name(kind))};
}

/** Singular subdifferential: the coderivative slice at z* = 0. */
inline SubdiffResult singular_subdiff(const PolyMap& f, const OrderCone& theta,
                                      const RatVector& x, const RatVector& z, ConeKind kind)
{
    const std::size_t n = f.dom_dim(), m = f.rng_dim();
    PolyMap e = epi_map(f, theta);
    detail::require_in_epigraph(e, x, z);

    ConeUnion cone = coderivative_graph(e, x, z, kind);
    PolySet pairs = detail::flip_dual_block(cone.set(), n, m);
    std::vector<std::pair<std::size_t, Rational>> zero_z;
    for (std::size_t j = 0; j < m; ++j) zero_z.emplace_back(n + j, Rational(0));
    PolySet set = fix_coords_set(pairs, zero_z);
    pairs = intersect_sets(
        pairs, product_sets(PolySet::whole_space(n),
                            PolySet::single_point(RatVector(m, Rational(0)))));

    return {std::move(set), std::move(pairs),
            std::string("singular-") + cone_kind_name(kind)};
}

/** Lipschitz-like (Aubin) property via the coderivative criterion
 *  D*F(x̄,z̄)(0) = {0}. */
inline bool is_lipschitz_like(const PolyMap& f, const RatVector& x, const RatVector& z)
{
    PolySet at_zero = coderivative(f, x, z, RatVector(f.rng_dim(), Rational(0)),
                                   ConeKind::limiting);
    return set_equal(at_zero, PolySet::single_point(RatVector(f.dom_dim(), Rational(0))));
}

/** Metric regularity of G at (x̄,ȳ) = Lipschitz-like property of G⁻¹ at (ȳ,x̄). */
inline bool is_metrically_regular(const PolyMap& g, const RatVector& x, const RatVector& y)
{
    return is_lipschitz_like(inverse(g), y, x);
}

/** Epigraphical Lipschitz-like property: the singular limiting
 *  subdifferential vanishes. */
inline bool is_ell(const PolyMap& f, const OrderCone& theta, const RatVector& x,
                   const RatVector& z)
{
    SubdiffResult s = singular_subdiff(f, theta, x, z, ConeKind::limiting);
    return set_equal(s.set, PolySet::single_point(RatVector(f.dom_dim(), Rational(0))));
}

/** Epigraphical regularity: regular and limiting cones of the epigraphical
 *  graph coincide at the point. */
inline bool is_epiregular(const PolyMap& f, const OrderCone& theta, const RatVector& x,
                          const RatVector& z)
{
    PolyMap e = epi_map(f, theta);
    detail::require_in_epigraph(e, x, z);
    RatVector xz = x;
    xz.insert(xz.end(), z.begin(), z.end());
    return is_normally_regular(e.graph(), xz);
}

}  // namespace ordsub

#endif  // ORDSUB_SUBCALC_HPP
