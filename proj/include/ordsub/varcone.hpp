/**
 * Variational geometry for unions of polyhedra: tangent cones, regular
 * (Fréchet) normal cones, and limiting normal cones at a point, together with
 * the normal-regularity test.
 *
 * The limiting cone is an outer limit of regular cones at nearby points.  For
 * a finite union of polyhedra the regular-normal-cone map is constant on the
 * relative interior of every cell of the constraint-hyperplane arrangement,
 * so the limit collapses to a finite union over the cells whose closure
 * contains the base point.  That reduction is what `arrangement_cells`
 * provides; this header only assembles cones on top of it.
 */

#ifndef ORDSUB_VARCONE_HPP
#define ORDSUB_VARCONE_HPP

#include <cstddef>
#include <vector>

#include "ordsub/polyset.hpp"

namespace ordsub {

/** Both normal cones at one point; the regular cone is always convex. */
struct ConePair {
    Polyhedron regular;
    ConeUnion limiting;
};

namespace detail {

/** Tangent cone to a single polyhedron at a member point: directions along
 *  which every active constraint stays satisfied to first order. */
inline Polyhedron piece_tangent_cone(const Polyhedron& p, const RatVector& x)
{
    HRep h;
    for (const auto& c : p.hrep().ineqs)
        if (dot(c.normal, x) == c.offset) h.ineqs.push_back({c.normal, Rational(0)});
    for (const auto& c : p.hrep().eqs) h.eqs.push_back({c.normal, Rational(0)});
    return Polyhedron::from_hrep(p.dim(), h);
}

/** Polar of the piece tangent cone, written directly from its generators:
 *  nonnegative combinations of active inequality normals plus the span of the
 *  equation normals. */
inline Polyhedron piece_normal_cone(const Polyhedron& p, const RatVector& x)
{
    VRep v;
    v.vertices.push_back(RatVector(p.dim(), Rational(0)));
    for (const auto& c : p.hrep().ineqs)
        if (dot(c.normal, x) == c.offset) v.rays.push_back(c.normal);
    for (const auto& c : p.hrep().eqs) v.lines.push_back(c.normal);
    return Polyhedron::from_vrep(p.dim(), v);
}

}  // namespace detail

/** Union over the pieces containing x of their tangent cones at x. */
inline ConeUnion tangent_cone(const PolySet& s, const RatVector& x)
{
    if (!s.member(x)) throw PointNotInSet("tangent_cone: point not in set");
    std::vector<Polyhedron> pieces;
    for (const auto& p : s.pieces())
        if (p.contains(x)) pieces.push_back(detail::piece_tangent_cone(p, x));
    return ConeUnion::from_set(PolySet::from_pieces(s.dim(), std::move(pieces)));
}

/** Regular normal cone: the polar of the tangent-cone union, i.e. the
 *  intersection of the per-piece polars.  Always a convex polyhedral cone. */
inline Polyhedron frechet_normal_cone(const PolySet& s, const RatVector& x)
{
    if (!s.member(x)) throw PointNotInSet("frechet_normal_cone: point not in set");
    Polyhedron result = Polyhedron::whole_space(s.dim());
    for (const auto& p : s.pieces())
        if (p.contains(x)) result = intersect(result, detail::piece_normal_cone(p, x));
    return result;
}

/** Limiting normal cone: union of the regular normal cones over the
 *  arrangement cells incident to the base point. */
inline ConeUnion limiting_normal_cone(const PolySet& s, const RatVector& x)
{
    std::vector<Polyhedron> pieces;
    for (const auto& cell : arrangement_cells(s, x))
        pieces.push_back(frechet_normal_cone(s, cell.rep));
    return ConeUnion::from_set(PolySet::from_pieces(s.dim(), std::move(pieces)));
}

inline ConePair normal_cones(const PolySet& s, const RatVector& x)
{
    return {frechet_normal_cone(s, x), limiting_normal_cone(s, x)};
}

/** True iff the regular and limiting normal cones coincide at x. */
inline bool is_normally_regular(const PolySet& s, const RatVector& x)
{
    ConePair cones = normal_cones(s, x);
    return set_equal(PolySet::single(cones.regular), cones.limiting.set());
}

}  // namespace ordsub

#endif  // ORDSUB_VARCONE_HPP
