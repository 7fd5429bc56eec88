/**
 * Set-valued mappings F : X =: Z represented by their graphs, which are
 * PolySets in X x Z (domain coordinates first). All mapping calculus — sums,
 * compositions, inverses, indicator and restricted mappings, epigraphical
 * multifunctions, and the auxiliary decomposition mappings — is realized as
 * exact polyhedral algebra on graphs.
 */

#ifndef ORDSUB_SETMAP_HPP
#define ORDSUB_SETMAP_HPP

#include "polyset.hpp"

namespace ordsub {

/** Closed convex ordering cone in the range space. */
class OrderCone {
  public:
    explicit OrderCone(Polyhedron cone) : cone_(std::move(cone))
    {
        if (!cone_.is_cone()) throw NotACone("OrderCone: not a cone at the origin");
    }

    static OrderCone nonnegative_orthant(std::size_t dim)
    {
        HRep h;
        for (std::size_t i = 0; i < dim; ++i) {
            RatVector n(dim, Rational(0));
            n[i] = -1;
            h.ineqs.push_back({n, Rational(0)});
        }
        return OrderCone(Polyhedron::from_hrep(dim, h));
    }

    static OrderCone trivial(std::size_t dim)
    {
        return OrderCone(Polyhedron::single_point(RatVector(dim, Rational(0))));
    }

    const Polyhedron& cone() const { return cone_; }
    std::size_t dim() const { return cone_.dim(); }

    /** True for the degenerate ordering Θ = {0} (the unordered case). */
    bool is_trivial() const { return cone_.poly_dim() == 0; }

    bool operator==(const OrderCone& o) const { return cone_ == o.cone_; }

  private:
    Polyhedron cone_;
};

namespace detail {

/** Pads constraint rows of a polyhedron into a larger space, sending local
 *  coordinate j to global coordinate coord_map[j] (a cylinder over the rest). */
inline void pad_rows(const Polyhedron& p, std::size_t total,
                     const std::vector<std::size_t>& coord_map, HRep& out)
{
    auto pad = [&](const LinearConstraint& c) {
        LinearConstraint padded;
        padded.normal.assign(total, Rational(0));
        for (std::size_t j = 0; j < c.normal.size(); ++j) padded.normal[coord_map[j]] = c.normal[j];
        padded.offset = c.offset;
        return padded;
    };
    for (const auto& c : p.hrep().ineqs) out.ineqs.push_back(pad(c));
    for (const auto& c : p.hrep().eqs) out.eqs.push_back(pad(c));
}

inline std::vector<std::size_t> iota_range(std::size_t from, std::size_t count)
{
    std::vector<std::size_t> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = from + i;
    return v;
}

}  // namespace detail

class PolyMap {
  public:
    PolyMap(std::size_t dom_dim, std::size_t rng_dim, PolySet graph)
        : dom_dim_(dom_dim), rng_dim_(rng_dim), graph_(std::move(graph))
    {
        if (graph_.dim() != dom_dim_ + rng_dim_)
            throw DimensionMismatch("PolyMap: graph dimension != dom_dim + rng_dim");
    }

    std::size_t dom_dim() const { return dom_dim_; }
    std::size_t rng_dim() const { return rng_dim_; }
    const PolySet& graph() const { return graph_; }

    bool graph_member(const RatVector& x, const RatVector& z) const
    {
        RatVector xz = x;
        xz.insert(xz.end(), z.begin(), z.end());
        return graph_.member(xz);
    }

    bool operator==(const PolyMap& o) const
    {
        return dom_dim_ == o.dom_dim_ && rng_dim_ == o.rng_dim_ && graph_ == o.graph_;
    }

  private:
    std::size_t dom_dim_, rng_dim_;
    PolySet graph_;
};

/** The empty-graph mapping. */
inline PolyMap empty_map(std::size_t dom_dim, std::size_t rng_dim)
{
    return PolyMap(dom_dim, rng_dim, PolySet::empty_set(dom_dim + rng_dim));
}

/** Single-valued affine mapping x |-> Ax + b as a PolyMap. */
inline PolyMap affine_map(const RatMatrix& a, const RatVector& b)
{
    if (b.size() != a.rows) throw DimensionMismatch("affine_map: offset does not match matrix");
    HRep h;
    for (std::size_t i = 0; i < a.rows; ++i) {
        LinearConstraint eq;
        eq.normal.assign(a.cols + a.rows, Rational(0));
        for (std::size_t j = 0; j < a.cols; ++j) eq.normal[j] = -a.data[i][j];
        eq.normal[a.cols + i] = 1;
        eq.offset = b[i];
        h.eqs.push_back(std::move(eq));
    }
    return PolyMap(a.cols, a.rows,
                   PolySet::single(Polyhedron::from_hrep(a.cols + a.rows, h)));
}

inline PolyMap identity_map(std::size_t dim)
{
    return affine_map(RatMatrix::identity(dim), RatVector(dim, Rational(0)));
}

/** Constant mapping F(x) = {0} on all of X. */
inline PolyMap zero_map(std::size_t dom_dim, std::size_t rng_dim)
{
    RatMatrix a(rng_dim, dom_dim);
    return affine_map(a, RatVector(rng_dim, Rational(0)));
}

/** F(x) = {z : (x,z) in gph F}, possibly empty. */
inline PolySet eval(const PolyMap& f, const RatVector& x)
{
    if (x.size() != f.dom_dim()) throw DimensionMismatch("eval: point of wrong dimension");
    std::vector<std::pair<std::size_t, Rational>> assign;
    for (std::size_t j = 0; j < x.size(); ++j) assign.emplace_back(j, x[j]);
    return fix_coords_set(f.graph(), assign);
}

inline PolyMap inverse(const PolyMap& f)
{
    std::vector<std::size_t> perm(f.dom_dim() + f.rng_dim());
    for (std::size_t i = 0; i < f.dom_dim(); ++i) perm[i] = f.rng_dim() + i;
    for (std::size_t j = 0; j < f.rng_dim(); ++j) perm[f.dom_dim() + j] = j;
    return PolyMap(f.rng_dim(), f.dom_dim(), permute_coords_set(f.graph(), perm));
}

inline PolySet domain(const PolyMap& f)
{
    return project_set(f.graph(), detail::iota_range(0, f.dom_dim()));
}

/** ker F = {x : 0 in F(x)}. */
inline PolySet kernel(const PolyMap& f)
{
    std::vector<std::pair<std::size_t, Rational>> assign;
    for (std::size_t j = 0; j < f.rng_dim(); ++j)
        assign.emplace_back(f.dom_dim() + j, Rational(0));
    return fix_coords_set(f.graph(), assign);
}

/** (F1 + F2)(x) = F1(x) + F2(x), via the lifted graph {(x, z1, z2)}. */
inline PolyMap sum_map(const PolyMap& f1, const PolyMap& f2)
{
    if (f1.dom_dim() != f2.dom_dim() || f1.rng_dim() != f2.rng_dim())
        throw DimensionMismatch("sum_map: mapping spaces differ");
    const std::size_t n = f1.dom_dim(), m = f1.rng_dim();
    const std::size_t total = n + 2 * m;

    // Image (x, z1, z2) |-> (x, z1 + z2).
    RatMatrix a(n + m, total);
    for (std::size_t i = 0; i < n; ++i) a.at(i, i) = 1;
    for (std::size_t j = 0; j < m; ++j) {
        a.at(n + j, n + j) = 1;
        a.at(n + j, n + m + j) = 1;
    }

    std::vector<std::size_t> map1 = detail::iota_range(0, n + m);
    std::vector<std::size_t> map2 = detail::iota_range(0, n);
    for (std::size_t j = 0; j < m; ++j) map2.push_back(n + m + j);

    std::vector<Polyhedron> pieces;
    for (const auto& p1 : f1.graph().pieces()) {
        for (const auto& p2 : f2.graph().pieces()) {
            HRep lifted;
            detail::pad_rows(p1, total, map1, lifted);
            detail::pad_rows(p2, total, map2, lifted);
            Polyhedron l = Polyhedron::from_hrep(total, lifted);
            pieces.push_back(affine_image(l, a, RatVector(n + m, Rational(0))));
        }
    }
    return PolyMap(n, m, PolySet::from_pieces(n + m, std::move(pieces)));
}

/** (F o G)(x) = union of F(y) over y in G(x), via the lifted graph {(x, y, z)}. */
inline PolyMap compose(const PolyMap& f, const PolyMap& g)
{
    if (g.rng_dim() != f.dom_dim()) throw DimensionMismatch("compose: intermediate spaces differ");
    const std::size_t n = g.dom_dim(), k = g.rng_dim(), m = f.rng_dim();
    const std::size_t total = n + k + m;
    std::vector<std::size_t> keep = detail::iota_range(0, n);
    for (std::size_t j = 0; j < m; ++j) keep.push_back(n + k + j);

    std::vector<Polyhedron> pieces;
    for (const auto& pg : g.graph().pieces()) {
        for (const auto& pf : f.graph().pieces()) {
            HRep lifted;
            detail::pad_rows(pg, total, detail::iota_range(0, n + k), lifted);
            detail::pad_rows(pf, total, detail::iota_range(n, k + m), lifted);
            pieces.push_back(project(Polyhedron::from_hrep(total, lifted), keep));
        }
    }
    return PolyMap(n, m, PolySet::from_pieces(n + m, std::move(pieces)));
}

/** Indicator mapping of Ω: value {0} on Ω, empty outside; graph = Ω x {0}. */
inline PolyMap indicator_map(const PolySet& omega, std::size_t rng_dim)
{
    PolySet zero = PolySet::single_point(RatVector(rng_dim, Rational(0)));
    return PolyMap(omega.dim(), rng_dim, product_sets(omega, zero));
}

/** F_Ω = F + Δ(.;Ω): graph = gph F ∩ (Ω x Z). */
inline PolyMap restrict(const PolyMap& f, const PolySet& omega)
{
    if (omega.dim() != f.dom_dim()) throw DimensionMismatch("restrict: Ω lives in the wrong space");
    PolySet cylinder = product_sets(omega, PolySet::whole_space(f.rng_dim()));
    return PolyMap(f.dom_dim(), f.rng_dim(), intersect_sets(f.graph(), cylinder));
}

/** Θ-epigraphical multifunction E_{F,Θ}: graph = gph F ⊕ ({0} x Θ). */
inline PolyMap epi_map(const PolyMap& f, const OrderCone& theta)
{
    if (theta.dim() != f.rng_dim()) throw DimensionMismatch("epi_map: cone lives in the wrong space");
    Polyhedron zero_theta =
        product(Polyhedron::single_point(RatVector(f.dom_dim(), Rational(0))), theta.cone());
    std::vector<Polyhedron> pieces;
    for (const auto& p : f.graph().pieces()) pieces.push_back(minkowski_sum(p, zero_theta));
    return PolyMap(f.dom_dim(), f.rng_dim(),
                   PolySet::from_pieces(f.dom_dim() + f.rng_dim(), std::move(pieces)));
}

/**
 * Decomposition set S_E(x,z) = {(z1,z2) : z1 in E_{F1,Θ}(x), z2 in E_{F2,Θ}(x),
 * z = z1 + z2}, a PolySet in Z x Z.
 */
inline PolySet s_e_eval(const PolyMap& f1, const PolyMap& f2, const OrderCone& theta,
                        const RatVector& x, const RatVector& z)
{
    const std::size_t m = f1.rng_dim();
    PolySet e1 = eval(epi_map(f1, theta), x);
    PolySet e2 = eval(epi_map(f2, theta), x);
    PolySet boxes = product_sets(e1, e2);
    HRep diag;
    for (std::size_t j = 0; j < m; ++j) {
        LinearConstraint eq;
        eq.normal.assign(2 * m, Rational(0));
        eq.normal[j] = 1;
        eq.normal[m + j] = 1;
        eq.offset = z[j];
        diag.eqs.push_back(std::move(eq));
    }
    return intersect_sets(boxes, PolySet::single(Polyhedron::from_hrep(2 * m, diag)));
}

/** Intermediate-point set H(x,z) = E_{G,Θ1}(x) ∩ (E_{F,Θ2})⁻¹(z), in Y. */
inline PolySet h_eval(const PolyMap& g, const PolyMap& f, const OrderCone& theta1,
                      const OrderCone& theta2, const RatVector& x, const RatVector& z)
{
    PolySet reachable = eval(epi_map(g, theta1), x);
    PolySet pullback = eval(inverse(epi_map(f, theta2)), z);
    return intersect_sets(reachable, pullback);
}

/** True iff F(x) is at most a singleton for every x (graph-level test via the
 *  doubled lift {(x, z1, z2) : (x,z1), (x,z2) in gph F}). */
inline bool is_single_valued(const PolyMap& f)
{
    const std::size_t n = f.dom_dim(), m = f.rng_dim();
    const std::size_t total = n + 2 * m;
    std::vector<std::size_t> map1 = detail::iota_range(0, n + m);
    std::vector<std::size_t> map2 = detail::iota_range(0, n);
    for (std::size_t j = 0; j < m; ++j) map2.push_back(n + m + j);

    HRep diag;
    for (std::size_t j = 0; j < m; ++j) {
        LinearConstraint eq;
        eq.normal.assign(total, Rational(0));
        eq.normal[n + j] = 1;
        eq.normal[n + m + j] = -1;
        eq.offset = 0;
        diag.eqs.push_back(std::move(eq));
    }
    PolySet diagonal = PolySet::single(Polyhedron::from_hrep(total, diag));

    std::vector<Polyhedron> pieces;
    for (const auto& p1 : f.graph().pieces())
        for (const auto& p2 : f.graph().pieces()) {
            HRep lifted;
            detail::pad_rows(p1, total, map1, lifted);
            detail::pad_rows(p2, total, map2, lifted);
            pieces.push_back(Polyhedron::from_hrep(total, lifted));
        }
    return subset(PolySet::from_pieces(total, std::move(pieces)), diagonal).holds;
}

/** If F is the affine map x |-> Ax + b on all of X, returns (A, b). */
inline std::optional<std::pair<RatMatrix, RatVector>> extract_affine(const PolyMap& f)
{
    const std::size_t n = f.dom_dim(), m = f.rng_dim();
    if (f.graph().pieces().size() != 1) return std::nullopt;
    const Polyhedron& piece = f.graph().pieces()[0];
    if (!piece.hrep().ineqs.empty()) return std::nullopt;
    if (piece.hrep().eqs.size() != m) return std::nullopt;
    // Re-echelonize with the z-block leading so that z solves in terms of x:
    // rows become z_i + (row over x) = offset when every z column is a pivot.
    std::vector<RatVector> rows;
    for (const auto& c : piece.hrep().eqs) {
        RatVector r(n + m + 1);
        for (std::size_t j = 0; j < m; ++j) r[j] = c.normal[n + j];
        for (std::size_t j = 0; j < n; ++j) r[m + j] = c.normal[j];
        r[n + m] = c.offset;
        rows.push_back(std::move(r));
    }
    std::vector<std::size_t> pivots = rref(rows);
    if (rows.size() != m) return std::nullopt;
    for (std::size_t i = 0; i < m; ++i)
        if (pivots[i] != i) return std::nullopt;
    RatMatrix a(m, n);
    RatVector b(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Rational& lead = rows[i][i];
        for (std::size_t j = 0; j < n; ++j) a.at(i, j) = -rows[i][m + j] / lead;
        b[i] = rows[i][n + m] / lead;
    }
    return std::make_pair(std::move(a), std::move(b));
}

}  // namespace ordsub

#endif  // ORDSUB_SETMAP_HPP
