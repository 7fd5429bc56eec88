/**
 * Exact convex polyhedra over the rationals.
 *
 * A Polyhedron is an immutable value carrying BOTH a minimal inequality
 * description (H-rep) and a minimal generator description (V-rep); the two are
 * synchronized at construction by a double-description conversion, so every
 * later query is a cheap exact test. Both representations are kept in a
 * canonical form (coprime integer scaling, echelon equation basis, generators
 * reduced modulo lineality, lexicographic sorting), which makes structural
 * equality coincide with set equality and makes all output deterministic.
 *
 * The empty polyhedron is a first-class value of any ambient dimension.
 */

#ifndef ORDSUB_POLYHEDRON_HPP
#define ORDSUB_POLYHEDRON_HPP

#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <utility>

#include "rational.hpp"

namespace ordsub {

/** One closed constraint: dot(normal, x) <= offset (or == offset as an equation). */
struct LinearConstraint {
    RatVector normal;
    Rational offset;

    bool operator==(const LinearConstraint& o) const
    {
        return offset == o.offset && normal == o.normal;
    }
};

/** Finite system of closed inequalities and equations. */
struct HRep {
    std::vector<LinearConstraint> ineqs;
    std::vector<LinearConstraint> eqs;

    bool operator==(const HRep& o) const { return ineqs == o.ineqs && eqs == o.eqs; }
};

/** Generator description: conv(vertices) + cone(rays) + span(lines). */
struct VRep {
    std::vector<RatVector> vertices;
    std::vector<RatVector> rays;
    std::vector<RatVector> lines;

    bool operator==(const VRep& o) const
    {
        return vertices == o.vertices && rays == o.rays && lines == o.lines;
    }
};

namespace detail {

inline void internal_check(bool ok, const char* msg)
{
    if (!ok) throw Error(std::string("internal invariant violated: ") + msg);
}

/** Fixed-width bitset used for the combinatorial adjacency test. */
struct Bitset {
    std::vector<std::uint64_t> w;

    explicit Bitset(std::size_t nbits = 0) : w((nbits + 63) / 64, 0) {}
    void set(std::size_t i) { w[i >> 6] |= (std::uint64_t{1} << (i & 63)); }

    bool subset_of(const Bitset& o) const
    {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~o.w[i]) return false;
        return true;
    }

    static Bitset intersection(const Bitset& a, const Bitset& b)
    {
        Bitset r;
        r.w.resize(a.w.size());
        for (std::size_t i = 0; i < a.w.size(); ++i) r.w[i] = a.w[i] & b.w[i];
        return r;
    }
};

/** Generators of a homogeneous cone: cone(rays) + span(lines). */
struct GenSet {
    std::vector<RatVector> rays;
    std::vector<RatVector> lines;
};

/**
 * Incremental double description: extreme rays and a lineality basis of
 * { y : dot(n, y) <= 0 for every n in normals }. Equations must be passed as
 * two opposite inequalities. Output rays are reduced modulo the lineality
 * space, primitive-scaled and sorted, so the result is canonical.
 *
 * Each constraint is processed either by pivoting a lineality direction onto
 * its feasible side or, once the lineality is orthogonal to it, by the classic
 * positive/negative ray combination step with the combinatorial adjacency
 * test of Fukuda & Prodon (a pair is adjacent iff no third extreme ray is
 * tight on every constraint the pair is jointly tight on).
 */
inline GenSet cone_dd(std::size_t dim, std::vector<RatVector> normals)
{
    {
        std::vector<RatVector> uniq;
        for (auto& n : normals) {
            if (n.size() != dim) throw DimensionMismatch("cone_dd: constraint of wrong dimension");
            RatVector c = scale_primitive(n);
            if (!is_zero(c)) uniq.push_back(std::move(c));
        }
        std::sort(uniq.begin(), uniq.end(), lex_less);
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        normals = std::move(uniq);
    }

    GenSet g;
    for (std::size_t i = 0; i < dim; ++i) {
        RatVector e(dim, Rational(0));
        e[i] = 1;
        g.lines.push_back(std::move(e));
    }

    std::vector<RatVector> processed;
    for (const auto& m : normals) {
        // Phase 1: if some lineality direction meets the constraint, pivot it.
        std::size_t pivot = g.lines.size();
        Rational d0;
        for (std::size_t i = 0; i < g.lines.size(); ++i) {
            Rational d = dot(m, g.lines[i]);
            if (sgn(d) != 0) {
                pivot = i;
                d0 = d;
                break;
            }
        }
        if (pivot < g.lines.size()) {
            RatVector l0 = g.lines[pivot];
            g.lines.erase(g.lines.begin() + static_cast<std::ptrdiff_t>(pivot));
            for (auto& l : g.lines) {
                Rational c = dot(m, l);
                if (sgn(c) != 0) l = scale_primitive_signed(axpy(l, -c / d0, l0));
            }
            for (auto& r : g.rays) {
                Rational c = dot(m, r);
                if (sgn(c) != 0) r = scale_primitive(axpy(r, -c / d0, l0));
            }
            g.rays.push_back(scale_primitive(sgn(d0) < 0 ? l0 : negate(l0)));
            processed.push_back(m);
            continue;
        }

        // Phase 2: all lines are tight; split the extreme rays.
        std::vector<Rational> val(g.rays.size());
        bool any_pos = false;
        for (std::size_t i = 0; i < g.rays.size(); ++i) {
            val[i] = dot(m, g.rays[i]);
            if (sgn(val[i]) > 0) any_pos = true;
        }
        if (!any_pos) {
            processed.push_back(m);
            continue;
        }

        std::vector<Bitset> act(g.rays.size(), Bitset(processed.size()));
        for (std::size_t i = 0; i < g.rays.size(); ++i)
            for (std::size_t j = 0; j < processed.size(); ++j)
                if (sgn(dot(processed[j], g.rays[i])) == 0) act[i].set(j);

        auto adjacent = [&](std::size_t p, std::size_t n) {
            Bitset common = Bitset::intersection(act[p], act[n]);
            for (std::size_t k = 0; k < g.rays.size(); ++k) {
                if (k == p || k == n) continue;
                if (common.subset_of(act[k])) return false;
            }
            return true;
        };

        std::vector<RatVector> next;
        std::set<RatVector> seen;
        auto push = [&](RatVector r) {
            if (seen.insert(r).second) next.push_back(std::move(r));
        };
        for (std::size_t i = 0; i < g.rays.size(); ++i)
            if (sgn(val[i]) <= 0) push(g.rays[i]);
        for (std::size_t p = 0; p < g.rays.size(); ++p) {
            if (sgn(val[p]) <= 0) continue;
            for (std::size_t n = 0; n < g.rays.size(); ++n) {
                if (sgn(val[n]) >= 0) continue;
                if (!adjacent(p, n)) continue;
                push(scale_primitive(axpy(scale(val[p], g.rays[n]), -val[n], g.rays[p])));
            }
        }
        g.rays = std::move(next);
        processed.push_back(m);
    }

    // Canonicalize: echelon lineality basis, rays reduced modulo it, sorted.
    std::vector<std::size_t> pivots = rref(g.lines);
    for (auto& r : g.rays) {
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            const std::size_t j = pivots[k];
            if (sgn(r[j]) != 0) r = axpy(r, -r[j] / g.lines[k][j], g.lines[k]);
        }
        r = scale_primitive(r);
    }
    std::sort(g.rays.begin(), g.rays.end(), lex_less);
    g.rays.erase(std::unique(g.rays.begin(), g.rays.end()), g.rays.end());
    std::erase_if(g.rays, [](const RatVector& r) { return is_zero(r); });
    return g;
}

/** Polar of cone(rays) + span(lines), again as a generator pair. */
inline GenSet cone_polar(std::size_t dim, const std::vector<RatVector>& rays,
                         const std::vector<RatVector>& lines)
{
    std::vector<RatVector> normals = rays;
    for (const auto& l : lines) {
        normals.push_back(l);
        normals.push_back(negate(l));
    }
    return cone_dd(dim, std::move(normals));
}

inline RatVector augmented(const LinearConstraint& c)
{
    RatVector row = c.normal;
    row.push_back(c.offset);
    return row;
}

inline LinearConstraint from_augmented(const RatVector& row)
{
    LinearConstraint c;
    c.normal.assign(row.begin(), row.end() - 1);
    c.offset = row.back();
    return c;
}

/**
 * Canonical form for the constraint system of a NONEMPTY polyhedron: the
 * equations become an echelon basis of the affine hull, each inequality is
 * reduced modulo that basis, and everything is primitive-scaled, sorted and
 * deduplicated.
 */
inline void canonicalize_hrep(HRep& h)
{
    std::vector<RatVector> eq_rows;
    eq_rows.reserve(h.eqs.size());
    for (const auto& e : h.eqs) eq_rows.push_back(augmented(e));
    std::vector<std::size_t> pivots = rref(eq_rows);
    for (std::size_t k = 0; k < pivots.size(); ++k)
        internal_check(pivots[k] + 1 < eq_rows[k].size() || eq_rows.empty(),
                       "contradictory equation in nonempty polyhedron");

    std::vector<RatVector> ineq_rows;
    for (const auto& c : h.ineqs) {
        RatVector row = augmented(c);
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            const std::size_t j = pivots[k];
            if (sgn(row[j]) != 0) row = axpy(row, -row[j] / eq_rows[k][j], eq_rows[k]);
        }
        row = scale_primitive(row);
        bool zero_normal = true;
        for (std::size_t j = 0; j + 1 < row.size(); ++j)
            if (sgn(row[j]) != 0) {
                zero_normal = false;
                break;
            }
        if (zero_normal) {
            internal_check(sgn(row.back()) >= 0, "infeasible trivial inequality survived");
            continue;  // 0 <= b with b >= 0: vacuous
        }
        ineq_rows.push_back(std::move(row));
    }
    std::sort(ineq_rows.begin(), ineq_rows.end(), lex_less);
    ineq_rows.erase(std::unique(ineq_rows.begin(), ineq_rows.end()), ineq_rows.end());

    h.eqs.clear();
    for (const auto& row : eq_rows) h.eqs.push_back(from_augmented(row));
    h.ineqs.clear();
    for (const auto& row : ineq_rows) h.ineqs.push_back(from_augmented(row));
}

/** Canonical generator form: echelon lineality basis, vertices and rays reduced
 *  modulo it, primitive rays, everything sorted and deduplicated. */
inline void canonicalize_vrep(VRep& v)
{
    std::vector<std::size_t> pivots = rref(v.lines);
    auto reduce = [&](RatVector& g) {
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            const std::size_t j = pivots[k];
            if (sgn(g[j]) != 0) g = axpy(g, -g[j] / v.lines[k][j], v.lines[k]);
        }
    };
    for (auto& r : v.rays) {
        reduce(r);
        r = scale_primitive(r);
    }
    std::erase_if(v.rays, [](const RatVector& r) { return is_zero(r); });
    std::sort(v.rays.begin(), v.rays.end(), lex_less);
    v.rays.erase(std::unique(v.rays.begin(), v.rays.end()), v.rays.end());
    for (auto& p : v.vertices) reduce(p);
    std::sort(v.vertices.begin(), v.vertices.end(), lex_less);
    v.vertices.erase(std::unique(v.vertices.begin(), v.vertices.end()), v.vertices.end());
}

}  // namespace detail

class Polyhedron {
  public:
    /** Builds from a (possibly redundant) constraint system. */
    static Polyhedron from_hrep(std::size_t dim, const HRep& h);

    /** Builds from a (possibly redundant) generator list. A V-rep without
     *  vertices but with rays or lines denotes a cone with apex at the origin. */
    static Polyhedron from_vrep(std::size_t dim, const VRep& v);

    static Polyhedron empty_set(std::size_t dim)
    {
        Polyhedron p;
        p.dim_ = dim;
        p.empty_ = true;
        LinearConstraint never;
        never.normal.assign(dim, Rational(0));
        never.offset = -1;
        p.h_.ineqs.push_back(std::move(never));
        return p;
    }

    static Polyhedron whole_space(std::size_t dim) { return from_hrep(dim, HRep{}); }

    static Polyhedron single_point(const RatVector& x)
    {
        VRep v;
        v.vertices.push_back(x);
        return from_vrep(x.size(), v);
    }

    std::size_t dim() const { return dim_; }
    bool is_empty() const { return empty_; }
    const HRep& hrep() const { return h_; }
    const VRep& vrep() const { return v_; }

    /** True iff the set is a closed convex cone with apex at the origin. */
    bool is_cone() const
    {
        if (empty_) return false;
        return v_.vertices.size() == 1 && is_zero(v_.vertices[0]);
    }

    bool contains(const RatVector& x) const
    {
        if (x.size() != dim_) throw DimensionMismatch("contains: point of wrong dimension");
        if (empty_) return false;
        for (const auto& c : h_.ineqs)
            if (dot(c.normal, x) > c.offset) return false;
        for (const auto& c : h_.eqs)
            if (dot(c.normal, x) != c.offset) return false;
        return true;
    }

    /** Affine dimension; -1 for the empty set. */
    int poly_dim() const
    {
        if (empty_) return -1;
        return static_cast<int>(dim_) - static_cast<int>(h_.eqs.size());
    }

    /**
     * An exact point in the relative interior: the vertex centroid pushed along
     * the sum of all extreme rays. Throws EmptyInput on the empty set.
     */
    RatVector relint_point() const
    {
        if (empty_) throw EmptyInput("relint_point: empty polyhedron");
        RatVector p(dim_, Rational(0));
        for (const auto& v : v_.vertices) p = add(p, v);
        p = scale(Rational(1, static_cast<unsigned long>(v_.vertices.size())), p);
        for (const auto& r : v_.rays) p = add(p, r);
        return p;
    }

    bool operator==(const Polyhedron& o) const
    {
        return dim_ == o.dim_ && empty_ == o.empty_ && h_ == o.h_;
    }
    bool operator!=(const Polyhedron& o) const { return !(*this == o); }

    /** Deterministic total order (used to sort piece lists). */
    static int compare(const Polyhedron& a, const Polyhedron& b);

    bool operator<(const Polyhedron& o) const { return compare(*this, o) < 0; }

  private:
    friend Polyhedron translate(const Polyhedron&, const RatVector&);
    friend Polyhedron permute_coords(const Polyhedron&, const std::vector<std::size_t>&);

    Polyhedron() = default;

    static Polyhedron assemble(std::size_t dim, HRep h, VRep v)
    {
        Polyhedron p;
        p.dim_ = dim;
        p.empty_ = false;
        detail::canonicalize_hrep(h);
        detail::canonicalize_vrep(v);
        p.h_ = std::move(h);
        p.v_ = std::move(v);
        return p;
    }

    /** Shared tail of both constructors: extracts a canonical V-rep and a minimal
     *  H-rep from the homogenization cone (coordinates (x, t), the set being t=1). */
    static Polyhedron from_homogenized(std::size_t dim, const detail::GenSet& cone);

    std::size_t dim_ = 0;
    bool empty_ = true;
    HRep h_;
    VRep v_;
};

inline Polyhedron Polyhedron::from_homogenized(std::size_t dim, const detail::GenSet& cone)
{
    VRep v;
    bool has_vertex = false;
    for (const auto& r : cone.rays) {
        const Rational& t = r[dim];
        detail::internal_check(sgn(t) >= 0, "homogenization ray with negative scale");
        if (sgn(t) > 0) {
            has_vertex = true;
            RatVector x(dim);
            for (std::size_t j = 0; j < dim; ++j) x[j] = r[j] / t;
            v.vertices.push_back(std::move(x));
        } else {
            v.rays.emplace_back(r.begin(), r.end() - 1);
        }
    }
    for (const auto& l : cone.lines) {
        detail::internal_check(sgn(l[dim]) == 0, "homogenization line leaves the slice");
        v.lines.emplace_back(l.begin(), l.end() - 1);
    }
    if (!has_vertex) return empty_set(dim);

    detail::GenSet polar = detail::cone_polar(dim + 1, cone.rays, cone.lines);
    HRep h;
    for (const auto& u : polar.rays) {
        // u = (m, c) certifies dot(m, x) + c*t <= 0 on the cone, i.e. dot(m, x) <= -c at t=1.
        LinearConstraint ineq;
        ineq.normal.assign(u.begin(), u.end() - 1);
        ineq.offset = -u.back();
        if (is_zero(ineq.normal)) continue;  // the t >= 0 facet, no content at t = 1
        h.ineqs.push_back(std::move(ineq));
    }
    for (const auto& u : polar.lines) {
        LinearConstraint eq;
        eq.normal.assign(u.begin(), u.end() - 1);
        eq.offset = -u.back();
        detail::internal_check(!is_zero(eq.normal), "degenerate affine-hull equation");
        h.eqs.push_back(std::move(eq));
    }
    return assemble(dim, std::move(h), std::move(v));
}

inline Polyhedron Polyhedron::from_hrep(std::size_t dim, const HRep& h)
{
    std::vector<RatVector> normals;
    auto homogenize = [&](const LinearConstraint& c) {
        if (c.normal.size() != dim) throw DimensionMismatch("from_hrep: constraint of wrong dimension");
        RatVector row = c.normal;
        row.push_back(-c.offset);
        return row;
    };
    for (const auto& c : h.ineqs) normals.push_back(homogenize(c));
    for (const auto& c : h.eqs) {
        RatVector row = homogenize(c);
        normals.push_back(negate(row));
        normals.push_back(std::move(row));
    }
    RatVector tpos(dim + 1, Rational(0));
    tpos[dim] = -1;  // -t <= 0
    normals.push_back(std::move(tpos));
    return from_homogenized(dim, detail::cone_dd(dim + 1, std::move(normals)));
}

inline Polyhedron Polyhedron::from_vrep(std::size_t dim, const VRep& v)
{
    if (v.vertices.empty() && v.rays.empty() && v.lines.empty()) return empty_set(dim);
    detail::GenSet gen;
    auto lift = [&](const RatVector& g, const Rational& t) {
        if (g.size() != dim) throw DimensionMismatch("from_vrep: generator of wrong dimension");
        RatVector r = g;
        r.push_back(t);
        return r;
    };
    for (const auto& p : v.vertices) gen.rays.push_back(lift(p, Rational(1)));
    if (v.vertices.empty()) gen.rays.push_back(lift(RatVector(dim, Rational(0)), Rational(1)));
    for (const auto& r : v.rays)
        if (!is_zero(r)) gen.rays.push_back(lift(r, Rational(0)));
    for (const auto& l : v.lines)
        if (!is_zero(l)) gen.lines.push_back(lift(l, Rational(0)));

    // Facets first (polar of the homogenization), then generators from those
    // facets; this prunes any redundancy in the input list.
    detail::GenSet polar = detail::cone_polar(dim + 1, gen.rays, gen.lines);
    std::vector<RatVector> normals = polar.rays;
    for (const auto& l : polar.lines) {
        normals.push_back(l);
        normals.push_back(negate(l));
    }
    return from_homogenized(dim, detail::cone_dd(dim + 1, std::move(normals)));
}

inline int Polyhedron::compare(const Polyhedron& a, const Polyhedron& b)
{
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_ ? -1 : 1;
    if (a.empty_ != b.empty_) return a.empty_ ? -1 : 1;
    auto cmp_rows = [](const std::vector<LinearConstraint>& x, const std::vector<LinearConstraint>& y) {
        const std::size_t n = std::min(x.size(), y.size());
        for (std::size_t i = 0; i < n; ++i) {
            int c = lex_cmp(detail::augmented(x[i]), detail::augmented(y[i]));
            if (c != 0) return c;
        }
        if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
        return 0;
    };
    int c = cmp_rows(a.h_.eqs, b.h_.eqs);
    if (c != 0) return c;
    return cmp_rows(a.h_.ineqs, b.h_.ineqs);
}

/** Re-derives both representations from the constraint side; by canonicality
 *  this is the identity on any constructed Polyhedron (tested), and exists as
 *  the explicit H <-> V round-trip entry point. */
inline Polyhedron dd_convert(const Polyhedron& p)
{
    if (p.is_empty()) return Polyhedron::empty_set(p.dim());
    return Polyhedron::from_hrep(p.dim(), p.hrep());
}

inline Polyhedron intersect(const Polyhedron& p, const Polyhedron& q)
{
    if (p.dim() != q.dim()) throw DimensionMismatch("intersect: ambient dimensions differ");
    if (p.is_empty() || q.is_empty()) return Polyhedron::empty_set(p.dim());
    HRep h = p.hrep();
    h.ineqs.insert(h.ineqs.end(), q.hrep().ineqs.begin(), q.hrep().ineqs.end());
    h.eqs.insert(h.eqs.end(), q.hrep().eqs.begin(), q.hrep().eqs.end());
    return Polyhedron::from_hrep(p.dim(), h);
}

inline Polyhedron minkowski_sum(const Polyhedron& p, const Polyhedron& q)
{
    if (p.dim() != q.dim()) throw DimensionMismatch("minkowski_sum: ambient dimensions differ");
    if (p.is_empty() || q.is_empty()) return Polyhedron::empty_set(p.dim());
    VRep v;
    for (const auto& a : p.vrep().vertices)
        for (const auto& b : q.vrep().vertices) v.vertices.push_back(add(a, b));
    v.rays = p.vrep().rays;
    v.rays.insert(v.rays.end(), q.vrep().rays.begin(), q.vrep().rays.end());
    v.lines = p.vrep().lines;
    v.lines.insert(v.lines.end(), q.vrep().lines.begin(), q.vrep().lines.end());
    return Polyhedron::from_vrep(p.dim(), v);
}

/** Image { A x + b : x in p }. */
inline Polyhedron affine_image(const Polyhedron& p, const RatMatrix& A, const RatVector& b)
{
    if (A.cols != p.dim()) throw DimensionMismatch("affine_image: matrix does not match polyhedron");
    if (b.size() != A.rows) throw DimensionMismatch("affine_image: offset does not match matrix");
    if (p.is_empty()) return Polyhedron::empty_set(A.rows);
    VRep v;
    for (const auto& x : p.vrep().vertices) v.vertices.push_back(add(A.apply(x), b));
    for (const auto& r : p.vrep().rays) v.rays.push_back(A.apply(r));
    for (const auto& l : p.vrep().lines) v.lines.push_back(A.apply(l));
    return Polyhedron::from_vrep(A.rows, v);
}

/** Cheap exact translate: shifts offsets and vertices, then restores canonical form. */
inline Polyhedron translate(const Polyhedron& p, const RatVector& t)
{
    if (t.size() != p.dim()) throw DimensionMismatch("translate: vector of wrong dimension");
    if (p.is_empty()) return p;
    HRep h = p.hrep();
    for (auto& c : h.ineqs) c.offset += dot(c.normal, t);
    for (auto& c : h.eqs) c.offset += dot(c.normal, t);
    VRep v = p.vrep();
    for (auto& x : v.vertices) x = add(x, t);
    return Polyhedron::assemble(p.dim(), std::move(h), std::move(v));
}

/** Coordinate permutation: coordinate i of the input becomes coordinate perm[i]. */
inline Polyhedron permute_coords(const Polyhedron& p, const std::vector<std::size_t>& perm)
{
    if (perm.size() != p.dim()) throw DimensionMismatch("permute_coords: permutation of wrong size");
    auto shuffle = [&](const RatVector& x) {
        RatVector y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[perm[i]] = x[i];
        return y;
    };
    if (p.is_empty()) return Polyhedron::empty_set(p.dim());
    HRep h = p.hrep();
    for (auto& c : h.ineqs) c.normal = shuffle(c.normal);
    for (auto& c : h.eqs) c.normal = shuffle(c.normal);
    VRep v = p.vrep();
    for (auto& g : v.vertices) g = shuffle(g);
    for (auto& g : v.rays) g = shuffle(g);
    for (auto& g : v.lines) g = shuffle(g);
    return Polyhedron::assemble(p.dim(), std::move(h), std::move(v));
}

/** Cylinder over p: { y in R^total : (y[offset], ..., y[offset+dim-1]) in p }. */
inline Polyhedron embed(const Polyhedron& p, std::size_t total, std::size_t offset)
{
    if (offset + p.dim() > total) throw DimensionMismatch("embed: block does not fit");
    if (p.is_empty()) return Polyhedron::empty_set(total);
    auto pad = [&](const LinearConstraint& c) {
        LinearConstraint out;
        out.normal.assign(total, Rational(0));
        for (std::size_t j = 0; j < p.dim(); ++j) out.normal[offset + j] = c.normal[j];
        out.offset = c.offset;
        return out;
    };
    HRep h;
    for (const auto& c : p.hrep().ineqs) h.ineqs.push_back(pad(c));
    for (const auto& c : p.hrep().eqs) h.eqs.push_back(pad(c));
    return Polyhedron::from_hrep(total, h);
}

/** Cartesian product p x q, coordinates of p first. */
inline Polyhedron product(const Polyhedron& p, const Polyhedron& q)
{
    const std::size_t total = p.dim() + q.dim();
    if (p.is_empty() || q.is_empty()) return Polyhedron::empty_set(total);
    HRep h;
    auto pad = [&](const LinearConstraint& c, std::size_t offset) {
        LinearConstraint out;
        out.normal.assign(total, Rational(0));
        for (std::size_t j = 0; j < c.normal.size(); ++j) out.normal[offset + j] = c.normal[j];
        out.offset = c.offset;
        return out;
    };
    for (const auto& c : p.hrep().ineqs) h.ineqs.push_back(pad(c, 0));
    for (const auto& c : p.hrep().eqs) h.eqs.push_back(pad(c, 0));
    for (const auto& c : q.hrep().ineqs) h.ineqs.push_back(pad(c, p.dim()));
    for (const auto& c : q.hrep().eqs) h.eqs.push_back(pad(c, p.dim()));
    return Polyhedron::from_hrep(total, h);
}

/**
 * Substitutes fixed values for the given coordinates and returns the section
 * in the remaining coordinates (kept in ascending original order).
 */
inline Polyhedron fix_coords(const Polyhedron& p,
                             const std::vector<std::pair<std::size_t, Rational>>& assignment)
{
    std::map<std::size_t, Rational> fixed(assignment.begin(), assignment.end());
    if (fixed.size() != assignment.size()) throw DimensionMismatch("fix_coords: duplicate coordinate");
    for (const auto& [j, val] : fixed) {
        (void)val;
        if (j >= p.dim()) throw DimensionMismatch("fix_coords: coordinate out of range");
    }
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < p.dim(); ++j)
        if (!fixed.count(j)) keep.push_back(j);
    if (p.is_empty()) return Polyhedron::empty_set(keep.size());

    auto restrict_row = [&](const LinearConstraint& c) {
        LinearConstraint out;
        out.offset = c.offset;
        for (std::size_t j = 0; j < p.dim(); ++j) {
            auto it = fixed.find(j);
            if (it != fixed.end())
                out.offset -= c.normal[j] * it->second;
            else
                out.normal.push_back(c.normal[j]);
        }
        return out;
    };
    HRep h;
    for (const auto& c : p.hrep().ineqs) h.ineqs.push_back(restrict_row(c));
    for (const auto& c : p.hrep().eqs) h.eqs.push_back(restrict_row(c));
    return Polyhedron::from_hrep(keep.size(), h);
}

/**
 * Orthogonal projection onto the coordinates listed in `keep` (output coordinate
 * k is input coordinate keep[k]). Equations are eliminated by substitution and
 * the remaining coordinates by Fourier-Motzkin; duplicate rows are pruned after
 * every step and an exact minimalization round-trip caps intermediate growth.
 */
inline Polyhedron project(const Polyhedron& p, const std::vector<std::size_t>& keep)
{
    {
        std::set<std::size_t> uniq(keep.begin(), keep.end());
        if (uniq.size() != keep.size()) throw DimensionMismatch("project: repeated coordinate");
        for (std::size_t j : keep)
            if (j >= p.dim()) throw DimensionMismatch("project: coordinate out of range");
    }
    if (p.is_empty()) return Polyhedron::empty_set(keep.size());

    // Working system over the live columns; augmented rows [normal | offset].
    std::vector<std::size_t> live(p.dim());
    for (std::size_t j = 0; j < p.dim(); ++j) live[j] = j;
    std::vector<RatVector> ineqs, eqs;
    for (const auto& c : p.hrep().ineqs) ineqs.push_back(detail::augmented(c));
    for (const auto& c : p.hrep().eqs) eqs.push_back(detail::augmented(c));

    auto drop_column = [&](std::size_t col) {
        for (auto& row : ineqs) row.erase(row.begin() + static_cast<std::ptrdiff_t>(col));
        for (auto& row : eqs) row.erase(row.begin() + static_cast<std::ptrdiff_t>(col));
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(col));
    };
    auto tidy = [&](std::vector<RatVector>& rows, bool signed_scale) {
        for (auto& r : rows) r = signed_scale ? scale_primitive_signed(r) : scale_primitive(r);
        std::erase_if(rows, [](const RatVector& r) {
            for (std::size_t j = 0; j + 1 < r.size(); ++j)
                if (sgn(r[j]) != 0) return false;
            return sgn(r.back()) >= 0;  // keep contradictions, drop vacuous rows
        });
        std::sort(rows.begin(), rows.end(), lex_less);
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    };

    const std::set<std::size_t> keep_set(keep.begin(), keep.end());
    for (std::size_t col = 0; col < live.size();) {
        if (keep_set.count(live[col])) {
            ++col;
            continue;
        }
        std::size_t eq_pivot = eqs.size();
        for (std::size_t i = 0; i < eqs.size(); ++i)
            if (sgn(eqs[i][col]) != 0) {
                eq_pivot = i;
                break;
            }
        if (eq_pivot < eqs.size()) {
            RatVector piv = eqs[eq_pivot];
            eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(eq_pivot));
            auto substitute = [&](RatVector& row) {
                if (sgn(row[col]) != 0) row = axpy(row, -row[col] / piv[col], piv);
            };
            for (auto& row : eqs) substitute(row);
            for (auto& row : ineqs) substitute(row);
        } else {
            std::vector<RatVector> next;
            std::vector<std::size_t> pos, neg;
            for (std::size_t i = 0; i < ineqs.size(); ++i) {
                int s = sgn(ineqs[i][col]);
                if (s > 0)
                    pos.push_back(i);
                else if (s < 0)
                    neg.push_back(i);
                else
                    next.push_back(ineqs[i]);
            }
            for (std::size_t ip : pos)
                for (std::size_t in : neg)
                    next.push_back(
                        axpy(scale(ineqs[ip][col], ineqs[in]), -ineqs[in][col], ineqs[ip]));
            ineqs = std::move(next);
        }
        drop_column(col);
        tidy(ineqs, false);
        tidy(eqs, true);
        for (const auto& r : ineqs) {
            bool zero_normal = true;
            for (std::size_t j = 0; j + 1 < r.size(); ++j)
                if (sgn(r[j]) != 0) {
                    zero_normal = false;
                    break;
                }
            if (zero_normal && sgn(r.back()) < 0) return Polyhedron::empty_set(keep.size());
        }
        if (ineqs.size() > 48) {
            // Exact minimalization of the intermediate system.
            HRep mid;
            for (const auto& r : ineqs) mid.ineqs.push_back(detail::from_augmented(r));
            for (const auto& r : eqs) mid.eqs.push_back(detail::from_augmented(r));
            Polyhedron trimmed = Polyhedron::from_hrep(live.size(), mid);
            if (trimmed.is_empty()) return Polyhedron::empty_set(keep.size());
            ineqs.clear();
            eqs.clear();
            for (const auto& c : trimmed.hrep().ineqs) ineqs.push_back(detail::augmented(c));
            for (const auto& c : trimmed.hrep().eqs) eqs.push_back(detail::augmented(c));
        }
    }

    // Reorder the surviving columns to match the requested output order.
    std::map<std::size_t, std::size_t> pos_of;
    for (std::size_t c = 0; c < live.size(); ++c) pos_of[live[c]] = c;
    HRep h;
    auto reorder = [&](const RatVector& row) {
        LinearConstraint c;
        c.normal.resize(keep.size());
        for (std::size_t k = 0; k < keep.size(); ++k) c.normal[k] = row[pos_of.at(keep[k])];
        c.offset = row.back();
        return c;
    };
    for (const auto& r : ineqs) h.ineqs.push_back(reorder(r));
    for (const auto& r : eqs) h.eqs.push_back(reorder(r));
    return Polyhedron::from_hrep(keep.size(), h);
}

/** Polar cone { y : dot(y, x) <= 0 for all x in p }; p must be a cone. */
inline Polyhedron polar_cone(const Polyhedron& p)
{
    if (!p.is_cone()) throw NotACone("polar_cone: input is not a cone at the origin");
    HRep h;
    for (const auto& r : p.vrep().rays) h.ineqs.push_back({r, Rational(0)});
    for (const auto& l : p.vrep().lines) h.eqs.push_back({l, Rational(0)});
    return Polyhedron::from_hrep(p.dim(), h);
}

/**
 * All nonempty faces of p (including p itself), discovered by breadth-first
 * closure of active sets: a face is identified by the set of facet inequalities
 * tight on it, and its children arise by forcing one more inequality to
 * equality. Output is sorted by active set, so it is deterministic.
 */
inline std::vector<Polyhedron> faces(const Polyhedron& p)
{
    std::vector<Polyhedron> out;
    if (p.is_empty()) return out;
    const auto& ineqs = p.hrep().ineqs;

    auto active_closure = [&](const Polyhedron& f) {
        std::vector<std::size_t> act;
        for (std::size_t i = 0; i < ineqs.size(); ++i) {
            bool tight = true;
            for (const auto& v : f.vrep().vertices)
                if (dot(ineqs[i].normal, v) != ineqs[i].offset) {
                    tight = false;
                    break;
                }
            if (tight)
                for (const auto& r : f.vrep().rays)
                    if (sgn(dot(ineqs[i].normal, r)) != 0) {
                        tight = false;
                        break;
                    }
            if (tight)
                for (const auto& l : f.vrep().lines)
                    if (sgn(dot(ineqs[i].normal, l)) != 0) {
                        tight = false;
                        break;
                    }
            if (tight) act.push_back(i);
        }
        return act;
    };

    std::map<std::vector<std::size_t>, Polyhedron> seen;
    std::queue<std::vector<std::size_t>> todo;
    std::vector<std::size_t> root = active_closure(p);
    seen.emplace(root, p);
    todo.push(root);
    while (!todo.empty()) {
        std::vector<std::size_t> key = todo.front();
        todo.pop();
        const Polyhedron face = seen.at(key);
        for (std::size_t i = 0; i < ineqs.size(); ++i) {
            if (std::find(key.begin(), key.end(), i) != key.end()) continue;
            HRep h = face.hrep();
            h.eqs.push_back(ineqs[i]);
            Polyhedron child = Polyhedron::from_hrep(p.dim(), h);
            if (child.is_empty()) continue;
            std::vector<std::size_t> ckey = active_closure(child);
            if (seen.emplace(ckey, child).second) todo.push(ckey);
        }
    }
    for (auto& [key, f] : seen) out.push_back(std::move(f));
    return out;
}

}  // namespace ordsub

#endif  // ORDSUB_POLYHEDRON_HPP
