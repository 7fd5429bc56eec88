/**
 * Finite unions of polyhedra: the representation of every (possibly nonconvex)
 * closed set in the library. A PolySet keeps a canonical piece list — empty
 * pieces dropped, pieces sorted, duplicates and single-piece containments
 * pruned — so equal sets built along different routes compare deterministically.
 */

#ifndef ORDSUB_POLYSET_HPP
#define ORDSUB_POLYSET_HPP

#include <optional>

#include "polyhedron.hpp"

namespace ordsub {

/** True iff the convex polyhedron p is contained in the convex polyhedron q,
 *  decided by checking p's generators against q's constraints. */
inline bool convex_subset(const Polyhedron& p, const Polyhedron& q)
{
    if (p.dim() != q.dim()) throw DimensionMismatch("convex_subset: ambient dimensions differ");
    if (p.is_empty()) return true;
    if (q.is_empty()) return false;
    for (const auto& v : p.vrep().vertices)
        if (!q.contains(v)) return false;
    for (const auto& r : p.vrep().rays) {
        for (const auto& c : q.hrep().ineqs)
            if (sgn(dot(c.normal, r)) > 0) return false;
        for (const auto& c : q.hrep().eqs)
            if (sgn(dot(c.normal, r)) != 0) return false;
    }
    for (const auto& l : p.vrep().lines) {
        for (const auto& c : q.hrep().ineqs)
            if (sgn(dot(c.normal, l)) != 0) return false;
        for (const auto& c : q.hrep().eqs)
            if (sgn(dot(c.normal, l)) != 0) return false;
    }
    return true;
}

class PolySet {
  public:
    static PolySet from_pieces(std::size_t dim, std::vector<Polyhedron> pieces)
    {
        for (const auto& p : pieces)
            if (p.dim() != dim) throw DimensionMismatch("PolySet: piece of wrong dimension");
        PolySet s;
        s.dim_ = dim;
        s.pieces_ = std::move(pieces);
        s.canonicalize();
        return s;
    }

    static PolySet empty_set(std::size_t dim) { return from_pieces(dim, {}); }
    static PolySet whole_space(std::size_t dim)
    {
        return from_pieces(dim, {Polyhedron::whole_space(dim)});
    }
    static PolySet single(const Polyhedron& p) { return from_pieces(p.dim(), {p}); }
    static PolySet single_point(const RatVector& x)
    {
        return single(Polyhedron::single_point(x));
    }

    std::size_t dim() const { return dim_; }
    bool is_empty() const { return pieces_.empty(); }
    const std::vector<Polyhedron>& pieces() const { return pieces_; }

    bool member(const RatVector& x) const
    {
        if (x.size() != dim_) throw DimensionMismatch("member: point of wrong dimension");
        for (const auto& p : pieces_)
            if (p.contains(x)) return true;
        return false;
    }

    bool operator==(const PolySet& o) const { return dim_ == o.dim_ && pieces_ == o.pieces_; }
    bool operator!=(const PolySet& o) const { return !(*this == o); }

  private:
    void canonicalize()
    {
        std::erase_if(pieces_, [](const Polyhedron& p) { return p.is_empty(); });
        std::sort(pieces_.begin(), pieces_.end());
        pieces_.erase(std::unique(pieces_.begin(), pieces_.end()), pieces_.end());
        // Prune pieces contained in another single piece. After deduplication
        // containment between distinct pieces is strict, so marking is safe.
        std::vector<Polyhedron> kept;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < pieces_.size() && !dominated; ++j)
                if (i != j && convex_subset(pieces_[i], pieces_[j])) dominated = true;
            if (!dominated) kept.push_back(pieces_[i]);
        }
        pieces_ = std::move(kept);
    }

    std::size_t dim_ = 0;
    std::vector<Polyhedron> pieces_;
};

struct SubsetResult {
    bool holds = false;
    std::optional<RatVector> witness;  // point of a outside b when holds is false
};

namespace detail {

struct SplitPlane {
    RatVector normal;
    Rational offset;
};

/**
 * Region-splitting coverage test: is the convex piece p covered by the union
 * of `pieces`? If p fits inside one piece we are done; otherwise p is split
 * along some constraint hyperplane of the union and both halves recurse
 * (each hyperplane is consumed on its path, which bounds the depth). If no
 * hyperplane splits p properly, p's relative interior avoids every piece not
 * containing p entirely, so its relative-interior point is a witness.
 */
inline bool covered_by_union(const Polyhedron& p, const std::vector<Polyhedron>& pieces,
                             std::vector<SplitPlane> planes, std::optional<RatVector>& witness)
{
    if (p.is_empty()) return true;
    for (const auto& q : pieces)
        if (convex_subset(p, q)) return true;
    for (std::size_t h = 0; h < planes.size(); ++h) {
        HRep below_h = p.hrep(), above_h = p.hrep();
        below_h.ineqs.push_back({planes[h].normal, planes[h].offset});
        above_h.ineqs.push_back({negate(planes[h].normal), -planes[h].offset});
        Polyhedron below = Polyhedron::from_hrep(p.dim(), below_h);
        Polyhedron above = Polyhedron::from_hrep(p.dim(), above_h);
        if (below == p || above == p) continue;  // hyperplane does not split p properly
        std::vector<SplitPlane> rest = planes;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(h));
        return covered_by_union(below, pieces, rest, witness) &&
               covered_by_union(above, pieces, std::move(rest), witness);
    }
    witness = p.relint_point();
    return false;
}

inline std::vector<SplitPlane> split_planes(const std::vector<Polyhedron>& pieces)
{
    std::vector<RatVector> rows;
    for (const auto& q : pieces) {
        for (const auto& c : q.hrep().ineqs) rows.push_back(scale_primitive_signed(augmented(c)));
        for (const auto& c : q.hrep().eqs) rows.push_back(scale_primitive_signed(augmented(c)));
    }
    std::sort(rows.begin(), rows.end(), lex_less);
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::vector<SplitPlane> planes;
    for (const auto& r : rows) {
        SplitPlane sp;
        sp.normal.assign(r.begin(), r.end() - 1);
        sp.offset = r.back();
        if (!is_zero(sp.normal)) planes.push_back(std::move(sp));
    }
    return planes;
}

}  // namespace detail

/** Set inclusion a ⊆ b with an exact witness point of a \ b on failure. */
inline SubsetResult subset(const PolySet& a, const PolySet& b)
{
    if (a.dim() != b.dim()) throw DimensionMismatch("subset: ambient dimensions differ");
    SubsetResult res;
    res.holds = true;
    if (a.is_empty()) return res;
    std::vector<detail::SplitPlane> planes = detail::split_planes(b.pieces());
    for (const auto& p : a.pieces()) {
        std::optional<RatVector> w;
        if (!detail::covered_by_union(p, b.pieces(), planes, w)) {
            res.holds = false;
            res.witness = std::move(w);
            return res;
        }
    }
    return res;
}

inline bool set_equal(const PolySet& a, const PolySet& b)
{
    if (a == b) return true;  // canonical forms equal — fast path
    return subset(a, b).holds && subset(b, a).holds;
}

inline PolySet union_sets(const PolySet& a, const PolySet& b)
{
    if (a.dim() != b.dim()) throw DimensionMismatch("union_sets: ambient dimensions differ");
    std::vector<Polyhedron> pieces = a.pieces();
    pieces.insert(pieces.end(), b.pieces().begin(), b.pieces().end());
    return PolySet::from_pieces(a.dim(), std::move(pieces));
}

inline PolySet minkowski_sum_sets(const PolySet& a, const PolySet& b)
{
    if (a.dim() != b.dim()) throw DimensionMismatch("minkowski_sum_sets: ambient dimensions differ");
    std::vector<Polyhedron> pieces;
    for (const auto& p : a.pieces())
        for (const auto& q : b.pieces()) pieces.push_back(minkowski_sum(p, q));
    return PolySet::from_pieces(a.dim(), std::move(pieces));
}

inline PolySet intersect_sets(const PolySet& a, const PolySet& b)
{
    if (a.dim() != b.dim()) throw DimensionMismatch("intersect_sets: ambient dimensions differ");
    std::vector<Polyhedron> pieces;
    for (const auto& p : a.pieces())
        for (const auto& q : b.pieces()) pieces.push_back(intersect(p, q));
    return PolySet::from_pieces(a.dim(), std::move(pieces));
}

inline PolySet project_set(const PolySet& a, const std::vector<std::size_t>& keep)
{
    std::vector<Polyhedron> pieces;
    for (const auto& p : a.pieces()) pieces.push_back(project(p, keep));
    return PolySet::from_pieces(keep.size(), std::move(pieces));
}

inline PolySet affine_image_set(const PolySet& a, const RatMatrix& m, const RatVector& b)
{
    std::vector<Polyhedron> pieces;
    for (const auto& p : a.pieces()) pieces.push_back(affine_image(p, m, b));
    return PolySet::from_pieces(m.rows, std::move(pieces));
}

inline PolySet translate_set(const PolySet& a, const RatVector& t)
{
    std::vector<Polyhedron> pieces;
    for (const auto& p : a.pieces()) pieces.push_back(translate(p, t));
    return PolySet::from_pieces(a.dim(), std::move(pieces));
}

inline PolySet permute_coords_set(const PolySet& a, const std::vector<std::size_t>& perm)
{
    std::vector<Polyhedron> pieces;
    for (const auto& p : a.pieces()) pieces.push_back(permute_coords(p, perm));
    return PolySet::from_pieces(a.dim(), std::move(pieces));
}

inline PolySet fix_coords_set(const PolySet& a,
                              const std::vector<std::pair<std::size_t, Rational>>& assignment)
{
    std::vector<Polyhedron> pieces;
    for (const auto& p : a.pieces()) pieces.push_back(fix_coords(p, assignment));
    return PolySet::from_pieces(a.dim() - assignment.size(), std::move(pieces));
}

inline PolySet product_sets(const PolySet& a, const PolySet& b)
{
    std::vector<Polyhedron> pieces;
    for (const auto& p : a.pieces())
        for (const auto& q : b.pieces()) pieces.push_back(product(p, q));
    return PolySet::from_pieces(a.dim() + b.dim(), std::move(pieces));
}

/** A PolySet all of whose pieces are closed convex cones with apex 0. */
class ConeUnion {
  public:
    ConeUnion() = default;

    static ConeUnion from_set(PolySet s)
    {
        for (const auto& p : s.pieces())
            if (!p.is_cone()) throw NotACone("ConeUnion: piece is not a cone at the origin");
        ConeUnion c;
        c.set_ = std::move(s);
        return c;
    }

    static ConeUnion zero(std::size_t dim)
    {
        return from_set(PolySet::single_point(RatVector(dim, Rational(0))));
    }

    const PolySet& set() const { return set_; }
    std::size_t dim() const { return set_.dim(); }
    bool member(const RatVector& x) const { return set_.member(x); }
    bool is_zero_cone() const
    {
        return set_.pieces().size() == 1 && set_.pieces()[0].poly_dim() == 0;
    }

    bool operator==(const ConeUnion& o) const { return set_ == o.set_; }

  private:
    PolySet set_;
};

/** One cell of the hyperplane-arrangement refinement around an anchor point.
 *  `closure` is the closed cell; the stratum itself is its relative interior,
 *  with `rep` an exact relative-interior point and `active` the indices of the
 *  pieces containing that relative interior. */
struct ArrangementCell {
    Polyhedron closure;
    std::vector<std::size_t> active;
    RatVector rep;
};

/**
 * All cells of the common refinement of the constraint hyperplanes of all
 * pieces whose closure contains `anchor` and whose relative interior lies in
 * s. Within each cell's relative interior, membership in every piece (hence
 * every active set and every regular normal cone downstream) is constant,
 * because every defining hyperplane of every piece keeps a constant sign
 * there. Hyperplanes not passing through the anchor are frozen to the side
 * the anchor lies on; hyperplanes through the anchor are branched over sign
 * vectors in {-1, 0, +1} with empty regions pruned incrementally.
 */
inline std::vector<ArrangementCell> arrangement_cells(const PolySet& s, const RatVector& anchor)
{
    if (!s.member(anchor)) throw PointNotInSet("arrangement_cells: anchor not in set");
    const std::size_t dim = s.dim();

    std::vector<RatVector> rows;
    for (const auto& piece : s.pieces()) {
        for (const auto& c : piece.hrep().ineqs)
            rows.push_back(scale_primitive_signed(detail::augmented(c)));
        for (const auto& c : piece.hrep().eqs)
            rows.push_back(scale_primitive_signed(detail::augmented(c)));
    }
    std::sort(rows.begin(), rows.end(), lex_less);
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

    HRep base;
    std::vector<LinearConstraint> through;  // hyperplanes containing the anchor
    for (const auto& r : rows) {
        LinearConstraint c = detail::from_augmented(r);
        if (is_zero(c.normal)) continue;
        const Rational v = dot(c.normal, anchor);
        if (v == c.offset)
            through.push_back(std::move(c));
        else if (v < c.offset)
            base.ineqs.push_back(std::move(c));  // anchor strictly below: freeze <=
        else
            base.ineqs.push_back({negate(c.normal), -c.offset});  // freeze >=
    }

    std::vector<ArrangementCell> cells;
    std::vector<int> signs(through.size(), 0);

    auto emit = [&](const Polyhedron& region) {
        if (region.is_empty()) return;
        RatVector rep = region.relint_point();
        // Genuine-cell test: the representative must be strict on every
        // hyperplane branched strictly; otherwise this sign vector describes
        // a degenerate duplicate of a lower stratum.
        for (std::size_t i = 0; i < through.size(); ++i) {
            if (signs[i] == 0) continue;
            if (dot(through[i].normal, rep) == through[i].offset) return;
        }
        std::vector<std::size_t> active;
        for (std::size_t k = 0; k < s.pieces().size(); ++k)
            if (s.pieces()[k].contains(rep)) active.push_back(k);
        if (active.empty()) return;  // cell leaves the set
        cells.push_back({region, std::move(active), std::move(rep)});
    };

    // Depth-first branch over sign vectors with incremental emptiness pruning.
    auto descend = [&](auto&& self, std::size_t level, const HRep& sofar) -> void {
        Polyhedron region = Polyhedron::from_hrep(dim, sofar);
        if (region.is_empty()) return;
        if (level == through.size()) {
            emit(region);
            return;
        }
        const LinearConstraint& c = through[level];
        for (int sign_choice : {-1, 0, +1}) {
            signs[level] = sign_choice;
            HRep next = sofar;
            if (sign_choice == 0)
                next.eqs.push_back(c);
            else if (sign_choice < 0)
                next.ineqs.push_back(c);
            else
                next.ineqs.push_back({negate(c.normal), -c.offset});
            self(self, level + 1, next);
        }
        signs[level] = 0;
    };
    descend(descend, 0, base);

    std::sort(cells.begin(), cells.end(), [](const ArrangementCell& a, const ArrangementCell& b) {
        int c = Polyhedron::compare(a.closure, b.closure);
        if (c != 0) return c < 0;
        return a.active < b.active;
    });
    return cells;
}

}  // namespace ordsub

#endif  // ORDSUB_POLYSET_HPP
