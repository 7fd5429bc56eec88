/**
 * Shared helpers for the test suites: a deterministic random source (stable
 * across platforms, unlike std::uniform_int_distribution) and generators for
 * random rational geometry at desk scale.
 */

#ifndef ORDSUB_TEST_SUPPORT_HPP
#define ORDSUB_TEST_SUPPORT_HPP

#include <cstdint>
#include <random>

#include "ordsub/polyhedron.hpp"

namespace testsupport {

using namespace ordsub;

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /** Uniform-ish integer in [lo, hi]; modulo bias is irrelevant at these ranges. */
    long pick(long lo, long hi)
    {
        return lo + static_cast<long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rational rational(long max_abs_num = 8, long max_den = 4)
    {
        Rational q(pick(-max_abs_num, max_abs_num), pick(1, max_den));
        q.canonicalize();
        return q;
    }

    RatVector vector(std::size_t dim, long max_abs_num = 8, long max_den = 4)
    {
        RatVector v(dim);
        for (auto& c : v) c = rational(max_abs_num, max_den);
        return v;
    }

  private:
    std::mt19937_64 eng_;
};

inline Polyhedron box(const RatVector& lo, const RatVector& hi)
{
    HRep h;
    const std::size_t n = lo.size();
    for (std::size_t i = 0; i < n; ++i) {
        RatVector up(n, Rational(0)), down(n, Rational(0));
        up[i] = 1;
        down[i] = -1;
        h.ineqs.push_back({up, hi[i]});
        h.ineqs.push_back({down, -lo[i]});
    }
    return Polyhedron::from_hrep(n, h);
}

inline Polyhedron interval(const Rational& lo, const Rational& hi)
{
    return box({lo}, {hi});
}

/** Random H-rep polyhedron with small integer data; may be empty or unbounded. */
inline Polyhedron random_polyhedron(Rng& rng, std::size_t dim, std::size_t max_constraints = 5)
{
    HRep h;
    const std::size_t k = static_cast<std::size_t>(rng.pick(1, static_cast<long>(max_constraints)));
    for (std::size_t i = 0; i < k; ++i) {
        LinearConstraint c;
        c.normal = rng.vector(dim, 3, 1);
        c.offset = rng.rational(4, 1);
        if (is_zero(c.normal)) c.normal[static_cast<std::size_t>(rng.pick(0, static_cast<long>(dim) - 1))] = 1;
        h.ineqs.push_back(std::move(c));
    }
    return Polyhedron::from_hrep(dim, h);
}

/** Random nonempty polytope: random constraints intersected with a box. */
inline Polyhedron random_polytope(Rng& rng, std::size_t dim, std::size_t max_constraints = 4)
{
    for (;;) {
        Polyhedron p = random_polyhedron(rng, dim, max_constraints);
        Polyhedron b = box(RatVector(dim, Rational(-5)), RatVector(dim, Rational(5)));
        Polyhedron q = intersect(p, b);
        if (!q.is_empty()) return q;
    }
}

/** Random polyhedral cone with apex 0 from a handful of generator rays. */
inline Polyhedron random_cone(Rng& rng, std::size_t dim, std::size_t max_rays = 4)
{
    VRep v;
    v.vertices.push_back(RatVector(dim, Rational(0)));
    const std::size_t k = static_cast<std::size_t>(rng.pick(1, static_cast<long>(max_rays)));
    for (std::size_t i = 0; i < k; ++i) {
        RatVector r = rng.vector(dim, 3, 1);
        if (!is_zero(r)) v.rays.push_back(std::move(r));
    }
    return Polyhedron::from_vrep(dim, v);
}

/**
 * Membership via the generator representation, independent of the H-rep of p:
 * feasibility of the convex-conic combination system
 *   sum_i lambda_i v_i + sum_j mu_j r_j + sum_k nu_k l_k = x,
 *   lambda >= 0, mu >= 0, sum lambda = 1,
 * decided exactly by building that system as a polyhedron.
 */
inline bool member_via_generators(const Polyhedron& p, const RatVector& x)
{
    if (p.is_empty()) return false;
    const auto& v = p.vrep();
    const std::size_t nv = v.vertices.size(), nr = v.rays.size(), nl = v.lines.size();
    const std::size_t nvar = nv + nr + nl;
    HRep h;
    for (std::size_t coord = 0; coord < p.dim(); ++coord) {
        LinearConstraint eq;
        eq.normal.assign(nvar, Rational(0));
        for (std::size_t j = 0; j < nv; ++j) eq.normal[j] = v.vertices[j][coord];
        for (std::size_t j = 0; j < nr; ++j) eq.normal[nv + j] = v.rays[j][coord];
        for (std::size_t j = 0; j < nl; ++j) eq.normal[nv + nr + j] = v.lines[j][coord];
        eq.offset = x[coord];
        h.eqs.push_back(std::move(eq));
    }
    LinearConstraint sum_to_one;
    sum_to_one.normal.assign(nvar, Rational(0));
    for (std::size_t j = 0; j < nv; ++j) sum_to_one.normal[j] = 1;
    sum_to_one.offset = 1;
    h.eqs.push_back(sum_to_one);
    for (std::size_t j = 0; j < nv + nr; ++j) {
        LinearConstraint pos;
        pos.normal.assign(nvar, Rational(0));
        pos.normal[j] = -1;
        pos.offset = 0;
        h.ineqs.push_back(std::move(pos));
    }
    return !Polyhedron::from_hrep(nvar, h).is_empty();
}

}  // namespace testsupport

#endif  // ORDSUB_TEST_SUPPORT_HPP
