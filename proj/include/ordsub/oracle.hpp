/**
 * Brute-force reference implementations for low dimensions (<= 3).  Nothing
 * here uses polarity, double description, or the stratification engine: cones
 * are probed directly from their definitions on explicit rational direction
 * samples, so that every verdict is exact and independently trustworthy.
 *
 * Soundness of the limiting-cone sampler relies on shrinking the probe
 * neighborhood until no constraint surface that misses the base point can
 * interfere; the shrink factor is a conservative rational bound read off the
 * instance data, mirroring the r -> 0 limit in the definition.
 */

#ifndef ORDSUB_ORACLE_HPP
#define ORDSUB_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "ordsub/polyset.hpp"

namespace ordsub {

/** Rational probe grid: center +- k*radius/resolution per axis, |k| <= resolution. */
struct SampleGrid {
    RatVector center;
    Rational radius;
    long resolution = 8;
};

namespace detail {

inline void check_oracle_dim(std::size_t dim)
{
    if (dim > 3) throw DimensionTooLarge("oracle: only dimensions <= 3 are supported");
}

/** All v = k/n with integer k, |k|_1 = n: the rational l1-sphere lattice. */
inline std::vector<RatVector> diamond_directions(std::size_t dim, long n)
{
    std::vector<RatVector> out;
    std::vector<long> k(dim, 0);
    auto rec = [&](auto&& self, std::size_t pos, long budget) -> void {
        if (pos + 1 == dim) {
            for (long sign = -1; sign <= 1; sign += 2) {
                k[pos] = sign * budget;
                RatVector v(dim);
                for (std::size_t i = 0; i < dim; ++i) v[i] = Rational(k[i]) / Rational(n);
                out.push_back(std::move(v));
                if (budget == 0) break;  // +0 and -0 coincide
            }
            return;
        }
        for (long a = -budget; a <= budget; ++a) {
            k[pos] = a;
            self(self, pos + 1, budget - (a < 0 ? -a : a));
        }
    };
    rec(rec, 0, n);
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline Rational sum_norm(const RatVector& v)
{
    Rational s(0);
    for (const auto& c : v) s += abs(c);
    return s;
}

/**
 * A step length below which moving from x by any direction of sup-norm <= 1
 * cannot flip the sign of any constraint that is off its boundary at x.
 * Within that radius the local shape of the set is exactly its shape at x.
 */
inline Rational stable_radius(const PolySet& s, const RatVector& x)
{
    Rational r(1);
    auto visit = [&](const LinearConstraint& c) {
        Rational gap = c.offset - dot(c.normal, x);
        if (gap < 0) gap = -gap;
        if (gap == 0) return;
        Rational bound = gap / (sum_norm(c.normal) + 1);
        if (bound < r) r = bound;
    };
    for (const auto& p : s.pieces()) {
        for (const auto& c : p.hrep().ineqs) visit(c);
        for (const auto& c : p.hrep().eqs) visit(c);
    }
    return r;
}

}  // namespace detail

/**
 * Dual directions v on the l1-sphere lattice of order `dirs` satisfying
 * <v, d> <= 0 for every lattice direction d that points into s from x.  The
 * zero vector is always included.
 */
inline std::vector<RatVector> sampled_frechet_cone(const PolySet& s, const RatVector& x, long dirs)
{
    detail::check_oracle_dim(s.dim());
    if (!s.member(x)) throw PointNotInSet("sampled_frechet_cone: point not in set");

    const Rational step = detail::stable_radius(s, x);
    std::vector<RatVector> lattice = detail::diamond_directions(s.dim(), dirs);
    std::vector<RatVector> tangents;
    for (const auto& d : lattice)
        if (s.member(axpy(x, step, d))) tangents.push_back(d);

    std::vector<RatVector> accepted;
    accepted.push_back(RatVector(s.dim(), Rational(0)));
    for (const auto& v : lattice) {
        bool ok = true;
        for (const auto& d : tangents)
            if (sign(dot(v, d)) > 0) {
                ok = false;
                break;
            }
        if (ok) accepted.push_back(v);
    }
    return accepted;
}

/**
 * Union of sampled regular normal cones over the grid points of s near the
 * base point.  The effective radius is clamped to the stable neighborhood of
 * the base point so that every probed cell is incident to it.
 */
inline std::vector<RatVector> sampled_limiting_cone(const PolySet& s, const RatVector& xbar,
                                                    const SampleGrid& grid, long dirs)
{
    detail::check_oracle_dim(s.dim());
    if (!s.member(xbar)) throw PointNotInSet("sampled_limiting_cone: point not in set");
    if (grid.resolution < 3) throw EmptyInput("sampled_limiting_cone: grid resolution must be >= 3");

    Rational radius = grid.radius;
    const Rational stable = detail::stable_radius(s, xbar);
    if (radius > stable) radius = stable;
    const Rational spacing = radius / grid.resolution;

    const std::size_t dim = s.dim();
    std::set<RatVector, bool (*)(const RatVector&, const RatVector&)> found(lex_less);

    std::vector<long> k(dim, -grid.resolution);
    bool done = false;
    while (!done) {
        RatVector p = grid.center;
        for (std::size_t i = 0; i < dim; ++i) p[i] += Rational(k[i]) * spacing;
        if (s.member(p))
            for (auto& v : sampled_frechet_cone(s, p, dirs)) found.insert(std::move(v));
        std::size_t i = 0;
        for (; i < dim; ++i) {
            if (k[i] < grid.resolution) {
                ++k[i];
                break;
            }
            k[i] = -grid.resolution;
        }
        done = (i == dim);
    }
    return {found.begin(), found.end()};
}

/** Two-sided comparison of an exact cone union against oracle samples. */
struct OracleCompareReport {
    bool sound = true;                  // every sample is a member of the exact cone
    std::vector<RatVector> unsound;     // samples outside the exact cone
    std::size_t generators_total = 0;   // generator rays of the exact cone
    std::size_t generators_covered = 0; // ... approximated by an accepted sample
    Rational coverage;                  // covered / total, 1 when there is nothing to cover
};

inline OracleCompareReport compare_cones(const ConeUnion& exact,
                                         const std::vector<RatVector>& sampled,
                                         long resolution = 64)
{
    OracleCompareReport report;
    for (const auto& v : sampled)
        if (!exact.member(v)) {
            report.sound = false;
            report.unsound.push_back(v);
        }

    // Generators: extreme rays and +-lines of every piece, normalized to the
    // l1-sphere; covered when an accepted nonzero sample lies within
    // 1/resolution in the l1 metric.
    std::vector<RatVector> generators;
    for (const auto& piece : exact.set().pieces()) {
        for (const auto& r : piece.vrep().rays) generators.push_back(r);
        for (const auto& l : piece.vrep().lines) {
            generators.push_back(l);
            generators.push_back(negate(l));
        }
    }
    std::sort(generators.begin(), generators.end(), lex_less);
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

    const Rational tol = Rational(1) / Rational(resolution);
    report.generators_total = generators.size();
    for (const auto& g : generators) {
        RatVector ghat = scale(Rational(1) / detail::sum_norm(g), g);
        bool covered = false;
        for (const auto& v : sampled) {
            if (is_zero(v)) continue;
            if (detail::sum_norm(sub(v, ghat)) <= tol) {
                covered = true;
                break;
            }
        }
        if (covered) ++report.generators_covered;
    }
    report.coverage = report.generators_total == 0
                          ? Rational(1)
                          : Rational(static_cast<long>(report.generators_covered)) /
                                Rational(static_cast<long>(report.generators_total));
    return report;
}

}  // namespace ordsub

#endif  // ORDSUB_ORACLE_HPP
