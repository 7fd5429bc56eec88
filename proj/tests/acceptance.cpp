/**
 * Release gate for the ordered-subdifferential toolkit.  Each numbered suite
 * exercises one release criterion end to end — the two worked desk examples,
 * the identity and soundness fuzz suites, the sampling oracle, the
 * well-posedness criteria, the regular-within-limiting containment audit,
 * and byte-level determinism of the command-line reports — and prints a
 * single PASS/FAIL line.  The exit status is the number of failed suites.
 *
 * Usage: acceptance <instances-dir> <cli-binary>
 */

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <sys/wait.h>

#include "map_fixtures.hpp"
#include "ordsub/instance.hpp"
#include "ordsub/oracle.hpp"

using namespace ordsub;
using namespace fixtures;
using testsupport::Rng;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail)
{
    std::printf("[%2d] %s  %s%s%s\n", id, ok ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

/** Run one suite, turning stray exceptions into a FAIL rather than an abort. */
void suite(int id, const std::string& name,
           const std::function<std::pair<bool, std::string>()>& body)
{
    try {
        auto [ok, detail] = body();
        report(id, name, ok, detail);
    } catch (const std::exception& e) {
        report(id, name, false, std::string("exception: ") + e.what());
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RatVector rv(std::initializer_list<long> xs)
{
    RatVector v;
    for (long x : xs) v.push_back(Rational(x));
    return v;
}

PolySet interval_set(long lo, long hi)
{
    return PolySet::single(testsupport::interval(Rational(lo), Rational(hi)));
}

Polyhedron from_rows(std::size_t dim, const std::vector<std::vector<long>>& ineqs,
                     const std::vector<std::vector<long>>& eqs = {})
{
    HRep h;
    auto row = [&](const std::vector<long>& r) {
        LinearConstraint c;
        for (std::size_t i = 0; i < dim; ++i) c.normal.push_back(Rational(r[i]));
        c.offset = Rational(r[dim]);
        return c;
    };
    for (const auto& r : ineqs) h.ineqs.push_back(row(r));
    for (const auto& r : eqs) h.eqs.push_back(row(r));
    return Polyhedron::from_hrep(dim, h);
}

Instance load_instance_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("acceptance: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

bool hyp_verified(const CheckReport& r, const std::string& name)
{
    for (const auto& h : r.hypotheses)
        if (h.name == name) return h.status == HypStatus::verified;
    return false;
}

/** Smallest boundary value of the generalized epigraph slice at x, if the
 *  slice has one: a sound base point for nondegenerate subdifferentials. */
std::optional<RatVector> boundary_value(const PolyMap& f, const OrderCone& theta,
                                        const RatVector& x)
{
    PolySet vals = eval(epi_map(f, theta), x);
    std::vector<RatVector> verts;
    for (const auto& p : vals.pieces())
        for (const auto& v : p.vrep().vertices) verts.push_back(v);
    if (verts.empty()) return std::nullopt;
    std::sort(verts.begin(), verts.end(), lex_less);
    return verts.front();
}

// ---------------------------------------------------------------------------
// Containment audit, accumulated across the suites and settled by suite 9:
// the regular cone (respectively regular subdifferential) must sit inside its
// limiting counterpart at every base point any suite touches.
// ---------------------------------------------------------------------------

struct Audit {
    long checked = 0;
    long violations = 0;
} audit;

void audit_set(const PolySet& s, const RatVector& x)
{
    PolySet regular = PolySet::single(frechet_normal_cone(s, x));
    if (!subset(regular, limiting_normal_cone(s, x).set()).holds) ++audit.violations;
    ++audit.checked;
}

void audit_map(const PolyMap& f, const OrderCone& theta, const RatVector& x,
               const RatVector& z)
{
    SubdiffResult r = subdiff(f, theta, x, z, ConeKind::regular);
    SubdiffResult l = subdiff(f, theta, x, z, ConeKind::limiting);
    bool ok = subset(r.set, l.set).holds && subset(r.pairs, l.pairs).holds;
    PolySet rs = singular_subdiff(f, theta, x, z, ConeKind::regular).set;
    PolySet ls = singular_subdiff(f, theta, x, z, ConeKind::limiting).set;
    if (!(ok && subset(rs, ls).holds)) ++audit.violations;
    ++audit.checked;
}

// ---------------------------------------------------------------------------
// Suite 1: kinked-pair instance — the sum rule holds with exact equality.
// ---------------------------------------------------------------------------

std::pair<bool, std::string> suite_kinked_pair(const std::string& dir)
{
    auto t0 = std::chrono::steady_clock::now();
    Instance inst = load_instance_file(dir + "/example_4_9.json");
    const PolyMap& f1 = get_map(inst, "F1");
    const PolyMap& f2 = get_map(inst, "F2");
    const OrderCone& theta = get_cone(inst, "Theta");
    const RatVector& p0 = get_point(inst, "p0");
    RatVector x{p0[0]}, z{p0[1]};

    PolyMap total = sum_map(f1, f2);
    PolySet lhs = subdiff(total, theta, x, z, ConeKind::limiting).set;
    PolySet rhs = minkowski_sum_sets(subdiff(f1, theta, x, z, ConeKind::limiting).set,
                                     subdiff(f2, theta, x, z, ConeKind::limiting).set);
    bool ok = set_equal(lhs, interval_set(-1, 1));
    ok = ok && set_equal(lhs, rhs);

    CheckReport r = run_check(inst, inst.checks.at(0));
    ok = ok && r.verdict == Verdict::equality_holds;

    audit_map(total, theta, x, z);
    audit_map(f1, theta, x, z);
    audit_map(f2, theta, x, z);

    double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    std::ostringstream d;
    d << "subdiff of the sum = [-1,1] = sum of subdiffs, " << dt << " s";
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// Suite 2: epigraph-pair instance — the sum rule inclusion is strict.
// ---------------------------------------------------------------------------

std::pair<bool, std::string> suite_epigraph_pair(const std::string& dir)
{
    auto t0 = std::chrono::steady_clock::now();
    Instance inst = load_instance_file(dir + "/example_4_10.json");
    const PolyMap& f1 = get_map(inst, "F1");
    const PolyMap& f2 = get_map(inst, "F2");
    const OrderCone& theta = get_cone(inst, "Theta");
    const RatVector& p0 = get_point(inst, "p0");
    RatVector x{p0[0]}, z{p0[1]};

    PolySet two_points = PolySet::from_pieces(
        1, {Polyhedron::single_point(rv({-1})), Polyhedron::single_point(rv({1}))});
    PolySet origin = PolySet::single_point(rv({0}));

    bool ok = set_equal(subdiff(f1, theta, x, z, ConeKind::limiting).set, interval_set(-1, 1));
    ok = ok && set_equal(subdiff(f2, theta, x, z, ConeKind::limiting).set, two_points);
    ok = ok && set_equal(singular_subdiff(f1, theta, x, z, ConeKind::limiting).set, origin);
    ok = ok && set_equal(singular_subdiff(f2, theta, x, z, ConeKind::limiting).set, origin);
    PolyMap total = sum_map(f1, f2);
    ok = ok && set_equal(subdiff(total, theta, x, z, ConeKind::limiting).set, origin);

    CheckReport r = run_check(inst, inst.checks.at(0));
    ok = ok && r.verdict == Verdict::inclusion_holds;
    ok = ok && !r.witnesses.empty();
    ok = ok && set_equal(r.rhs, interval_set(-2, 2));

    audit_map(total, theta, x, z);
    audit_map(f1, theta, x, z);
    audit_map(f2, theta, x, z);

    double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    std::ostringstream d;
    d << "strict inclusion {0} in [-2,2] with witness, " << dt << " s";
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// Suite 3: the epigraphical sum identity on 200 random pairs.
// ---------------------------------------------------------------------------

std::pair<bool, std::string> suite_epi_sum_identity()
{
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(101);
    const int total = 200;
    int pass = 0;
    auto run_one = [&](const PolyMap& f1, const PolyMap& f2, const OrderCone& theta) {
        if (check_epi_sum_identity(f1, f2, theta).verdict == Verdict::equality_holds) ++pass;
    };
    for (int i = 0; i < total; ++i) {
        switch (i % 4) {
            case 0:
            case 1: run_one(random_map_1d(rng), random_map_1d(rng), random_theta(rng, 1)); break;
            case 2:
                run_one(random_map_dom2(rng), random_map_dom2(rng), random_theta(rng, 1));
                break;
            default:
                run_one(random_map_rng2(rng), random_map_rng2(rng), random_theta(rng, 2));
                break;
        }
    }
    double dt = seconds_since(t0);
    bool ok = pass == total && dt < 60.0;
    std::ostringstream d;
    d << pass << "/" << total << " exact equalities, " << dt << " s";
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// Suite 4: the indicator identity — singular subdifferential of the indicator
// map equals the limiting normal cone — on 50 random sets at 3 points each.
// ---------------------------------------------------------------------------

std::pair<bool, std::string> suite_indicator_identity()
{
    Rng rng(103);
    const int sets = 50;
    int pass = 0, total = 0;
    for (int s = 0; s < sets; ++s) {
        const std::size_t dim = static_cast<std::size_t>(s % 2) + 1;
        std::vector<Polyhedron> pieces;
        const long want = rng.pick(1, 3);
        for (long i = 0; i < want; ++i) {
            if (rng.pick(0, 2) == 0) {
                Polyhedron p = testsupport::random_polyhedron(rng, dim);
                if (!p.is_empty()) pieces.push_back(std::move(p));
            } else {
                pieces.push_back(testsupport::random_polytope(rng, dim));
            }
        }
        if (pieces.empty()) pieces.push_back(testsupport::random_polytope(rng, dim));
        PolySet omega = PolySet::from_pieces(dim, std::move(pieces));

        std::vector<RatVector> pts;
        for (const auto& p : omega.pieces()) {
            pts.push_back(p.relint_point());
            const VRep& gen = p.vrep();
            for (const auto& v : gen.vertices) pts.push_back(v);
        }
        std::sort(pts.begin(), pts.end(), lex_less);
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

        OrderCone theta = random_theta(rng, 1);
        PolyMap ind = indicator_map(omega, 1);
        for (int k = 0; k < 3; ++k) {
            const RatVector& x = pts[static_cast<std::size_t>(k) % pts.size()];
            ++total;
            CheckReport r = check_indicator_identity(omega, theta, x);
            PolySet sing = singular_subdiff(ind, theta, x, rv({0}), ConeKind::limiting).set;
            bool good = r.verdict == Verdict::equality_holds &&
                        set_equal(sing, limiting_normal_cone(omega, x).set());
            if (good) ++pass;
            audit_set(omega, x);
        }
    }
    bool ok = pass == total && total == 150;
    std::ostringstream d;
    d << pass << "/" << total << " exact set equalities";
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// Suite 5: sum-rule soundness fuzz — 200 qualification-verified instances
// must never produce a failed inclusion, plain or singular.
// ---------------------------------------------------------------------------

std::pair<bool, std::string> suite_sum_soundness()
{
    Rng rng(107);
    const int want = 200;
    int accepted = 0, informative = 0, bad = 0, attempts = 0;
    while (accepted < want && attempts < 3000) {
        ++attempts;
        PolyMap f1 = random_map_1d(rng);
        PolyMap f2 = random_map_1d(rng);
        OrderCone theta = attempts % 5 == 0 ? OrderCone::trivial(1) : theta_halfline();
        RatVector x{Rational(rng.pick(-4, 4)) / Rational(2)};
        PolyMap total = sum_map(f1, f2);
        auto z = boundary_value(total, theta, x);
        if (!z) continue;
        CheckReport r = check_sum_rule(f1, f2, theta, x, *z);
        if (!hyp_verified(r, "qualification")) continue;
        ++accepted;
        if (r.verdict == Verdict::inclusion_fails) ++bad;
        if (r.singular_verdict && *r.singular_verdict == Verdict::inclusion_fails) ++bad;
        if (r.verdict != Verdict::vacuous) ++informative;
        if (accepted % 10 == 0) audit_map(total, theta, x, *z);
    }
    bool ok = accepted == want && bad == 0 && informative >= 100;
    std::ostringstream d;
    d << accepted << " verified instances in " << attempts << " draws, " << informative
      << " informative, " << bad << " failed inclusions";
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// Suite 6: chain-rule soundness fuzz — 100 qualification-verified
// compositions — plus the desk chain example with exact equality.
// ---------------------------------------------------------------------------

std::pair<bool, std::string> suite_chain_soundness()
{
    Rng rng(109);
    const int want = 100;
    int accepted = 0, informative = 0, bad = 0, attempts = 0;
    while (accepted < want && attempts < 3000) {
        ++attempts;
        PolyMap g = random_map_1d(rng);
        OrderCone theta1 = theta_halfline();
        PlSpec outer = random_pl(rng);
        if (attempts % 3 == 0) {
            // Arbitrary outer data is sound once the intermediate cone is trivial.
            theta1 = OrderCone::trivial(1);
        } else {
            // Otherwise keep the outer mapping nondecreasing so that composing
            // with the epigraphical inner mapping stays consistent.
            for (auto& s : outer.slopes)
                if (s < 0) s = -s;
        }
        PolyMap f = pl_map(outer, static_cast<int>(rng.pick(0, 2)));

        RatVector x{Rational(rng.pick(-4, 4)) / Rational(2)};
        PolyMap total = compose(f, g);
        auto z = boundary_value(total, theta_halfline(), x);
        if (!z) continue;
        CheckReport r = check_chain_rule(g, f, theta1, theta_halfline(), x, *z);
        if (!hyp_verified(r, "qualification")) continue;
        ++accepted;
        if (r.verdict == Verdict::inclusion_fails) ++bad;
        if (r.singular_verdict && *r.singular_verdict == Verdict::inclusion_fails) ++bad;
        if (r.verdict != Verdict::vacuous) ++informative;
        if (accepted % 10 == 0) audit_map(total, theta_halfline(), x, *z);
    }

    CheckReport desk = check_chain_rule(abs_map(), ray_above_identity(), theta_halfline(),
                                        theta_halfline(), rv({0}), rv({0}));
    bool desk_ok = desk.verdict == Verdict::equality_holds &&
                   set_equal(desk.lhs, interval_set(-1, 1)) &&
                   set_equal(desk.rhs, interval_set(-1, 1));

    bool ok = accepted == want && bad == 0 && informative >= 50 && desk_ok;
    std::ostringstream d;
    d << accepted << " verified compositions in " << attempts << " draws, " << informative
      << " informative, " << bad << " failed inclusions, desk example "
      << (desk_ok ? "equal" : "WRONG");
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// Suite 7: sampling oracle — every sampled dual direction lies in the exact
// limiting cone, generator coverage is high, and dropping any piece of the
// exact cone is detected by the samples.
// ---------------------------------------------------------------------------

struct OracleCase {
    std::string name;
    PolySet set;
    RatVector xbar;
    long dirs;
    long res;
};

std::pair<bool, std::string> suite_oracle()
{
    std::vector<OracleCase> cases;
    auto add = [&](std::string name, PolySet s, RatVector x, long dirs, long res) {
        cases.push_back({std::move(name), std::move(s), std::move(x), dirs, res});
    };
    const Rational half = Rational(1) / Rational(2);

    // Dimension 1.
    add("point", PolySet::single(from_rows(1, {}, {{1, 0}})), rv({0}), 64, 4);
    add("right halfline", PolySet::single(from_rows(1, {{-1, 0}})), rv({0}), 64, 4);
    add("left halfline", PolySet::single(from_rows(1, {{1, 0}})), rv({0}), 64, 4);
    add("segment interior", PolySet::single(testsupport::interval(Rational(-1), Rational(1))),
        rv({0}), 64, 4);
    add("segment vertex", PolySet::single(testsupport::interval(Rational(0), Rational(2))),
        rv({0}), 64, 4);
    add("two segments",
        PolySet::from_pieces(1, {testsupport::interval(Rational(-2), Rational(-1)),
                                 testsupport::interval(Rational(0), Rational(3))}),
        rv({0}), 64, 4);

    // Dimension 2.
    add("quadrant", PolySet::single(from_rows(2, {{-1, 0, 0}, {0, -1, 0}})), rv({0, 0}), 64, 4);
    add("halfplane", PolySet::single(from_rows(2, {{-1, 0, 0}})), rv({0, 0}), 64, 4);
    add("axis line", PolySet::single(from_rows(2, {}, {{0, 1, 0}})), rv({0, 0}), 64, 4);
    add("planar point", PolySet::single_point(rv({0, 0})), rv({0, 0}), 64, 4);
    add("box corner", PolySet::single(testsupport::box(rv({0, 0}), rv({1, 1}))), rv({0, 0}),
        64, 4);
    add("box edge", PolySet::single(testsupport::box(rv({0, 0}), rv({1, 1}))),
        {Rational(0), half}, 64, 4);
    add("diamond vertex",
        PolySet::single(from_rows(2, {{1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}})),
        rv({1, 0}), 64, 4);
    add("tilted halfplane", PolySet::single(from_rows(2, {{1, 1, 0}})), rv({0, 0}), 64, 4);
    add("l-shape",
        PolySet::from_pieces(2, {from_rows(2, {{-1, 0, 0}, {0, -1, 0}}),
                                 from_rows(2, {{1, 0, 0}})}),
        rv({0, 0}), 64, 4);
    add("strip", PolySet::single(from_rows(2, {{0, -1, 0}, {0, 1, 1}})), rv({0, 0}), 64, 4);
    add("axis cross",
        PolySet::from_pieces(2, {from_rows(2, {}, {{0, 1, 0}}), from_rows(2, {}, {{1, 0, 0}})}),
        rv({0, 0}), 64, 4);
    add("triangle right-angle vertex",
        PolySet::single(from_rows(2, {{-1, 0, 0}, {0, -1, 0}, {1, 1, 2}})), rv({0, 0}), 64, 4);
    add("triangle acute vertex",
        PolySet::single(from_rows(2, {{-1, 0, 0}, {0, -1, 0}, {1, 1, 2}})), rv({2, 0}), 64, 4);
    add("vee epigraph", PolySet::single(from_rows(2, {{1, -1, 0}, {-1, -1, 0}})), rv({0, 0}),
        64, 4);
    add("vee graph",
        PolySet::from_pieces(2, {from_rows(2, {{-1, 0, 0}}, {{1, -1, 0}}),
                                 from_rows(2, {{1, 0, 0}}, {{1, 1, 0}})}),
        rv({0, 0}), 64, 4);
    add("opposite quadrants",
        PolySet::from_pieces(2, {from_rows(2, {{-1, 0, 0}, {0, -1, 0}}),
                                 from_rows(2, {{1, 0, 0}, {0, 1, 0}})}),
        rv({0, 0}), 64, 4);
    add("steep halfplane", PolySet::single(from_rows(2, {{3, 1, 0}})), rv({0, 0}), 64, 4);
    add("diagonal segment",
        PolySet::single(from_rows(2, {{1, 0, 1}, {-1, 0, 0}}, {{1, -1, 0}})), rv({0, 0}), 64, 4);

    // Dimension 3: axis-aligned data so the coarse direction lattice is exact.
    add("octant", PolySet::single(from_rows(3, {{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}})),
        rv({0, 0, 0}), 6, 3);
    add("halfspace", PolySet::single(from_rows(3, {{0, 0, 1, 0}})), rv({0, 0, 0}), 6, 3);
    add("coordinate plane", PolySet::single(from_rows(3, {}, {{0, 0, 1, 0}})), rv({0, 0, 0}),
        6, 3);
    add("coordinate axis", PolySet::single(from_rows(3, {}, {{0, 1, 0, 0}, {0, 0, 1, 0}})),
        rv({0, 0, 0}), 6, 3);
    add("spatial point", PolySet::single_point(rv({0, 0, 0})), rv({0, 0, 0}), 6, 3);
    add("box vertex", PolySet::single(testsupport::box(rv({0, 0, 0}), rv({1, 1, 1}))),
        rv({0, 0, 0}), 6, 3);

    long unsound_cases = 0, mutants = 0, detected = 0;
    long gen_total = 0, gen_covered = 0;
    for (const auto& c : cases) {
        ConeUnion exact = limiting_normal_cone(c.set, c.xbar);
        SampleGrid grid{c.xbar, Rational(1), c.res};
        std::vector<RatVector> sampled = sampled_limiting_cone(c.set, c.xbar, grid, c.dirs);
        OracleCompareReport rep = compare_cones(exact, sampled, 64);
        if (!rep.sound) ++unsound_cases;
        gen_total += static_cast<long>(rep.generators_total);
        gen_covered += static_cast<long>(rep.generators_covered);

        const auto& pieces = exact.set().pieces();
        for (std::size_t drop = 0; drop < pieces.size(); ++drop) {
            std::vector<Polyhedron> rest;
            for (std::size_t i = 0; i < pieces.size(); ++i)
                if (i != drop) rest.push_back(pieces[i]);
            ConeUnion mutant = ConeUnion::from_set(PolySet::from_pieces(c.set.dim(), rest));
            ++mutants;
            if (!compare_cones(mutant, sampled, 64).sound) ++detected;
        }
        audit_set(c.set, c.xbar);
    }

    bool ok = cases.size() == 30 && unsound_cases == 0;
    ok = ok && gen_total > 0 && gen_covered * 20 >= gen_total * 19;
    ok = ok && mutants > 0 && detected * 20 >= mutants * 19;
    std::ostringstream d;
    d << cases.size() << " cases sound except " << unsound_cases << ", coverage " << gen_covered
      << "/" << gen_total << ", mutants detected " << detected << "/" << mutants;
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// Suite 8: well-posedness — a hand-built truth table for the Lipschitz-like
// criterion, plus the exact adjoint identity for random affine maps.
// ---------------------------------------------------------------------------

std::pair<bool, std::string> suite_wellposedness()
{
    struct LLCase {
        std::string name;
        PolyMap f;
        RatVector x, z;
        bool expect;
    };
    std::vector<LLCase> table;
    auto put = [&](std::string name, PolyMap f, RatVector x, RatVector z, bool expect) {
        table.push_back({std::move(name), std::move(f), std::move(x), std::move(z), expect});
    };
    const Rational half = Rational(1) / Rational(2);

    RatMatrix two(1, 1);
    two.at(0, 0) = 2;
    RatMatrix row12(1, 2);
    row12.at(0, 0) = 1;
    row12.at(0, 1) = 1;
    RatMatrix col12(2, 1);
    col12.at(0, 0) = 1;
    col12.at(1, 0) = -1;
    PlSpec vee;
    vee.breakpoints = {Rational(0)};
    vee.slopes = {Rational(-2), Rational(2)};
    vee.value_at_zero = Rational(0);

    put("identity", affine_map(RatMatrix::identity(1), rv({0})), rv({0}), rv({0}), true);
    put("affine 2x-1", affine_map(two, rv({-1})), rv({1}), rv({1}), true);
    put("abs at kink", abs_map(), rv({0}), rv({0}), true);
    put("abs off kink", abs_map(), rv({1}), rv({1}), true);
    put("abs epigraph", abs_epi_map(), rv({0}), rv({0}), true);
    put("neg-abs epigraph", neg_abs_epi_map(), rv({0}), rv({0}), true);
    put("unit band", pl_map(PlSpec{{}, {Rational(1)}, Rational(0)}, 2), rv({0}), rv({0}), true);
    put("whole plane", PolyMap(1, 1, PolySet::whole_space(2)), rv({0}), rv({0}), true);
    put("constant segment", PolyMap(1, 1, PolySet::single(from_rows(2, {{0, -1, 0}, {0, 1, 1}}))),
        rv({0}), rv({0}), true);
    put("constant point", PolyMap(1, 1, PolySet::single(from_rows(2, {}, {{0, 1, 3}}))),
        rv({0}), rv({3}), true);
    put("planar affine", affine_map(row12, rv({0})), rv({0, 0}), rv({0}), true);
    put("embedding", affine_map(col12, rv({0, 0})), rv({0}), rv({0, 0}), true);
    put("steep vee", pl_map(vee, 0), rv({0}), rv({0}), true);
    put("steep vee epigraph", pl_map(vee, 1), rv({0}), rv({0}), true);
    put("abs epigraph off kink", abs_epi_map(), rv({2}), rv({2}), true);

    put("vertical ray", PolyMap(1, 1, PolySet::single(from_rows(2, {{0, -1, 0}}, {{1, 0, 0}}))),
        rv({0}), rv({0}), false);
    put("isolated graph point", PolyMap(1, 1, PolySet::single_point(rv({0, 0}))), rv({0}),
        rv({0}), false);
    put("step jump",
        PolyMap(1, 1,
                PolySet::from_pieces(2, {from_rows(2, {{1, 0, 0}}, {{0, 1, 0}}),
                                         from_rows(2, {{-1, 0, 0}}, {{0, 1, 1}})})),
        rv({0}), rv({0}), false);
    put("domain boundary", PolyMap(1, 1, PolySet::single(from_rows(2, {{-1, 0, 0}, {0, -1, 0}}))),
        rv({0}), rv({0}), false);
    put("vertical segment",
        PolyMap(1, 1,
                PolySet::from_pieces(2, {from_rows(2, {{0, -1, 0}, {0, 1, 1}}, {{1, 0, 0}}),
                                         from_rows(2, {{1, 0, 0}}, {{0, 1, 0}}),
                                         from_rows(2, {{-1, 0, 0}}, {{0, 1, 1}})})),
        rv({0}), {half}, false);

    int truth_pass = 0;
    std::string first_wrong;
    for (const auto& c : table) {
        if (is_lipschitz_like(c.f, c.x, c.z) == c.expect)
            ++truth_pass;
        else if (first_wrong.empty())
            first_wrong = c.name;
    }

    Rng rng(113);
    int adjoint_pass = 0;
    const int adjoint_total = 20;
    for (int t = 0; t < adjoint_total; ++t) {
        const std::size_t n = static_cast<std::size_t>(rng.pick(1, 3));
        const std::size_t m = static_cast<std::size_t>(rng.pick(1, 3));
        RatMatrix a(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) a.at(i, j) = Rational(rng.pick(-3, 3));
        RatVector b = rng.vector(m, 3, 2);
        RatVector x = rng.vector(n, 3, 2);
        RatVector zstar = rng.vector(m, 3, 2);
        PolyMap f = affine_map(a, b);
        RatVector fx = add(a.apply(x), b);
        PolySet cd = coderivative(f, x, fx, zstar, ConeKind::limiting);
        if (set_equal(cd, PolySet::single_point(a.transpose().apply(zstar)))) ++adjoint_pass;
    }

    bool ok = truth_pass == static_cast<int>(table.size()) && table.size() == 20 &&
              adjoint_pass == adjoint_total;
    std::ostringstream d;
    d << "truth table " << truth_pass << "/" << table.size();
    if (!first_wrong.empty()) d << " (first wrong: " << first_wrong << ")";
    d << ", adjoint identity " << adjoint_pass << "/" << adjoint_total;
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// Suite 9: containment audit — a dedicated sweep plus everything accumulated
// by the earlier suites; the regular object must sit inside the limiting one
// at every base point, with zero tolerance.
// ---------------------------------------------------------------------------

std::pair<bool, std::string> suite_containment()
{
    Rng rng(127);
    for (int t = 0; t < 40; ++t) {
        const std::size_t dim = static_cast<std::size_t>(t % 2) + 1;
        std::vector<Polyhedron> pieces;
        const long want = rng.pick(1, 2);
        for (long i = 0; i < want; ++i) pieces.push_back(testsupport::random_polytope(rng, dim));
        PolySet omega = PolySet::from_pieces(dim, std::move(pieces));
        int used = 0;
        for (const auto& p : omega.pieces()) {
            audit_set(omega, p.relint_point());
            const VRep& gen = p.vrep();
            for (const auto& v : gen.vertices) {
                if (++used > 3) break;
                audit_set(omega, v);
            }
        }
    }
    for (int t = 0; t < 25; ++t) {
        PolyMap f = random_map_1d(rng);
        OrderCone theta = random_theta(rng, 1);
        RatVector x{Rational(rng.pick(-4, 4)) / Rational(2)};
        auto z = boundary_value(f, theta, x);
        if (!z) continue;
        audit_map(f, theta, x, *z);
    }

    bool ok = audit.violations == 0 && audit.checked >= 250;
    std::ostringstream d;
    d << audit.checked << " containments checked, " << audit.violations << " violations";
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// Suite 10: determinism — repeated CLI runs over every shipped instance give
// byte-identical JSON and the documented exit statuses.
// ---------------------------------------------------------------------------

std::pair<std::string, int> run_command(const std::string& cmd)
{
    std::string full = cmd + " 2>/dev/null";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) return {"", -1};
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {out, code};
}

std::pair<bool, std::string> suite_determinism(const std::string& dir, const std::string& cli)
{
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    int stable = 0, coded = 0;
    std::string first_wrong;
    for (const auto& f : files) {
        std::string base = "\"" + cli + "\" check \"" + f.string() + "\" --json";
        auto [out1, code1] = run_command(base);
        auto [out2, code2] = run_command(base);
        auto [out3, code3] = run_command(base + " --jobs 4");
        const int expect = f.filename() == "epi_chain_counterexample.json" ? 1 : 0;
        bool same = !out1.empty() && out1 == out2 && out1 == out3;
        bool codes = code1 == expect && code2 == expect && code3 == expect;
        if (same) ++stable;
        if (codes) ++coded;
        if (!(same && codes) && first_wrong.empty()) first_wrong = f.filename().string();
    }
    bool ok = !files.empty() && stable == static_cast<int>(files.size()) &&
              coded == static_cast<int>(files.size());
    std::ostringstream d;
    d << files.size() << " instances, " << stable << " byte-identical, " << coded
      << " with documented exit status";
    if (!first_wrong.empty()) d << " (first wrong: " << first_wrong << ")";
    return {ok, d.str()};
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc < 3) {
        std::fprintf(stderr, "usage: acceptance <instances-dir> <cli-binary>\n");
        return 2;
    }
    const std::string dir = argv[1];
    const std::string cli = argv[2];

    suite(1, "kinked-pair sum rule holds with exact equality", [&] { return suite_kinked_pair(dir); });
    suite(2, "epigraph-pair sum rule inclusion is strict", [&] { return suite_epigraph_pair(dir); });
    suite(3, "epigraphical sum identity on random pairs", suite_epi_sum_identity);
    suite(4, "indicator identity equals the limiting normal cone", suite_indicator_identity);
    suite(5, "sum-rule soundness under the verified qualification", suite_sum_soundness);
    suite(6, "chain-rule soundness under the verified qualification", suite_chain_soundness);
    suite(7, "sampling oracle agrees with the exact cones", suite_oracle);
    suite(8, "well-posedness criteria and affine adjoint identity", suite_wellposedness);
    suite(9, "regular objects sit inside their limiting counterparts", suite_containment);
    suite(10, "command-line reports are byte-identical across runs", [&] { return suite_determinism(dir, cli); });

    return failures;
}
