/**
 * Command-line front end: loads an instance file, runs the requested
 * computation or the full check list, and prints reports (text by default,
 * canonical JSON with --json).  Reports go to stdout, diagnostics to stderr.
 * Exit codes: 0 success, 1 a check reported inclusion-fails (or an oracle
 * comparison found an unsound sample), 2 argument/instance parse errors,
 * 3 domain errors while computing.
 */

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ordsub/oracle.hpp"
#include "ordsub/serialize.hpp"

using namespace ordsub;

namespace {

Instance load_instance(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open instance file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

/** Splits a named graph/epigraph point into its domain and range blocks. */
std::pair<RatVector, RatVector> split_point(const RatVector& p, const PolyMap& f,
                                            const std::string& name)
{
    if (p.size() != f.dom_dim() + f.rng_dim())
        throw DimensionMismatch("point '" + name + "' has dimension " +
                                std::to_string(p.size()) + ", expected " +
                                std::to_string(f.dom_dim() + f.rng_dim()));
    return {detail::slice(p, 0, f.dom_dim()), detail::slice(p, f.dom_dim(), f.rng_dim())};
}

ConeKind kind_from_name(const std::string& name)
{
    return name == "regular" ? ConeKind::regular : ConeKind::limiting;
}

int run_checks(const Instance& inst, bool json_mode, unsigned jobs)
{
    const std::size_t n = inst.checks.size();
    std::vector<CheckReport> reports(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                reports[i] = run_check(inst, inst.checks[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (jobs <= 1 || n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const std::size_t width = std::min<std::size_t>(jobs, n);
        for (std::size_t t = 0; t < width; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    // The first failure in instance order governs, independent of scheduling.
    for (std::size_t i = 0; i < n; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);

    std::size_t failed = 0;
    for (const auto& r : reports)
        if (r.verdict == Verdict::inclusion_fails) ++failed;

    if (json_mode) {
        Json arr = Json::array();
        for (std::size_t i = 0; i < n; ++i)
            arr.push_back(json_of_report(reports[i], inst.checks[i].label, i));
        std::cout << arr.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < n; ++i)
            std::cout << format_report_text(reports[i], inst.checks[i].label, i);
        std::cout << n << " check" << (n == 1 ? "" : "s") << ": " << (n - failed) << " passed, "
                  << failed << " failed\n";
    }
    return failed == 0 ? 0 : 1;
}

int run_normal_cone(const Instance& inst, const std::string& set_name,
                    const std::string& point_name, bool json_mode)
{
    const PolySet& s = get_set(inst, set_name);
    const RatVector& x = get_point(inst, point_name);
    PolySet regular = PolySet::single(frechet_normal_cone(s, x));
    PolySet limiting = limiting_normal_cone(s, x).set();
    if (json_mode) {
        Json obj = Json::object();
        obj["command"] = "normal-cone";
        obj["set"] = set_name;
        obj["point"] = detail::json_of_rational_vector(x);
        obj["regular"] = json_of_polyset(regular);
        obj["limiting"] = json_of_polyset(limiting);
        std::cout << obj.dump(2) << "\n";
    } else {
        std::cout << "regular normal cone to " << set_name << " at " << point_name << " = "
                  << format_polyset(regular) << "\n";
        std::cout << "limiting normal cone to " << set_name << " at " << point_name << " = "
                  << format_polyset(limiting) << "\n";
    }
    return 0;
}

int run_coderivative(const Instance& inst, const std::string& map_name,
                     const std::string& point_name, const std::string& dual_name,
                     const std::string& kind_name, bool json_mode)
{
    const PolyMap& f = get_map(inst, map_name);
    auto [x, z] = split_point(get_point(inst, point_name), f, point_name);
    const RatVector& zstar = get_point(inst, dual_name);
    ConeKind kind = kind_from_name(kind_name);
    PolySet result = coderivative(f, x, z, zstar, kind);
    if (json_mode) {
        Json obj = Json::object();
        obj["command"] = "coderivative";
        obj["map"] = map_name;
        obj["point"] = detail::json_of_rational_vector(get_point(inst, point_name));
        obj["dual"] = detail::json_of_rational_vector(zstar);
        obj["kind"] = cone_kind_name(kind);
        obj["set"] = json_of_polyset(result);
        std::cout << obj.dump(2) << "\n";
    } else {
        std::cout << cone_kind_name(kind) << " coderivative of " << map_name << " at "
                  << point_name << " applied to " << dual_name << " = " << format_polyset(result)
                  << "\n";
    }
    return 0;
}

int run_subdiff(const Instance& inst, const std::string& map_name, const std::string& cone_name,
                const std::string& point_name, const std::string& kind_name, bool singular,
                bool json_mode)
{
    const PolyMap& f = get_map(inst, map_name);
    const OrderCone& theta = get_cone(inst, cone_name);
    auto [x, z] = split_point(get_point(inst, point_name), f, point_name);
    ConeKind kind = kind_from_name(kind_name);
    SubdiffResult result = singular ? singular_subdiff(f, theta, x, z, kind)
                                    : subdiff(f, theta, x, z, kind);
    if (json_mode) {
        Json obj = Json::object();
        obj["command"] = "subdiff";
        obj["map"] = map_name;
        obj["cone"] = cone_name;
        obj["point"] = detail::json_of_rational_vector(get_point(inst, point_name));
        obj["kind"] = result.kind;
        obj["set"] = json_of_polyset(result.set);
        std::cout << obj.dump(2) << "\n";
    } else {
        std::cout << result.kind << " subdifferential of " << map_name << " at " << point_name
                  << " = " << format_polyset(result.set) << "\n";
    }
    return 0;
}

int run_oracle_compare(const Instance& inst, const std::string& set_name,
                       const std::string& point_name, long resolution, bool json_mode)
{
    const PolySet& s = get_set(inst, set_name);
    const RatVector& x = get_point(inst, point_name);
    ConeUnion exact = limiting_normal_cone(s, x);
    SampleGrid grid;
    grid.center = x;
    grid.radius = Rational(1);
    std::vector<RatVector> sampled = sampled_limiting_cone(s, x, grid, resolution);
    OracleCompareReport report = compare_cones(exact, sampled, resolution);
    if (json_mode) {
        Json obj = Json::object();
        obj["command"] = "oracle-compare";
        obj["set"] = set_name;
        obj["point"] = detail::json_of_rational_vector(x);
        obj.update(json_of_oracle_report(report, resolution, sampled.size()));
        std::cout << obj.dump(2) << "\n";
    } else {
        std::cout << "oracle comparison for " << set_name << " at " << point_name << ": "
                  << sampled.size() << " sampled rays, "
                  << (report.sound ? "all inside the exact cone" : "UNSOUND SAMPLES FOUND")
                  << "; generator coverage " << report.generators_covered << "/"
                  << report.generators_total << " (" << format_rational(report.coverage) << ")\n";
        for (const auto& v : report.unsound)
            std::cout << "  unsound sample: " << detail::format_point(v) << "\n";
    }
    return report.sound ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact calculus of normal cones, coderivatives, and ordered subdifferentials "
                 "of piecewise-polyhedral set-valued mappings"};
    app.require_subcommand(1);
    app.fallthrough();  // let --json after a subcommand reach the parent

    bool json_mode = false;
    app.add_flag("--json", json_mode, "emit canonical JSON instead of text");

    std::string instance_path, set_name, map_name, cone_name, point_name, dual_name;
    std::string at_token, kind_name = "limiting";
    bool singular = false;
    unsigned jobs = 1;
    long resolution = 64;

    auto add_at = [&](CLI::App* sub) {
        sub->add_option("at", at_token, "the literal word 'at'")
            ->required()
            ->check(CLI::IsMember({"at"}));
    };

    CLI::App* check = app.add_subcommand("check", "run every check listed in the instance");
    check->add_option("instance", instance_path, "instance file")->required();
    check->add_option("--jobs", jobs, "run up to N checks concurrently")
        ->check(CLI::PositiveNumber);

    CLI::App* ncone = app.add_subcommand("normal-cone", "normal cones of a set at a point");
    ncone->add_option("instance", instance_path, "instance file")->required();
    ncone->add_option("set", set_name, "set name")->required();
    add_at(ncone);
    ncone->add_option("point", point_name, "point name")->required();

    CLI::App* coder = app.add_subcommand("coderivative",
                                         "coderivative of a mapping at a graph point");
    coder->add_option("instance", instance_path, "instance file")->required();
    coder->add_option("map", map_name, "mapping name")->required();
    add_at(coder);
    coder->add_option("point", point_name, "graph point name (domain then range block)")
        ->required();
    coder->add_option("dual", dual_name, "dual point name")->required();
    coder->add_option("--kind", kind_name, "cone kind")
        ->check(CLI::IsMember({"regular", "limiting"}));

    CLI::App* sdiff = app.add_subcommand("subdiff",
                                         "ordered subdifferential of a mapping at a graph point");
    sdiff->add_option("instance", instance_path, "instance file")->required();
    sdiff->add_option("map", map_name, "mapping name")->required();
    sdiff->add_option("cone", cone_name, "ordering cone name")->required();
    add_at(sdiff);
    sdiff->add_option("point", point_name, "epigraph point name (domain then range block)")
        ->required();
    sdiff->add_option("--kind", kind_name, "cone kind")
        ->check(CLI::IsMember({"regular", "limiting"}));
    sdiff->add_flag("--singular", singular, "singular subdifferential (dual direction zero)");

    CLI::App* oracle = app.add_subcommand("oracle-compare",
                                          "compare the exact limiting cone against the "
                                          "sampling oracle (dimensions <= 3)");
    oracle->add_option("instance", instance_path, "instance file")->required();
    oracle->add_option("set", set_name, "set name")->required();
    add_at(oracle);
    oracle->add_option("point", point_name, "point name")->required();
    oracle->add_option("--oracle-resolution", resolution, "direction-lattice order")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Instance inst;
    try {
        inst = load_instance(instance_path);
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (check->parsed()) return run_checks(inst, json_mode, jobs);
        if (ncone->parsed()) return run_normal_cone(inst, set_name, point_name, json_mode);
        if (coder->parsed())
            return run_coderivative(inst, map_name, point_name, dual_name, kind_name, json_mode);
        if (sdiff->parsed())
            return run_subdiff(inst, map_name, cone_name, point_name, kind_name, singular,
                               json_mode);
        if (oracle->parsed())
            return run_oracle_compare(inst, set_name, point_name, resolution, json_mode);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;  // unreachable: a subcommand is required
}
