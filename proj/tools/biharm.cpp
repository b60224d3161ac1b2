#include "biharm/biharmonic.hpp"
#include "biharm/error.hpp"
#include "biharm/report.hpp"
#include "biharm/scene.hpp"
#include "biharm/verify.hpp"
#include "biharm/warped.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace biharm;
using report::json;
using report::num;
using report::vec;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, numerical = 3, malformed_scene = 4, dsl_parse = 5 };

int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::configuration:
    case ErrorKind::usage:
    case ErrorKind::unbound:
    case ErrorKind::scene_invalid: return usage;
    case ErrorKind::singular_value:
    case ErrorKind::domain:
    case ErrorKind::degenerate:
    case ErrorKind::warp_domain: return numerical;
    case ErrorKind::scene_format: return malformed_scene;
    case ErrorKind::parse: return dsl_parse;
    }
    return usage;
}

void write(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << content;
}

PointList resolve_points(const Scene& scene, const std::string& spec) {
    PointList pts = spec.empty() ? scene.points : parse_points(spec, scene.immersion.m());
    if (pts.empty()) throw UsageError("no points given (use --points or analysis.points)");
    return pts;
}

struct Outputs {
    std::string json_path;
    std::string csv_path;
};

void add_outputs(CLI::App* cmd, Outputs& o) {
    cmd->add_option("--json", o.json_path, "Write a JSON report to this path ('-' for stdout)");
    cmd->add_option("--csv", o.csv_path, "Write the table as CSV to this path ('-' for stdout)");
}

void emit(const Outputs& o, const report::Table& table, const json& j) {
    if (o.json_path != "-" && o.csv_path != "-") std::cout << table.text();
    if (!o.json_path.empty()) write(o.json_path, j.dump(2) + "\n");
    if (!o.csv_path.empty()) write(o.csv_path, table.csv());
}

int cmd_analyze(const std::string& path, const std::string& points, const Outputs& out) {
    const Scene scene = load_scene(path);
    const ImmersionSpec& spec = scene.immersion;
    const bool hyp = spec.is_hypersurface();
    report::Table table = hyp ? report::Table{{"point", "lambda", "|A|^2", "lap(lambda)", "|H|",
                                               "normal", "|tangential|"}}
                              : report::Table{{"point", "|H|"}};
    json j{{"scene", scene.origin}, {"points", json::array()}};
    int code = ok;
    for (const auto& p : resolve_points(scene, points)) {
        try {
            if (hyp) {
                const auto r = system_residuals(spec, p);
                const auto& g = r.geometry;
                table.add({vec(p), num(*g.lambda), num(*g.normA2), num(*g.lapLambda), num(g.H_norm),
                           num(r.normal), num(r.tangential_norm)});
                j["points"].push_back(report::to_json(r));
            } else {
                const auto g = analyze_point(spec, p);
                table.add({vec(p), num(g.H_norm)});
                j["points"].push_back(report::to_json(g));
            }
        } catch (const Error& e) {
            std::cerr << "error at " << vec(p) << ": " << e.what() << "\n";
            j["points"].push_back({{"point", p}, {"error", e.what()}, {"kind", to_string(e.kind())}});
            code = std::max(code, exit_code(e.kind()));
        }
    }
    emit(out, table, j);
    return code;
}

int cmd_classify(const std::string& path, const std::string& points, std::optional<double> tol,
                 const Outputs& out) {
    const Scene scene = load_scene(path);
    const double t = tol.value_or(scene.tolerance);
    const auto rec = classify(scene.immersion, resolve_points(scene, points), t);
    report::Table table{{"flag", "value", "tolerance"}};
    const auto row = [&](const char* name, const Flag& f) {
        table.add({name, f.value ? "true" : "false", num(f.tolerance)});
    };
    row("harmonic", rec.harmonic);
    row("biharmonic", rec.biharmonic);
    row("normally_biharmonic", rec.normally_biharmonic);
    row("tangentially_biharmonic", rec.tangentially_biharmonic);
    json j = report::to_json(rec);
    j["scene"] = scene.origin;
    emit(out, table, j);
    return ok;
}

int cmd_scan(const std::string& path, const std::string& param, const std::string& range, int samples,
             const std::string& point, const Outputs& out) {
    const Scene scene = load_scene(path);
    const Range r = parse_range(range);
    PointList probe = point.empty() ? scene.points : parse_points(point, scene.immersion.m());
    if (probe.empty()) throw UsageError("scan needs a probe point (--point or analysis.points)");
    const auto res = parameter_scan(scene.immersion, param, r.lo, r.hi, samples, probe.front());
    report::Table table{{"root", param}};
    for (std::size_t k = 0; k < res.roots.size(); ++k) table.add({std::to_string(k + 1), num(res.roots[k])});
    json j = report::to_json(res);
    j["scene"] = scene.origin;
    j["param"] = param;
    j["probe"] = probe.front();
    emit(out, table, j);
    for (const auto& f : res.failures) std::cerr << "sample " << num(f.param) << " failed: " << f.message << "\n";
    return res.failures.empty() ? ok : numerical;
}

int cmd_warp(const std::string& path, const std::string& trange, const std::string& point,
             const Outputs& out) {
    const Scene scene = load_scene(path);
    if (!scene.warped) throw UsageError(scene.origin + ": warp needs a 'warp' block");
    const Range r = parse_range(trange);
    const std::vector<double> ts = linspace(r.count ? r : Range{r.lo, r.hi, 2});
    PointList pts = point.empty() ? scene.points : parse_points(point, scene.immersion.m());
    if (pts.empty()) throw UsageError("warp needs a point on M (--point or analysis.points)");
    report::Table table{{"t", "f", "f'", "f''", "pairing", "closed_form", "power_residual",
                         "|tangential|", "|normal|", "|oracle diff|"}};
    json j{{"scene", scene.origin}, {"point", pts.front()}, {"rows", json::array()}};
    int code = ok;
    for (double t : ts) {
        try {
            const auto w = warped_report(*scene.warped, t, pts.front());
            table.add({num(t), num(w.warp.f), num(w.warp.f1), num(w.warp.f2), num(w.pairing.direct),
                       w.pairing.closed_form_applicable ? num(w.pairing.closed_form) : "n/a",
                       num(w.power_residual), num(w.tangential_part_norm), num(w.normal_part_norm),
                       num(w.oracle_discrepancy)});
            j["rows"].push_back(report::to_json(w));
        } catch (const Error& e) {
            std::cerr << "error at t = " << num(t) << ": " << e.what() << "\n";
            j["rows"].push_back({{"t", t}, {"error", e.what()}, {"kind", to_string(e.kind())}});
            code = std::max(code, exit_code(e.kind()));
        }
    }
    emit(out, table, j);
    return code;
}

int cmd_verify(const std::string& filter, const Outputs& out) {
    const auto results = run_checks(filter);
    if (results.empty()) throw UsageError("no check matches '" + filter + "'");
    report::Table table{{"check", "expected", "got", "pass"}};
    json j = json::array();
    bool all = true;
    for (const auto& r : results) {
        table.add({r.name, r.expected_text(), r.error.empty() ? num(r.got) : "error: " + r.error,
                   r.pass ? "PASS" : "FAIL"});
        j.push_back({{"name", r.name}, {"expected", r.expected}, {"got", r.got},
                     {"tolerance", r.tolerance}, {"pass", r.pass}});
        if (!r.error.empty()) j.back()["error"] = r.error;
        all = all && r.pass;
    }
    emit(out, table, j);
    return all ? ok : check_failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Biharmonic submanifold and warped-product verification tool"};
    app.require_subcommand(1);

    std::string scene, points, param, range, point, trange, filter;
    std::optional<double> tol;
    int samples = 41;
    Outputs out;

    auto* analyze = app.add_subcommand("analyze", "Pointwise geometry and residuals");
    analyze->add_option("scene", scene, "Scene file")->required();
    analyze->add_option("--points", points, "'a,b;c,d' or 'grid:lo:hi:N,lo:hi:N'");
    add_outputs(analyze, out);

    auto* cls = app.add_subcommand("classify", "Harmonic / biharmonic classification");
    cls->add_option("scene", scene, "Scene file")->required();
    cls->add_option("--tol", tol, "Relative tolerance (default: analysis.tolerance)");
    cls->add_option("--points", points, "'a,b;c,d' or 'grid:lo:hi:N,lo:hi:N'");
    add_outputs(cls, out);

    auto* scan = app.add_subcommand("scan", "Roots of the normal residual in a parameter");
    scan->add_option("scene", scene, "Scene file")->required();
    scan->add_option("--param", param, "Parameter name")->required();
    scan->add_option("--range", range, "lo:hi")->required();
    scan->add_option("--samples", samples, "Uniform samples")->check(CLI::Range(2, 100000));
    scan->add_option("--point", point, "Probe point on M");
    add_outputs(scan, out);

    auto* warp = app.add_subcommand("warp", "Tension, bitension and pairing of the warped inclusion");
    warp->add_option("scene", scene, "Scene file")->required();
    warp->add_option("--t", trange, "lo:hi:N")->required();
    warp->add_option("--point", point, "Point on M");
    add_outputs(warp, out);

    auto* verify = app.add_subcommand("verify", "Run the built-in checks");
    verify->add_option("--filter", filter, "Only checks whose name contains this");
    add_outputs(verify, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*analyze) return cmd_analyze(scene, points, out);
        if (*cls) return cmd_classify(scene, points, tol, out);
        if (*scan) return cmd_scan(scene, param, range, samples, point, out);
        if (*warp) return cmd_warp(scene, trange, point, out);
        if (*verify) return cmd_verify(filter, out);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code(e.kind());
    }
    return usage;
}
