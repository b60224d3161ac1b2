#include "biharm/verify.hpp"

#include "biharm/biharmonic.hpp"
#include "biharm/error.hpp"
#include "biharm/oracle.hpp"
#include "biharm/report.hpp"
#include "biharm/scene.hpp"
#include "biharm/warped.hpp"

#include <cmath>
#include <functional>

namespace biharm {

namespace {

struct Measured {
    double expected;
    double got;
};

struct Spec {
    std::string name;
    double tolerance;
    Compare compare;
    std::function<Measured()> run;
};

using Points = std::vector<std::vector<double>>;

const Points slice_points{{0.0, 0.0}, {0.3, -0.2}, {-0.5, 0.4}, {1.0, 1.0}, {-1.2, 0.7}};

double norm_bar(const WarpedScene& sc, double t, std::span<const double> point,
                const WarpedVector& v) {
    const Vec x = values(local_geometry(sc.immersion, point, 2).X);
    return std::sqrt(warped_inner(sc.warp.eval(t), sc.immersion.ambient, x, v, v));
}

WarpedVector minus(const WarpedVector& a, const WarpedVector& b) {
    return {a.dt - b.dt, axpy(-1.0, b.fiber, a.fiber)};
}

/// The measurement farthest from `expected`.
Measured worst(const Points& pts, double expected, const std::function<double(const Vec&)>& f) {
    Measured w{expected, expected};
    for (const auto& p : pts) {
        const double v = f(p);
        if (std::abs(v - expected) >= std::abs(w.got - expected)) w.got = v;
    }
    return w;
}

/// Closed forms of the cone family at (r, u).
struct ConeClosed {
    double lambda, lap, normA2;
};

ConeClosed cone_closed(double r, double u) {
    const double s = std::sqrt(1.0 + r * r);
    return {1.0 / (2.0 * r * s * u), 1.0 / (2.0 * r * s * s * s * u * u * u),
            1.0 / (r * r * (1.0 + r * r) * u * u)};
}

/// Relative error of the worst cone grid point for one quantity.
Measured cone_grid(int which) {
    Measured w{1.0, 1.0};
    double worst_rel = -1.0;
    for (double r : {1.0, 2.0})
        for (double u : {0.5, 1.0, 2.0}) {
            const auto g = analyze_point(builtin::cone(r), Vec{u, 0.7});
            const auto c = cone_closed(r, u);
            const double exp = which == 0 ? c.lambda : which == 1 ? c.lap : c.normA2;
            const double got = which == 0 ? *g.lambda : which == 1 ? *g.lapLambda : *g.normA2;
            const double rel = std::abs(got - exp) / std::abs(exp);
            if (rel > worst_rel) {
                worst_rel = rel;
                w = {exp, got};
            }
        }
    return w;
}

const std::vector<std::string> warp_grid{"exp(t)", "sqrt(t+2)", "2+cos(t)"};

struct Sample {
    ImmersionSpec immersion;
    Vec point;
};

std::vector<Sample> warp_samples() {
    return {{builtin::sphere_slice(1.0), {0.3, -0.2}}, {builtin::cone(1.0), {1.0, 0.7}}};
}

Measured max_over_warp_grid(
    const std::function<double(const WarpedScene&, double, const Vec&)>& f,
    const std::vector<Sample>& samples) {
    double worst_v = 0.0;
    for (const auto& src : warp_grid)
        for (const auto& smp : samples)
            for (double t : {0.0, 0.3}) {
                const WarpedScene sc{smp.immersion, builtin::warp(src), -0.5, 1.0};
                worst_v = std::max(worst_v, f(sc, t, smp.point));
            }
    return {0.0, worst_v};
}

std::vector<Spec> table() {
    std::vector<Spec> s;
    const double e = std::exp(1.0);

    // The slice (u, v, r) of S³.
    s.push_back({"slice.lambda[r=1]", 1e-9, Compare::absolute, [] {
                     return worst(slice_points, 1.0, [](const Vec& p) {
                         return *analyze_point(builtin::sphere_slice(1.0), p).lambda;
                     });
                 }});
    s.push_back({"slice.normA2[r=1]", 1e-8, Compare::absolute, [] {
                     return worst(slice_points, 2.0, [](const Vec& p) {
                         return *analyze_point(builtin::sphere_slice(1.0), p).normA2;
                     });
                 }});
    s.push_back({"slice.lapLambda[r=1]", 1e-7, Compare::absolute, [] {
                     return worst(slice_points, 0.0, [](const Vec& p) {
                         return *analyze_point(builtin::sphere_slice(1.0), p).lapLambda;
                     });
                 }});
    s.push_back({"slice.normal_residual[r=1]", 1e-7, Compare::absolute, [] {
                     return worst(slice_points, 0.0, [](const Vec& p) {
                         return normal_residual(builtin::sphere_slice(1.0), p);
                     });
                 }});
    s.push_back({"slice.normal_residual[r=2]", 1e-6, Compare::absolute, [] {
                     return worst(slice_points, 24.0, [](const Vec& p) {
                         return normal_residual(builtin::sphere_slice(2.0), p);
                     });
                 }});
    s.push_back({"slice.classify[r=1].biharmonic", 0.0, Compare::absolute, [] {
                     Points grid;
                     for (double u : {-0.5, 0.0, 0.5})
                         for (double v : {-0.5, 0.0, 0.5}) grid.push_back({u, v});
                     const auto c = classify(builtin::sphere_slice(1.0), grid, 1e-7);
                     const bool ok = c.biharmonic.value && c.normally_biharmonic.value &&
                                     c.tangentially_biharmonic.value && !c.harmonic.value;
                     return Measured{1.0, ok ? 1.0 : 0.0};
                 }});

    // The cone (r u cos v, r u sin v, u) in ℝ³.
    s.push_back({"cone.lambda", 1e-8, Compare::relative, [] { return cone_grid(0); }});
    s.push_back({"cone.lapLambda", 1e-8, Compare::relative, [] { return cone_grid(1); }});
    s.push_back({"cone.normA2", 1e-8, Compare::relative, [] { return cone_grid(2); }});
    s.push_back({"cone.normal_residual[r=1]", 1e-9, Compare::absolute, [] {
                     return worst({{0.5, 0.1}, {1.0, 0.7}, {2.0, 2.0}}, 0.0, [](const Vec& p) {
                         return normal_residual(builtin::cone(1.0), p);
                     });
                 }});
    s.push_back({"cone.tangential_norm[r=1,u=1]", 1e-9, Compare::relative, [] {
                     const auto r = system_residuals(builtin::cone(1.0), Vec{1.0, 0.7});
                     return Measured{1.0 / (2.0 * std::sqrt(2.0)), r.tangential_norm};
                 }});
    s.push_back({"cone.scan.root_count", 0.0, Compare::absolute, [] {
                     const auto r = parameter_scan(builtin::cone(1.0), "r", 0.5, 2.0, 31, Vec{1.0, 0.7});
                     return Measured{1.0, static_cast<double>(r.roots.size())};
                 }});
    s.push_back({"cone.scan.root", 1e-6, Compare::absolute, [] {
                     const auto r = parameter_scan(builtin::cone(1.0), "r", 0.5, 2.0, 31, Vec{1.0, 0.7});
                     return Measured{1.0, r.roots.empty() ? NAN : r.roots.front()};
                 }});
    s.push_back({"slice.scan.root", 1e-6, Compare::absolute, [] {
                     const auto r = parameter_scan(builtin::sphere_slice(1.0), "r", 0.5, 2.0, 31,
                                                   Vec{0.3, -0.2});
                     return Measured{1.0, r.roots.size() == 1 ? r.roots.front() : NAN};
                 }});

    // Inclusion into the warped product.
    s.push_back({"warped.tension_vs_oracle", 1e-9, Compare::absolute, [] {
                     return max_over_warp_grid(
                         [](const WarpedScene& sc, double t, const Vec& q) {
                             const auto a = inclusion_tension(sc, t, q);
                             const auto b = inclusion_tension_oracle(sc, t, q);
                             const double H = analyze_point(sc.immersion, q).H_norm;
                             return norm_bar(sc, t, q, minus(a, b)) / (1.0 + H);
                         },
                         warp_samples());
                 }});
    s.push_back({"warped.tension_dt_component", 1e-12, Compare::absolute, [] {
                     return max_over_warp_grid(
                         [](const WarpedScene& sc, double t, const Vec& q) {
                             return std::abs(inclusion_tension_oracle(sc, t, q).dt);
                         },
                         warp_samples());
                 }});
    s.push_back({"warped.bitension_vs_oracle", 1e-6, Compare::absolute, [] {
                     return max_over_warp_grid(
                         [](const WarpedScene& sc, double t, const Vec& q) {
                             const auto a = inclusion_bitension(sc, t, q);
                             const auto b = inclusion_bitension_oracle(sc, t, q);
                             return norm_bar(sc, t, q, minus(a, b)) / (1.0 + norm_bar(sc, t, q, b));
                         },
                         {warp_samples().front()});
                 }});
    for (double t : {0.0, 0.5}) {
        s.push_back({"warped.pairing[f=exp(t),t=" + report::num(t) + "]", 1e-6, Compare::absolute,
                     [t, e] {
                         const WarpedScene sc{builtin::sphere_slice(1.0), builtin::warp("exp(t)"), -1, 1};
                         return Measured{16.0 / std::pow(e, 2.0 * t), pairing(sc, t, Vec{0.3, -0.2}).direct};
                     }});
    }
    s.push_back({"warped.bitension[f=sqrt(t+2),t=0].dt", 1e-9, Compare::absolute, [] {
                     const WarpedScene sc{builtin::sphere_slice(1.0), builtin::warp("sqrt(t+2)"), -1, 1};
                     return Measured{-0.5, inclusion_bitension_oracle(sc, 0.0, Vec{0.3, -0.2}).dt};
                 }});
    s.push_back({"warped.biharmonic_iff_harmonic", 0.0, Compare::absolute, [] {
                     int mismatches = 0;
                     for (const auto& imm : {builtin::sphere_slice(1.0), builtin::equator()})
                         for (const char* src : {"exp(t)", "2+cos(t)", "sqrt(t+2)"})
                             for (double t : {0.0, 0.5}) {
                                 const WarpedScene sc{imm, builtin::warp(src), -1, 1};
                                 const Vec q{0.3, -0.2};
                                 const bool harmonic = norm_bar(sc, t, q, inclusion_tension_oracle(sc, t, q)) <= 1e-9;
                                 const bool biharmonic = norm_bar(sc, t, q, inclusion_bitension_oracle(sc, t, q)) <= 1e-9;
                                 if (harmonic != biharmonic) ++mismatches;
                             }
                     return Measured{0.0, static_cast<double>(mismatches)};
                 }});
    s.push_back({"warped.tangential[f=2+cos(t),t=0]", 1e-8, Compare::absolute, [] {
                     const WarpedScene sc{builtin::sphere_slice(1.0), builtin::warp("2+cos(t)"), -1, 1};
                     return Measured{0.0, warped_report(sc, 0.0, Vec{0.3, -0.2}).tangential_part_norm};
                 }});
    s.push_back({"warped.tangential[f=2+cos(t),t=0.5]", 0.0, Compare::at_least, [] {
                     const WarpedScene sc{builtin::sphere_slice(1.0), builtin::warp("2+cos(t)"), -1, 1};
                     return Measured{0.05, warped_report(sc, 0.5, Vec{0.3, -0.2}).tangential_part_norm};
                 }});
    s.push_back({"warped.pointwise[f=2+t^2,t=0]", 0.0, Compare::at_least, [] {
                     const WarpedScene sc{builtin::sphere_slice(1.0), builtin::warp("2+t^2"), -1, 1};
                     const Vec q{0.3, -0.2};
                     return Measured{1e-3, norm_bar(sc, 0.0, q, inclusion_bitension_oracle(sc, 0.0, q))};
                 }});
    s.push_back({"warped.pointwise[f=2+t^3,t=0]", 1e-7, Compare::absolute, [] {
                     const WarpedScene sc{builtin::sphere_slice(1.0), builtin::warp("2+t^3"), -1, 1};
                     const Vec q{0.3, -0.2};
                     return Measured{0.0, norm_bar(sc, 0.0, q, inclusion_bitension_oracle(sc, 0.0, q))};
                 }});

    struct Power {
        double a, b;
        int m;
        double lo, hi;
    };
    for (const Power& pw : {Power{1, 2, 2, -1, 3}, Power{3, 1, 3, 0, 2}, Power{-0.5, 4, 2, -1, 6}}) {
        const std::string tag = "[a=" + report::num(pw.a) + ",b=" + report::num(pw.b) +
                                ",m=" + std::to_string(pw.m) + "]";
        const auto scene = [pw] {
            return WarpedScene{builtin::sphere_slice(1.0, pw.m),
                               builtin::warp("(a*t+b)^(1/m)", {{"a", pw.a}, {"b", pw.b}, {"m", pw.m}}),
                               pw.lo, pw.hi};
        };
        const auto ts = [pw] { return linspace({pw.lo + 0.1, pw.hi - 0.1, 5}); };
        s.push_back({"power.power_residual" + tag, 1e-12, Compare::absolute, [scene, ts, pw] {
                         const auto sc = scene();
                         double w = 0.0;
                         for (double t : ts()) w = std::max(w, std::abs(power_family_residual(sc.warp, t, pw.m)));
                         return Measured{0.0, w};
                     }});
        s.push_back({"power.pairing" + tag, 1e-9, Compare::absolute, [scene, ts, pw] {
                         const auto sc = scene();
                         const Vec q(static_cast<std::size_t>(pw.m), 0.2);
                         double w = 0.0;
                         for (double t : ts()) w = std::max(w, std::abs(pairing(sc, t, q).direct));
                         return Measured{0.0, w};
                     }});
    }

    s.push_back({"ricci.ricci_identity", 1e-6, Compare::absolute, [] {
                     double w = 0.0;
                     for (const auto& src : warp_grid)
                         for (double t : {0.0, 0.3}) {
                             const WarpedScene sc{builtin::sphere_slice(1.0), builtin::warp(src), -0.5, 1};
                             w = std::max(w, std::abs(ricci_warped_check(sc, t, Vec{0.3, -0.2}).identity_residual));
                         }
                     return Measured{0.0, w};
                 }});
    s.push_back({"ricci.ric_tilde[f=exp(t),t=0]", 1e-6, Compare::absolute, [] {
                     const WarpedScene sc{builtin::sphere_slice(1.0), builtin::warp("exp(t)"), -1, 1};
                     return Measured{0.0, ricci_warped_check(sc, 0.0, Vec{0.3, -0.2}).ric_tilde};
                 }});
    s.push_back({"ricci.pairing_ricci_form", 1e-7, Compare::absolute, [] {
                     double w = 0.0;
                     for (const auto& src : warp_grid)
                         for (double t : {0.0, 0.3}) {
                             const WarpedScene sc{builtin::sphere_slice(1.0), builtin::warp(src), -0.5, 1};
                             const auto r = ricci_warped_check(sc, t, Vec{0.3, -0.2});
                             w = std::max(w, std::abs(r.pairing_ricci_form - r.pairing_direct));
                         }
                     return Measured{0.0, w};
                 }});
    return s;
}

bool passes(Compare c, double expected, double got, double tol) {
    if (!std::isfinite(got)) return false;
    switch (c) {
    case Compare::absolute: return std::abs(got - expected) <= tol;
    case Compare::relative: return std::abs(got - expected) <= tol * std::abs(expected);
    case Compare::at_least: return got >= expected;
    }
    return false;
}

} // namespace

std::string CheckResult::expected_text() const {
    switch (compare) {
    case Compare::absolute: return report::num(expected) + " ± " + report::num(tolerance);
    case Compare::relative: return report::num(expected) + " ± " + report::num(tolerance) + " rel";
    case Compare::at_least: return ">= " + report::num(expected);
    }
    return {};
}

std::vector<std::string> check_names() {
    std::vector<std::string> out;
    for (const auto& s : table()) out.push_back(s.name);
    return out;
}

std::vector<CheckResult> run_checks(std::string_view filter) {
    std::vector<CheckResult> out;
    for (const auto& s : table()) {
        if (!filter.empty() && s.name.find(filter) == std::string::npos) continue;
        CheckResult r{s.name, 0.0, NAN, s.tolerance, s.compare, false, {}};
        try {
            const Measured m = s.run();
            r.expected = m.expected;
            r.got = m.got;
            r.pass = passes(s.compare, m.expected, m.got, s.tolerance);
        } catch (const Error& e) {
            r.error = e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace biharm
