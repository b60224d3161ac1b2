// Acceptance suite: one PASS/FAIL line per criterion. Reference values are
// recomputed here from hand formulas or the first-principles oracle rather
// than read back from the closed-form code paths under test.

#include "biharm/biharmonic.hpp"
#include "biharm/error.hpp"
#include "biharm/oracle.hpp"
#include "biharm/scene.hpp"
#include "biharm/warped.hpp"
#include "support.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>

using namespace biharm;

namespace {

class Criterion {
public:
    Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

    /// Records |got − expected| against `tol`.
    void near(const std::string& what, double got, double expected, double tol) {
        require(what, std::abs(got - expected), tol, got, expected);
    }
    /// |got − expected| ≤ tol·|expected|.
    void relative(const std::string& what, double got, double expected, double tol) {
        require(what, std::abs(got - expected), tol * std::abs(expected), got, expected);
    }
    /// err ≤ tol·scale.
    void small(const std::string& what, double err, double scale, double tol) {
        require(what, err, tol * scale, err, 0.0);
    }
    void at_most(const std::string& what, double got, double bound) { require(what, std::abs(got), bound, got, 0.0); }
    void at_least(const std::string& what, double got, double bound) {
        ++count_;
        if (!(got >= bound)) fail(what + ": " + fmt(got) + " < " + fmt(bound));
    }
    void truth(const std::string& what, bool ok) {
        ++count_;
        if (!ok) fail(what);
    }

    void run(const std::function<void(Criterion&)>& body) {
        try {
            body(*this);
        } catch (const std::exception& e) {
            fail(std::string("exception: ") + e.what());
        }
    }

    bool report() const {
        const bool ok = failure_.empty() && count_ > 0;
        std::printf("[%s] %2d  %-44s %4d checks", ok ? "PASS" : "FAIL", id_, title_.c_str(), count_);
        if (ok)
            std::printf("  worst %.2e of tolerance\n", worst_);
        else
            std::printf("  %s\n", failure_.empty() ? "no checks ran" : failure_.c_str());
        return ok;
    }

private:
    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return buf;
    }

    void require(const std::string& what, double err, double tol, double got, double expected) {
        ++count_;
        if (tol > 0) worst_ = std::max(worst_, err / tol);
        if (!(err <= tol))
            fail(what + ": got " + fmt(got) + ", expected " + fmt(expected) + " (err " + fmt(err) + " > " +
                 fmt(tol) + ")");
    }

    void fail(const std::string& msg) {
        if (failure_.empty()) failure_ = msg;
    }

    int id_;
    std::string title_;
    int count_ = 0;
    double worst_ = 0.0;
    std::string failure_;
};

std::string tag(const char* name, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s=%g", name, v);
    return buf;
}

std::string tag(std::span<const double> p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + tag("", p[i]).substr(1);
    return s + ")";
}

Vec ambient_point(const ImmersionSpec& spec, std::span<const double> p) {
    expr::ParamBindings b = spec.params;
    for (std::size_t i = 0; i < spec.vars.size(); ++i) b[spec.vars[i]] = p[i];
    Vec x;
    for (const auto& c : spec.components) x.push_back(expr::eval_real(c, b));
    return x;
}

/// h̄-geometry at the image of (t, p).
struct WarpedPoint {
    WarpEval w;
    Vec x;
    const AmbientChart* chart;

    double inner(const WarpedVector& a, const WarpedVector& b) const { return warped_inner(w, *chart, x, a, b); }
    double norm(const WarpedVector& a) const { return std::sqrt(inner(a, a)); }
    WarpedVector minus(const WarpedVector& a, const WarpedVector& b) const {
        return {a.dt - b.dt, axpy(-1.0, b.fiber, a.fiber)};
    }
};

WarpedPoint at(const WarpedScene& s, double t, std::span<const double> p) {
    return {s.warp.eval(t), ambient_point(s.immersion, p), &s.immersion.ambient};
}

WarpedScene warped(const ImmersionSpec& spec, const std::string& f, expr::ParamBindings params, double lo,
                   double hi) {
    WarpedScene s{spec, builtin::warp(f, std::move(params)), lo, hi};
    s.validate();
    return s;
}

const std::filesystem::path kScenes = BIHARM_SCENE_DIR;
constexpr double kPi = std::numbers::pi;

// 1. Sphere slice.
void slice_family(Criterion& c) {
    const Scene scene = load_scene(kScenes / "sphere_slice.json");
    c.truth("scene has five points", scene.points.size() == 5);
    for (const auto& p : scene.points) {
        const auto r = system_residuals(scene.immersion, p);
        c.near("lambda at " + tag(p), *r.geometry.lambda, 1.0, 1e-9);
        c.near("|A|^2 at " + tag(p), *r.geometry.normA2, 2.0, 1e-8);
        c.at_most("lap(lambda) at " + tag(p), *r.geometry.lapLambda, 1e-7);
        c.at_most("normal residual at " + tag(p), r.normal, 1e-7);
    }
    const ImmersionSpec r2 = scene.immersion.with_param("r", 2.0);
    for (const auto& p : scene.points) c.near("r=2 normal residual at " + tag(p), normal_residual(r2, p), 24.0, 1e-6);
}

// 2. Cone, against the printed closed forms.
void cone_family(Criterion& c) {
    const Scene scene = load_scene(kScenes / "cone.json");
    for (double r : {1.0, 2.0})
        for (double u : {0.5, 1.0, 2.0}) {
            const ImmersionSpec spec = scene.immersion.with_param("r", r);
            const std::vector<double> p{u, 0.7};
            const auto g = analyze_point(spec, p);
            const double s = 1 + r * r;
            const std::string where = " at r=" + tag("", r).substr(1) + " u=" + tag("", u).substr(1);
            c.relative("lambda" + where, *g.lambda, 1 / (2 * r * std::sqrt(s) * u), 1e-8);
            c.relative("lap(lambda)" + where, *g.lapLambda, 1 / (2 * r * std::pow(s, 1.5) * u * u * u), 1e-8);
            c.relative("|A|^2" + where, *g.normA2, 1 / (r * r * s * u * u), 1e-8);
        }
    const std::vector<double> probe{1.0, kPi / 2};
    const auto scan = parameter_scan(scene.immersion, "r", 0.5, 2.0, 41, probe);
    c.truth("scan returns exactly one root (got " + std::to_string(scan.roots.size()) + ")", scan.roots.size() == 1);
    if (!scan.roots.empty()) c.near("scan root", scan.roots[0], 1.0, 1e-6);
    c.truth("scan has no failed samples", scan.failures.empty());
}

const char* const kWarps[] = {"exp(t)", "sqrt(t + 2)", "2 + cos(t)"};

std::vector<std::pair<ImmersionSpec, std::vector<double>>> warp_bases() {
    return {{builtin::sphere_slice(1.0), {0.3, -0.4}}, {builtin::cone(1.0), {1.0, kPi / 2}}};
}

// 3. τ(φ) = (m/f²)H.
void tension(Criterion& c) {
    for (const auto& [spec, p] : warp_bases())
        for (const char* f : kWarps) {
            const auto scene = warped(spec, f, {}, -1, 1);
            for (double t : {0.0, 0.3}) {
                const WarpedPoint wp = at(scene, t, p);
                const double m = spec.m();
                const WarpedVector closed{0.0, scaled(m / (wp.w.f * wp.w.f), analyze_point(spec, p).H)};
                const WarpedVector direct = inclusion_tension_oracle(scene, t, p);
                const std::string where = std::string(" f=") + f + " " + tag("t", t);
                c.small("|tau - (m/f^2)H|" + where, wp.norm(wp.minus(direct, closed)), wp.norm(closed), 1e-9);
                c.at_most("hbar(dt, tau)" + where, wp.inner({1.0, Vec(spec.n(), 0.0)}, direct), 1e-12);
            }
        }
}

// 4. τ₂(φ) of the biharmonic slice against
//    (2m P/f⁴)H + τ₂(i)/f⁴ − (m² f′/f³)|H|² ∂t.
void bitension(Criterion& c) {
    const ImmersionSpec spec = builtin::sphere_slice(1.0);
    const std::vector<double> p{0.3, -0.4};
    const Vec H = analyze_point(spec, p).H;
    const Vec tau2i = oracle::submanifold_bitension(spec, p);
    const double m = spec.m();
    for (const char* f : kWarps) {
        const auto scene = warped(spec, f, {}, -1, 1);
        for (double t : {0.0, 0.3}) {
            const WarpedPoint wp = at(scene, t, p);
            const auto [fv, f1, f2] = wp.w;
            const double P = fv * f2 + (m - 1) * f1 * f1;
            const double H2 = spec.ambient.inner(wp.x, H, H);
            const WarpedVector closed{-m * m * f1 / (fv * fv * fv) * H2,
                                      axpy(1 / std::pow(fv, 4), tau2i, scaled(2 * m * P / std::pow(fv, 4), H))};
            const WarpedVector direct = inclusion_bitension_oracle(scene, t, p);
            const std::string where = std::string(" f=") + f + " " + tag("t", t);
            c.small("|tau2 - closed form|" + where, wp.norm(wp.minus(direct, closed)), wp.norm(closed), 1e-6);
        }
    }
}

// 5. Pairing h̄(τ₂(φ), τ(φ)) for the slice under f = e^t.
void pairing_values(Criterion& c) {
    const ImmersionSpec spec = builtin::sphere_slice(1.0);
    const auto scene = warped(spec, "exp(t)", {}, -1, 1);
    const std::vector<double> p{0.0, 0.0};
    const double m = 2;
    for (auto [t, expected] : {std::pair{0.0, 16.0}, std::pair{0.5, 16.0 / std::exp(1.0)}}) {
        const WarpedPoint wp = at(scene, t, p);
        const double direct =
            wp.inner(inclusion_bitension_oracle(scene, t, p), inclusion_tension_oracle(scene, t, p));
        const Vec H = analyze_point(spec, p).H;
        const double H2 = spec.ambient.inner(wp.x, H, H);
        const double formula = 2 * m * m * (wp.w.f * wp.w.f2 + (m - 1) * wp.w.f1 * wp.w.f1) * H2 / std::pow(wp.w.f, 4);
        c.near("direct pairing " + tag("t", t), direct, expected, 1e-6);
        c.near("formula pairing " + tag("t", t), formula, expected, 1e-6);
        c.near("module pairing " + tag("t", t), pairing(scene, t, p).direct, expected, 1e-6);
    }
}

// 6. f = (at + b)^{1/m}.
void power_family(Criterion& c) {
    struct Row {
        double a, b;
        int m;
        double lo, hi;
    };
    for (const Row& row : {Row{1, 2, 2, -1, 3}, Row{3, 1, 3, 0, 2}, Row{-0.5, 4, 2, 0, 4}}) {
        const ImmersionSpec spec = builtin::sphere_slice(1.0, row.m);
        const auto scene = warped(spec, "(a*t + b)^(1/m)", {{"a", row.a}, {"b", row.b}, {"m", row.m}}, row.lo, row.hi);
        const std::vector<double> p(static_cast<std::size_t>(row.m), 0.2);
        for (double t : linspace({row.lo, row.hi, 5})) {
            const std::string where = tag("a", row.a) + " " + tag("b", row.b) + " " + tag("m", row.m) + " " + tag("t", t);
            const WarpEval w = scene.warp.eval(t);
            c.at_most("power residual " + where, w.f * w.f2 + (row.m - 1) * w.f1 * w.f1, 1e-12);
            c.at_most("module power residual " + where, power_family_residual(scene.warp, t, row.m), 1e-12);
            const WarpedPoint wp = at(scene, t, p);
            c.at_most("pairing " + where,
                      wp.inner(inclusion_bitension_oracle(scene, t, p), inclusion_tension_oracle(scene, t, p)), 1e-9);
        }
    }
}

// 7. Tangential part of τ₂(φ), and the pointwise case f′ = f″ = 0.
void tangential(Criterion& c) {
    const ImmersionSpec spec = builtin::sphere_slice(1.0);
    const std::vector<double> p{0.3, -0.4};
    const Vec eta = *analyze_point(spec, p).eta;
    const auto tangential_norm = [&](const WarpedScene& scene, double t) {
        const WarpedPoint wp = at(scene, t, p);
        const WarpedVector tau2 = inclusion_bitension_oracle(scene, t, p);
        const WarpedVector n{0.0, scaled(1 / wp.w.f, eta)};
        const double k = wp.inner(tau2, n);
        return wp.norm(wp.minus(tau2, {0.0, scaled(k, n.fiber)}));
    };
    const auto cos_scene = warped(spec, "2 + cos(t)", {}, -1, 1);
    c.at_most("|tangential| f=2+cos t, t=0", tangential_norm(cos_scene, 0.0), 1e-8);
    c.at_least("|tangential| f=2+cos t, t=0.5", tangential_norm(cos_scene, 0.5), 0.05);
    const auto sq = warped(spec, "2 + t^2", {}, -1, 1);
    const WarpedPoint wsq = at(sq, 0.0, p);
    c.at_least("|tau2| f=2+t^2, t=0 (nonzero)", wsq.norm(inclusion_bitension_oracle(sq, 0.0, p)), 1e-6);
    const auto cube = warped(spec, "2 + t^3", {}, -1, 1);
    const WarpedPoint wcu = at(cube, 0.0, p);
    c.at_most("|tau2| f=2+t^3, t=0", wcu.norm(inclusion_bitension_oracle(cube, 0.0, p)), 1e-7);
}

// 8. Ricci of the warped domain metric.
void ricci(Criterion& c) {
    for (const auto& [spec, p] : warp_bases())
        for (const char* f : kWarps) {
            const auto scene = warped(spec, f, {}, -1, 1);
            for (double t : {0.0, 0.3}) {
                const std::string where = std::string("f=") + f + " " + tag("t", t) + " " + tag(p);
                const auto r = ricci_warped_check(scene, t, p);
                const WarpEval w = scene.warp.eval(t);
                const double m = spec.m();
                // Ric̃ from the Riemann tensor of dt² + f²g in (t, u, v) coordinates
                // on the lift of the g-unit vector ∂_u/|∂_u|_g.
                const oracle::Riemann R(oracle::warped_domain_metric(spec, scene.warp, t, p));
                const auto geo = local_geometry(spec, p, 2);
                const Vec X{0.0, 1 / std::sqrt(geo.g(0, 0).value()), 0.0};
                c.near("Ric~ vs Ric - P " + where, r.ric_tilde, r.ric_M - (w.f * w.f2 + (m - 1) * w.f1 * w.f1), 1e-6);
                c.near("Ric~ independent " + where, R.ricci(X, X), r.ric_tilde, 1e-6);
                const PairingResult pr = pairing(scene, t, p);
                if (pr.closed_form_applicable) c.near("Ricci-form pairing " + where, r.pairing_ricci_form, pr.closed_form, 1e-7);
            }
        }
    const auto slice = warped(builtin::sphere_slice(1.0), "exp(t)", {}, -1, 1);
    c.near("Ric~ f=e^t slice t=0", ricci_warped_check(slice, 0.0, std::vector<double>{0.3, -0.4}).ric_tilde, 0.0, 1e-6);
}

// 9. Jets.
void jets(Criterion& c) {
    biharm::testing::ExprGen gen(0x5eed);
    const double h = 1e-5;
    for (int trial = 0; trial < 100; ++trial) {
        const std::string src = gen.expression(5);
        const expr::Expr e = expr::parse(src);
        const double x = gen.uniform(-0.8, 0.8), y = gen.uniform(-0.8, 0.8);
        const Jet j = biharm::testing::eval_xy(e, x, y, 2);
        const auto f = [&](double dx, double dy) { return biharm::testing::eval_xy_real(e, x + dx, y + dy); };
        const double fd[5] = {(f(h, 0) - f(-h, 0)) / (2 * h), (f(0, h) - f(0, -h)) / (2 * h),
                              (f(h, 0) - 2 * f(0, 0) + f(-h, 0)) / (h * h),
                              (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h),
                              (f(0, h) - 2 * f(0, 0) + f(0, -h)) / (h * h)};
        const double jet[5] = {j.d(0), j.d(1), j.d(0, 0), j.d(0, 1), j.d(1, 1)};
        const char* names[5] = {"x", "y", "xx", "xy", "yy"};
        for (int k = 0; k < 5; ++k)
            c.near(std::string("d_") + names[k] + " of " + src, jet[k], fd[k], 1e-5 * (1 + std::abs(jet[k])));
    }

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> d(-1, 1);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 6;
        const auto random_jet = [&] {
            std::vector<double> co(static_cast<std::size_t>(jet_size(n, 4)));
            for (auto& v : co) v = d(rng);
            return Jet::from_coefficients(co, n, 4);
        };
        const Jet a = random_jet(), b = random_jet(), e = random_jet();
        const Jet ab = a * b;
        for (int i = 0; i < n; ++i)
            c.near("product rule", ab.d(i), a.value() * b.d(i) + b.value() * a.d(i), 1e-13);
        const Jet ba = b * a, l = (a * b) * e, r = a * (b * e);
        for (std::size_t k = 0; k < ab.size(); ++k) {
            c.near("commutativity", ab.coefficients()[k], ba.coefficients()[k], 1e-13);
            c.near("associativity", l.coefficients()[k], r.coefficients()[k], 1e-13);
        }
    }

    const auto bases = warp_bases();
    for (int trial = 0; trial < 20; ++trial) {
        const auto& [spec, p0] = bases[static_cast<std::size_t>(trial % 2)];
        const auto scene = warped(spec, kWarps[trial % 3], {}, -1, 1);
        const double t = 0.8 * d(rng);
        const std::vector<double> p{p0[0] + 0.2 * d(rng), p0[1] + 0.2 * d(rng)};
        const oracle::Riemann R(oracle::warped_domain_metric(spec, scene.warp, t, p));
        const Vec X{d(rng), d(rng), d(rng)}, Y{d(rng), d(rng), d(rng)}, Z{d(rng), d(rng), d(rng)};
        const Vec a = R.apply(X, Y, Z), b = R.apply(Y, Z, X), e = R.apply(Z, X, Y);
        for (std::size_t k = 0; k < 3; ++k) c.at_most("first Bianchi", a[k] + b[k] + e[k], 1e-9);
    }
}

// 10. Cone with u = 2ũ.
void chart_invariance(Criterion& c) {
    for (double r : {0.5, 1.0, 2.0})
        for (double u : {0.5, 1.0, 2.0})
            for (double v : {0.0, 1.0, 4.0}) {
                const std::vector<double> p{u, v}, q{u / 2, v};
                const auto a = system_residuals(builtin::cone(r), p);
                const auto b = system_residuals(builtin::cone(r, true), q);
                const std::string where = tag("r", r) + " " + tag(p);
                c.near("lambda " + where, *a.geometry.lambda, *b.geometry.lambda, 1e-8);
                c.near("|A|^2 " + where, *a.geometry.normA2, *b.geometry.normA2, 1e-8);
                c.near("lap(lambda) " + where, *a.geometry.lapLambda, *b.geometry.lapLambda, 1e-8);
                c.near("Ric(eta,eta) " + where, *a.geometry.ricEtaEta, *b.geometry.ricEtaEta, 1e-8);
                c.near("normal residual " + where, a.normal, b.normal, 1e-8);
                for (std::size_t k = 0; k < 3; ++k)
                    c.near("tangential residual " + where, a.tangential[k], b.tangential[k], 1e-8);
            }
}

} // namespace

int main() {
    std::vector<Criterion> all{
        {1, "Sphere slice"},
        {2, "Cone and parameter scan"},
        {3, "Tension vs first principles"},
        {4, "Bitension vs first principles"},
        {5, "Pairing values for f = e^t"},
        {6, "Power warping family"},
        {7, "Tangential part and pointwise case"},
        {8, "Warped Ricci identity"},
        {9, "Jet correctness"},
        {10, "Chart invariance"},
    };
    const std::vector<std::function<void(Criterion&)>> bodies{
        slice_family, cone_family, tension, bitension, pairing_values, power_family, tangential, ricci, jets,
        chart_invariance};
    int failed = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        all[i].run(bodies[i]);
        if (!all[i].report()) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}
