#include "biharm/error.hpp"
#include "biharm/oracle.hpp"
#include "biharm/scene.hpp"
#include "biharm/warped.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace biharm;

namespace {

WarpedScene make_scene(ImmersionSpec spec, const std::string& f, expr::ParamBindings params = {}, double lo = -1,
                       double hi = 1) {
    WarpedScene s{std::move(spec), builtin::warp(f, std::move(params)), lo, hi};
    s.validate();
    return s;
}

double h_norm2(const ImmersionSpec& spec, std::span<const double> p, const Vec& v) {
    std::vector<double> x;
    for (const auto& c : spec.components) {
        expr::ParamBindings b = spec.params;
        for (std::size_t i = 0; i < spec.vars.size(); ++i) b[spec.vars[i]] = p[i];
        x.push_back(expr::eval_real(c, b));
    }
    return spec.ambient.inner(x, v, v);
}

void expect_wv_near(const WarpedVector& a, const WarpedVector& b, double tol) {
    EXPECT_NEAR(a.dt, b.dt, tol);
    ASSERT_EQ(a.fiber.size(), b.fiber.size());
    for (std::size_t i = 0; i < a.fiber.size(); ++i) EXPECT_NEAR(a.fiber[i], b.fiber[i], tol) << "component " << i;
}

struct Case {
    const char* name;
    ImmersionSpec spec;
    const char* warp;
};

std::vector<Case> cases() {
    const AmbientChart s3(SpaceFormModel::sphere, 3);
    return {{"slice1_exp", builtin::sphere_slice(1.0), "exp(t)"},
            {"slice2_cos", builtin::sphere_slice(2.0), "2 + cos(t)"},
            {"cone_sqrt", builtin::cone(1.0), "sqrt(t + 2)"},
            {"graph_poly", make_immersion({"u", "v"}, {"u + 0.2*v^2", "v*cos(u)", "0.4 + 0.3*u*v"}, {}, s3),
             "1 + t^2"},
            {"slice_m3", builtin::sphere_slice(1.0, 3), "(3*t + 1)^(1/3)"}};
}

class WarpedOracle : public ::testing::TestWithParam<std::size_t> {};

} // namespace

TEST_P(WarpedOracle, ClosedFormsMatchFirstPrinciples) {
    const Case c = cases()[GetParam()];
    SCOPED_TRACE(c.name);
    const auto scene = make_scene(c.spec, c.warp, {}, 0.0, 0.9);
    const int m = c.spec.m();
    std::vector<double> p(static_cast<std::size_t>(m), 0.2);
    if (std::string(c.name) == "cone_sqrt") p = {1.0, 0.4};
    for (double t : {0.0, 0.3, 0.8}) {
        expect_wv_near(inclusion_tension(scene, t, p), inclusion_tension_oracle(scene, t, p), 1e-9);
        const auto closed = inclusion_bitension(scene, t, p);
        const auto direct = inclusion_bitension_oracle(scene, t, p);
        double scale = 1 + std::abs(direct.dt);
        for (double v : direct.fiber) scale = std::max(scale, std::abs(v));
        expect_wv_near(closed, direct, 1e-7 * scale);
    }
}

INSTANTIATE_TEST_SUITE_P(Scenes, WarpedOracle, ::testing::Range<std::size_t>(0, 5));

// On a slice that is not biharmonic the fiber part of τ₂(φ) carries the
// submanifold bitension τ₂(i) with weight 1/f⁴, which already includes the
// factor m.
TEST(Warped, SubmanifoldBitensionWeight) {
    const auto spec = builtin::sphere_slice(2.0);
    const auto scene = make_scene(spec, "2 + cos(t)");
    const std::vector<double> p{0.1, -0.3};
    const double t = 0.4;
    const WarpEval w = scene.warp.eval(t);
    const double m = 2;
    const double P = w.f * w.f2 + (m - 1) * w.f1 * w.f1;
    const Vec H = analyze_point(spec, p).H;
    const Vec tau2i = oracle::submanifold_bitension(spec, p);
    const auto direct = inclusion_bitension_oracle(scene, t, p);
    const double f4 = std::pow(w.f, 4);
    double miss = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double expected = 2 * m * P / f4 * H[i] + tau2i[i] / f4;
        EXPECT_NEAR(direct.fiber[i], expected, 1e-9 * (1 + std::abs(expected))) << "component " << i;
        miss = std::max(miss, std::abs(direct.fiber[i] - (2 * m * P / f4 * H[i] + m * tau2i[i] / f4)));
    }
    EXPECT_GT(miss, 1e-3);
}

TEST(Warped, RadialComponent) {
    const auto spec = builtin::sphere_slice(1.0);
    const std::vector<double> p{0.3, 0.2};
    const double H2 = h_norm2(spec, p, analyze_point(spec, p).H);
    EXPECT_NEAR(H2, 1.0, 1e-12);
    for (const char* f : {"exp(t)", "sqrt(t + 2)", "2 + cos(t)"}) {
        const auto scene = make_scene(spec, f);
        for (double t : {-0.5, 0.0, 0.5}) {
            const WarpEval w = scene.warp.eval(t);
            EXPECT_NEAR(inclusion_bitension(scene, t, p).dt, -4 * w.f1 / std::pow(w.f, 3) * H2, 1e-10);
        }
    }
    EXPECT_NEAR(inclusion_bitension(make_scene(spec, "sqrt(t + 2)"), 0.0, p).dt, -0.5, 1e-12);
}

TEST(Warped, PairingOnCliffordSlice) {
    const auto scene = make_scene(builtin::sphere_slice(1.0), "exp(t)");
    const std::vector<double> p{0.0, 0.0};
    const auto at0 = pairing(scene, 0.0, p);
    EXPECT_TRUE(at0.closed_form_applicable);
    EXPECT_NEAR(at0.direct, 16.0, 1e-9);
    EXPECT_NEAR(at0.closed_form, 16.0, 1e-12);
    const auto at5 = pairing(scene, 0.5, p);
    EXPECT_NEAR(at5.direct, 16.0 / std::exp(1.0), 1e-9);
    EXPECT_NEAR(at5.closed_form, at5.direct, 1e-9);
    EXPECT_FALSE(pairing(make_scene(builtin::sphere_slice(2.0), "exp(t)"), 0.0, p).closed_form_applicable);
}

TEST(Warped, PowerFamilyMakesPairingVanish) {
    for (auto [a, b, m] : {std::tuple{1.0, 2.0, 2}, std::tuple{3.0, 1.0, 3}, std::tuple{-0.5, 4.0, 2}}) {
        const auto spec = builtin::sphere_slice(1.0, m);
        const auto scene = make_scene(spec, "(a*t + b)^(1/m)", {{"a", a}, {"b", b}, {"m", m}}, 0.0, 1.0);
        const std::vector<double> p(static_cast<std::size_t>(m), 0.1);
        for (double t : {0.0, 0.25, 0.75}) {
            EXPECT_NEAR(power_family_residual(scene.warp, t, m), 0.0, 1e-12);
            EXPECT_NEAR(pairing(scene, t, p).direct, 0.0, 1e-8);
        }
    }
    const auto exp_scene = make_scene(builtin::sphere_slice(1.0), "exp(t)");
    EXPECT_NEAR(power_family_residual(exp_scene.warp, 0.0, 2), 2.0, 1e-13);
}

TEST(Warped, RicciIdentity) {
    const auto scene = make_scene(builtin::sphere_slice(1.0), "exp(t)");
    const std::vector<double> p{0.2, 0.1};
    const auto r = ricci_warped_check(scene, 0.0, p);
    EXPECT_NEAR(r.ric_M, 2.0, 1e-9);
    EXPECT_NEAR(r.ric_tilde, 0.0, 1e-9);
    EXPECT_NEAR(r.identity_residual, 0.0, 1e-9);
    EXPECT_NEAR(r.pairing_ricci_form, r.pairing_direct, 1e-8);
    for (double t : {-0.7, 0.3}) {
        const auto s = ricci_warped_check(scene, t, p);
        EXPECT_NEAR(s.identity_residual, 0.0, 1e-9);
        EXPECT_NEAR(s.pairing_ricci_form, s.pairing_direct, 1e-8);
    }
    EXPECT_THROW(ricci_warped_check(scene, 0.0, p, Vec{1.0, 0.0}), UsageError);
}

TEST(Warped, MinimalFiberIsHarmonic) {
    const auto scene = make_scene(builtin::equator(), "2 + cos(t)");
    const std::vector<double> p{0.4, -0.2};
    const auto tau = inclusion_tension(scene, 0.3, p);
    const auto tau2 = inclusion_bitension(scene, 0.3, p);
    expect_wv_near(tau, {0.0, {0, 0, 0}}, 1e-12);
    expect_wv_near(tau2, {0.0, {0, 0, 0}}, 1e-10);
}

TEST(Warped, TrivialWarpIsProduct) {
    const auto spec = builtin::sphere_slice(2.0);
    const auto scene = make_scene(spec, "1 + 0*t");
    const std::vector<double> p{0.1, 0.2};
    const auto tau2 = inclusion_bitension_oracle(scene, 0.5, p);
    const Vec tau2i = oracle::submanifold_bitension(spec, p);
    expect_wv_near(tau2, {0.0, tau2i}, 1e-9);
}

TEST(Warped, Validation) {
    EXPECT_THROW(make_scene(builtin::plane(), "t", {}, -1, 1), WarpDomainError);
    EXPECT_THROW(make_scene(builtin::plane(), "exp(t)", {}, 1, -1), SceneError);
    // Positive at both endpoints, negative inside.
    EXPECT_THROW(make_scene(builtin::plane(), "t^2 - 0.25", {}, -1, 1), WarpDomainError);
    EXPECT_NO_THROW(make_scene(builtin::plane(), "(a*t + b)^(1/m)", {{"a", 1}, {"b", 2}, {"m", 2}}, -1, 3));
    const auto report = warped_report(make_scene(builtin::sphere_slice(1.0), "exp(t)"), 0.0, std::vector<double>{0, 0});
    EXPECT_LT(report.oracle_discrepancy, 1e-9);
    EXPECT_NEAR(report.pairing.direct, 16.0, 1e-9);
}
