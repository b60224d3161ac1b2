#include "biharm/warped.hpp"

#include "biharm/biharmonic.hpp"
#include "biharm/error.hpp"
#include "biharm/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace biharm {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

constexpr int positivity_samples = 64;
constexpr double biharmonic_gate = 1e-7;

WarpedVector split(const Vec& v) { return {v[0], Vec(v.begin() + 1, v.end())}; }

Vec point_of(const ImmersionSpec& spec, std::span<const double> point) {
    return values(local_geometry(spec, point, 2).X);
}

double norm_bar(const WarpEval& w, const ImmersionSpec& spec, const Vec& x, const WarpedVector& v) {
    return std::sqrt(std::max(0.0, warped_inner(w, spec.ambient, x, v, v)));
}

} // namespace

void WarpedScene::validate() const {
    immersion.validate();
    if (!(t_lo < t_hi)) throw SceneError(ErrorKind::scene_invalid, "warp interval needs t_lo < t_hi");
    warp.eval(t_lo);
    warp.eval(t_hi);
    for (int k = 1; k <= positivity_samples; ++k)
        warp.eval(t_lo + (t_hi - t_lo) * k / (positivity_samples + 1));
}

WarpedVector inclusion_tension(const WarpedScene& scene, double t, std::span<const double> point) {
    const WarpEval w = scene.warp.eval(t);
    const MeanCurvature mc = mean_curvature(scene.immersion, point);
    return {0.0, scaled(scene.immersion.m() / (w.f * w.f), mc.H)};
}

WarpedVector inclusion_bitension(const WarpedScene& scene, double t,
                                 std::span<const double> point) {
    const WarpEval w = scene.warp.eval(t);
    const ImmersionSpec& spec = scene.immersion;
    const double m = spec.m();
    const MeanCurvature mc = mean_curvature(spec, point);
    const Vec x = point_of(spec, point);
    const double H2 = spec.ambient.inner(x, mc.H, mc.H);
    const Vec tau2_i = oracle::submanifold_bitension(spec, point);
    const double f4 = std::pow(w.f, 4);
    const double P = w.f * w.f2 + (m - 1.0) * w.f1 * w.f1;
    WarpedVector out{-(m * m * w.f1 / (w.f * w.f * w.f)) * H2, scaled(2.0 * m * P / f4, mc.H)};
    out.fiber = axpy(1.0 / f4, tau2_i, out.fiber);
    return out;
}

PairingResult pairing(const WarpedScene& scene, double t, std::span<const double> point) {
    const WarpEval w = scene.warp.eval(t);
    const ImmersionSpec& spec = scene.immersion;
    const double m = spec.m();
    const Vec x = point_of(spec, point);
    const WarpedVector tau = inclusion_tension(scene, t, point);
    const WarpedVector tau2 = inclusion_bitension(scene, t, point);
    const MeanCurvature mc = mean_curvature(spec, point);
    const double H2 = spec.ambient.inner(x, mc.H, mc.H);
    PairingResult out;
    out.direct = warped_inner(w, spec.ambient, x, tau2, tau);
    out.closed_form = 2.0 * m * m * (w.f * w.f2 + (m - 1.0) * w.f1 * w.f1) * H2 / std::pow(w.f, 4);
    std::vector<std::vector<double>> pts{Vec(point.begin(), point.end())};
    out.closed_form_applicable =
        spec.is_hypersurface() && classify(spec, pts, biharmonic_gate).biharmonic.value;
    return out;
}

double power_family_residual(const WarpFunction& warp, double t, int m) {
    const WarpEval w = warp.eval(t);
    return w.f * w.f2 + (m - 1.0) * w.f1 * w.f1;
}

RicciCheck ricci_warped_check(const WarpedScene& scene, double t, std::span<const double> point,
                              std::optional<Vec> X) {
    const ImmersionSpec& spec = scene.immersion;
    const int m = spec.m();
    const WarpEval w = scene.warp.eval(t);
    const oracle::MapSpec inc = oracle::inclusion_map(spec, point);
    const oracle::Riemann riem_M(inc.domain_metric);
    if (!X) {
        const JetMatrix E = gram_schmidt(inc.domain_metric);
        X = values(E.row(0));
    }
    if (static_cast<int>(X->size()) != m)
        throw UsageError("X needs " + std::to_string(m) + " chart components");
    const double xx = riem_M.inner(*X, *X);
    if (std::abs(xx - 1.0) > 1e-10)
        throw UsageError("X must be unit with respect to g, |X|_g² = " + std::to_string(xx));
    const oracle::Riemann riem_tilde(oracle::warped_domain_metric(spec, scene.warp, t, point));
    Vec Xt{0.0};
    Xt.insert(Xt.end(), X->begin(), X->end());

    RicciCheck out;
    out.ric_M = riem_M.ricci(*X, *X);
    out.ric_tilde = riem_tilde.ricci(Xt, Xt);
    out.power_residual = power_family_residual(scene.warp, t, m);
    out.identity_residual = out.ric_tilde - out.ric_M + out.power_residual;
    const Vec x = point_of(spec, point);
    const MeanCurvature mc = mean_curvature(spec, point);
    const double H2 = spec.ambient.inner(x, mc.H, mc.H);
    out.pairing_ricci_form =
        2.0 * m * m * (out.ric_M - out.ric_tilde) * H2 / std::pow(w.f, 4);
    out.pairing_direct = pairing(scene, t, point).direct;
    return out;
}

WarpedVector inclusion_bitension_oracle(const WarpedScene& scene, double t,
                                        std::span<const double> point) {
    return split(oracle::bitension(oracle::warped_inclusion_map(scene.immersion, scene.warp, t, point)));
}

WarpedVector inclusion_tension_oracle(const WarpedScene& scene, double t,
                                      std::span<const double> point) {
    return split(oracle::tension(oracle::warped_inclusion_map(scene.immersion, scene.warp, t, point)));
}

WarpedReport warped_report(const WarpedScene& scene, double t, std::span<const double> point) {
    const ImmersionSpec& spec = scene.immersion;
    WarpedReport r;
    r.t = t;
    r.point.assign(point.begin(), point.end());
    r.warp = scene.warp.eval(t);
    r.tension = inclusion_tension(scene, t, point);
    r.bitension = inclusion_bitension(scene, t, point);
    r.bitension_oracle = inclusion_bitension_oracle(scene, t, point);
    r.pairing = pairing(scene, t, point);
    r.power_residual = power_family_residual(scene.warp, t, spec.m());

    const auto geo = local_geometry(spec, point, 2);
    const Vec x = values(geo.X);
    const WarpedVector diff{r.bitension.dt - r.bitension_oracle.dt,
                            axpy(-1.0, r.bitension_oracle.fiber, r.bitension.fiber)};
    r.oracle_discrepancy = norm_bar(r.warp, spec, x, diff);

    // Split τ₂(φ) along T(I × M) = span{∂t} ⊕ TM.
    const TangentFrame frame = tangent_frame(geo);
    WarpedVector tan{r.bitension.dt, Vec(sz(spec.n()), 0.0)};
    for (const auto& e : frame.ambient)
        tan.fiber = axpy(spec.ambient.inner(x, r.bitension.fiber, e), e, tan.fiber);
    const WarpedVector nor{0.0, axpy(-1.0, tan.fiber, r.bitension.fiber)};
    r.tangential_part_norm = norm_bar(r.warp, spec, x, tan);
    r.normal_part_norm = norm_bar(r.warp, spec, x, nor);
    return r;
}

} // namespace biharm
