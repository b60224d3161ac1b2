#include "biharm/biharmonic.hpp"

#include "biharm/error.hpp"

#include <algorithm>
#include <cmath>

namespace biharm {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

constexpr double bisection_width = 1e-10;

} // namespace

SystemResiduals system_residuals(const ImmersionSpec& spec, std::span<const double> point) {
    if (!spec.is_hypersurface())
        throw UsageError("the biharmonic system needs a hypersurface (n = m + 1), got m = " +
                         std::to_string(spec.m()) + ", n = " + std::to_string(spec.n()));
    const auto geo = local_geometry(spec, point);
    const auto hyp = hypersurface_jets(geo);
    const auto frame = tangent_frame(geo);
    const auto shape = shape_operator(geo, hyp, frame);
    const int m = geo.m;
    const double md = m;
    const Vec x = values(geo.X);

    SystemResiduals out;
    GeometryReport& r = out.geometry;
    r.point.assign(point.begin(), point.end());
    r.m = m;
    r.n = geo.n;
    r.g = values(geo.g);
    r.B.assign(sz(m), std::vector<Vec>(sz(m)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r.B[sz(i)][sz(j)] = values(geo.B[sz(i)][sz(j)]);
    r.H = values(geo.H);
    r.H_norm = std::sqrt(std::max(0.0, spec.ambient.inner(x, r.H, r.H)));
    const double lambda = hyp.lambda.value();
    const Vec eta = values(hyp.eta);
    const Vec grad = gradient(geo, hyp.lambda);
    r.lambda = lambda;
    r.eta = eta;
    r.A = shape.A;
    r.normA2 = shape.normA2;
    r.lapLambda = laplace_beltrami(geo, hyp.lambda);
    r.gradLambda = grad;
    r.ricEtaEta = spec.ambient.ricci(x, eta, eta);

    out.normal = md * (-*r.lapLambda + lambda * shape.normA2 - lambda * *r.ricEtaEta);

    // A(grad λ) = Σ_ij h(grad λ, e_i) A_ij e_j; (Ric η)^⊤ = Σ_j h(Ric η, e_j) e_j
    const Vec ric_eta = spec.ambient.ricci_operator(eta);
    Vec A_grad(sz(geo.n), 0.0);
    Vec ric_tan(sz(geo.n), 0.0);
    for (int i = 0; i < m; ++i) {
        const Vec& ei = frame.ambient[sz(i)];
        const double gi = spec.ambient.inner(x, grad, ei);
        for (int j = 0; j < m; ++j)
            A_grad = axpy(gi * shape.A[sz(i * m + j)], frame.ambient[sz(j)], A_grad);
        ric_tan = axpy(spec.ambient.inner(x, ric_eta, ei), ei, ric_tan);
    }
    out.tangential.assign(sz(geo.n), 0.0);
    for (int a = 0; a < geo.n; ++a)
        out.tangential[sz(a)] =
            md * (2.0 * A_grad[sz(a)] + md * lambda * grad[sz(a)] - 2.0 * lambda * ric_tan[sz(a)]);
    out.tangential_norm =
        std::sqrt(std::max(0.0, spec.ambient.inner(x, out.tangential, out.tangential)));
    out.scale = md * (1.0 + std::abs(lambda)) * (1.0 + shape.normA2);
    return out;
}

double normal_residual(const ImmersionSpec& spec, std::span<const double> point) {
    return system_residuals(spec, point).normal;
}

Vec tangential_residual(const ImmersionSpec& spec, std::span<const double> point) {
    return system_residuals(spec, point).tangential;
}

ClassificationRecord classify(const ImmersionSpec& spec,
                              const std::vector<std::vector<double>>& points, double tol) {
    if (points.empty()) throw UsageError("classification needs at least one point");
    if (!(tol >= 0.0)) throw UsageError("tolerance must be non-negative");
    ClassificationRecord rec;
    bool small_H = true;
    for (const auto& p : points) {
        const auto s = system_residuals(spec, p);
        PointResidual pr{p, s.normal, s.tangential, s.tangential_norm, s.geometry.H_norm, s.scale};
        rec.max_normal_relative = std::max(rec.max_normal_relative, std::abs(s.normal) / s.scale);
        rec.max_tangential_relative =
            std::max(rec.max_tangential_relative, s.tangential_norm / s.scale);
        if (!(s.geometry.H_norm <= tol * (1.0 + s.scale))) small_H = false;
        rec.points.push_back(std::move(pr));
    }
    rec.normally_biharmonic = {rec.max_normal_relative <= tol, tol};
    rec.tangentially_biharmonic = {rec.max_tangential_relative <= tol, tol};
    rec.biharmonic = {rec.normally_biharmonic.value && rec.tangentially_biharmonic.value, tol};
    rec.harmonic = {small_H && rec.biharmonic.value, tol};
    return rec;
}

ScanResult parameter_scan(const ImmersionSpec& spec, const std::string& param, double lo,
                          double hi, int samples, std::span<const double> probe) {
    if (!(lo < hi)) throw UsageError("scan range needs lo < hi");
    if (samples < 2) throw UsageError("scan needs at least 2 samples");
    if (!spec.params.contains(param)) throw UsageError("unknown parameter '" + param + "'");

    ScanResult out;
    const auto eval = [&](double v) {
        return normal_residual(spec.with_param(param, v), probe);
    };
    std::vector<std::optional<double>> values(sz(samples));
    for (int k = 0; k < samples; ++k) {
        const double v = k + 1 == samples ? hi : lo + (hi - lo) * k / (samples - 1);
        try {
            const double r = eval(v);
            if (!std::isfinite(r)) throw DomainError("non-finite residual", r);
            values[sz(k)] = r;
            out.samples.push_back({v, r});
        } catch (const Error& e) {
            out.failures.push_back({v, e.what()});
        }
    }
    const auto param_at = [&](int k) {
        return k + 1 == samples ? hi : lo + (hi - lo) * k / (samples - 1);
    };
    for (int k = 0; k < samples; ++k) {
        if (values[sz(k)] && *values[sz(k)] == 0.0) out.roots.push_back(param_at(k));
        if (k + 1 >= samples || !values[sz(k)] || !values[sz(k + 1)]) continue;
        double a = param_at(k);
        double b = param_at(k + 1);
        double fa = *values[sz(k)];
        const double fb = *values[sz(k + 1)];
        if (!(fa * fb < 0.0)) continue;
        bool ok = true;
        while (b - a > bisection_width) {
            const double mid = 0.5 * (a + b);
            double fm = 0.0;
            try {
                fm = eval(mid);
            } catch (const Error& e) {
                out.failures.push_back({mid, e.what()});
                ok = false;
                break;
            }
            if (fm == 0.0) {
                a = b = mid;
                break;
            }
            if ((fa < 0.0) == (fm < 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        if (ok) out.roots.push_back(0.5 * (a + b));
    }
    return out;
}

} // namespace biharm
