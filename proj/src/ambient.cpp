#include "biharm/ambient.hpp"

#include "biharm/error.hpp"

#include <cmath>
#include <string>

namespace biharm {

const char* to_string(SpaceFormModel model) noexcept {
    switch (model) {
    case SpaceFormModel::euclidean: return "euclidean";
    case SpaceFormModel::sphere: return "sphere";
    case SpaceFormModel::hyperbolic: return "hyperbolic";
    }
    return "?";
}

SpaceFormModel parse_space_form_model(std::string_view name) {
    if (name == "euclidean") return SpaceFormModel::euclidean;
    if (name == "sphere") return SpaceFormModel::sphere;
    if (name == "hyperbolic") return SpaceFormModel::hyperbolic;
    throw ConfigurationError("unknown ambient model '" + std::string(name) +
                             "' (expected euclidean, sphere or hyperbolic)");
}

AmbientChart::AmbientChart(SpaceFormModel model, int dim) : model_(model), dim_(dim) {
    if (dim < 2 || dim > Jet::max_vars)
        throw ConfigurationError("ambient dimension must be in [2, 6], got " + std::to_string(dim));
}

double AmbientChart::curvature() const noexcept {
    switch (model_) {
    case SpaceFormModel::euclidean: return 0.0;
    case SpaceFormModel::sphere: return 1.0;
    case SpaceFormModel::hyperbolic: return -1.0;
    }
    return 0.0;
}

namespace {

double norm2(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

Jet norm2(std::span<const Jet> x) { return dot(x, x); }

} // namespace

void AmbientChart::check_domain(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw UsageError("point has " + std::to_string(x.size()) + " components, ambient dimension is " +
                         std::to_string(dim_));
    if (model_ == SpaceFormModel::hyperbolic) {
        const double r2 = norm2(x);
        if (!(r2 < 1.0))
            throw DomainError("point outside the Poincaré ball (|x|² = " + std::to_string(r2) + ")", r2);
    }
}

void AmbientChart::check_jet_point(std::span<const Jet> x) const {
    const auto v = values(x);
    check_domain(v);
}

Jet AmbientChart::conformal_factor(std::span<const Jet> x) const {
    check_jet_point(x);
    const Jet r2 = norm2(x);
    switch (model_) {
    case SpaceFormModel::euclidean: return r2 * 0.0;
    case SpaceFormModel::sphere: return std::log(2.0) - log(1.0 + r2);
    case SpaceFormModel::hyperbolic: return std::log(2.0) - log(1.0 - r2);
    }
    return r2 * 0.0;
}

JetVector AmbientChart::conformal_gradient(std::span<const Jet> x) const {
    check_jet_point(x);
    JetVector grad;
    grad.reserve(x.size());
    if (model_ == SpaceFormModel::euclidean) {
        for (const auto& xi : x) grad.push_back(xi * 0.0);
        return grad;
    }
    const Jet r2 = norm2(x);
    // sphere: −2x_k / (1 + |x|²); hyperbolic: 2x_k / (1 − |x|²)
    const Jet inv = model_ == SpaceFormModel::sphere ? -2.0 * reciprocal(1.0 + r2)
                                                     : 2.0 * reciprocal(1.0 - r2);
    for (const auto& xi : x) grad.push_back(xi * inv);
    return grad;
}

JetMatrix AmbientChart::metric(std::span<const Jet> x) const {
    const Jet zero = x[0] * 0.0;
    Jet s = zero + 1.0;
    if (model_ != SpaceFormModel::euclidean) {
        check_jet_point(x);
        const Jet r2 = norm2(x);
        const Jet q = model_ == SpaceFormModel::sphere ? 1.0 + r2 : 1.0 - r2;
        s = 4.0 * reciprocal(q * q);
    } else {
        check_jet_point(x);
    }
    JetMatrix h(dim_, dim_, zero);
    for (int a = 0; a < dim_; ++a) h(a, a) = s;
    return h;
}

std::vector<JetMatrix> AmbientChart::christoffel(std::span<const Jet> x) const {
    const JetVector g = conformal_gradient(x);
    const Jet zero = x[0] * 0.0;
    std::vector<JetMatrix> gamma(static_cast<std::size_t>(dim_), JetMatrix(dim_, dim_, zero));
    for (int k = 0; k < dim_; ++k) {
        auto& G = gamma[static_cast<std::size_t>(k)];
        for (int a = 0; a < dim_; ++a) {
            G(a, a) -= g[static_cast<std::size_t>(k)];
            G(k, a) += g[static_cast<std::size_t>(a)];
            G(a, k) += g[static_cast<std::size_t>(a)];
        }
    }
    return gamma;
}

double AmbientChart::scale(std::span<const double> x) const {
    check_domain(x);
    switch (model_) {
    case SpaceFormModel::euclidean: return 1.0;
    case SpaceFormModel::sphere: {
        const double q = 1.0 + norm2(x);
        return 4.0 / (q * q);
    }
    case SpaceFormModel::hyperbolic: {
        const double q = 1.0 - norm2(x);
        return 4.0 / (q * q);
    }
    }
    return 1.0;
}

double AmbientChart::inner(std::span<const double> x, std::span<const double> u,
                           std::span<const double> v) const {
    return scale(x) * dot(u, v);
}

Vec AmbientChart::curvature_tensor(std::span<const double> x, std::span<const double> X,
                                   std::span<const double> Y, std::span<const double> Z) const {
    const double c = curvature();
    Vec out(static_cast<std::size_t>(dim_), 0.0);
    if (c == 0.0) return out;
    const double yz = inner(x, Y, Z);
    const double xz = inner(x, X, Z);
    for (std::size_t a = 0; a < out.size(); ++a) out[a] = c * (yz * X[a] - xz * Y[a]);
    return out;
}

Vec AmbientChart::ricci_operator(std::span<const double> v) const {
    return scaled((dim_ - 1) * curvature(), v);
}

double AmbientChart::ricci(std::span<const double> x, std::span<const double> u,
                           std::span<const double> v) const {
    return (dim_ - 1) * curvature() * inner(x, u, v);
}

WarpEval make_warp_eval(double t, double f, double f1, double f2) {
    if (!(f > 0.0) || !std::isfinite(f))
        throw WarpDomainError("warping function must be positive, f(" + std::to_string(t) +
                                  ") = " + std::to_string(f),
                              t, f);
    return {f, f1, f2};
}

WarpEval WarpFunction::eval(double t) const {
    const auto c = taylor(t, 2);
    return make_warp_eval(t, c[0], c[1], 2.0 * c[2]);
}

std::vector<double> WarpFunction::taylor(double t, int order) const {
    expr::JetBindings vars;
    vars.emplace(var, Jet::variable(0, t, 1, order));
    const Jet f = expr::eval_jet(expr, vars, params);
    return {f.coefficients().begin(), f.coefficients().end()};
}

Jet WarpFunction::compose(const Jet& s) const {
    return compose_univariate(taylor(s.value(), s.order()), s);
}

Jet WarpFunction::compose_derivative(const Jet& s) const {
    if (s.order() < 1) throw UsageError("f' composition needs a jet of order >= 1");
    const auto c = taylor(s.value(), s.order());
    std::vector<double> d(c.size() - 1);
    for (std::size_t k = 0; k + 1 < c.size(); ++k) d[k] = static_cast<double>(k + 1) * c[k + 1];
    return compose_univariate(d, s.truncated(s.order() - 1));
}

WarpFunction make_warp(const std::string& source, expr::ParamBindings params, std::string var) {
    WarpFunction w{expr::parse(source), std::move(params), std::move(var)};
    for (const auto& s : expr::free_symbols(w.expr))
        if (s != w.var && !w.params.contains(s))
            throw SceneError(ErrorKind::scene_invalid, "warp uses undeclared symbol '" + s + "'");
    return w;
}

double warped_inner(const WarpEval& w, const AmbientChart& chart, std::span<const double> x,
                    const WarpedVector& a, const WarpedVector& b) {
    return a.dt * b.dt + w.f * w.f * chart.inner(x, a.fiber, b.fiber);
}

WarpedVector connection_dt_dt(int fiber_dim) {
    return {0.0, Vec(static_cast<std::size_t>(fiber_dim), 0.0)};
}

WarpedVector connection_mixed(const WarpEval& w, std::span<const double> u) {
    return {0.0, scaled(w.f1 / w.f, u)};
}

WarpedVector connection_tangential(const WarpEval& w, std::span<const double> nabla_n_uv,
                                   double h_uv) {
    return {-h_uv * w.f * w.f1, Vec(nabla_n_uv.begin(), nabla_n_uv.end())};
}

Vec radial_curvature(const WarpEval& w, std::span<const double> u) {
    return scaled(-w.f2 / w.f, u);
}

Vec horizontal_curvature(const WarpEval& w, const AmbientChart& chart, std::span<const double> x,
                         std::span<const double> v, std::span<const double> wv,
                         std::span<const double> u) {
    Vec out = chart.curvature_tensor(x, v, wv, u);
    const double k = w.f1 * w.f1;
    const double uw = chart.inner(x, u, wv);
    const double uv = chart.inner(x, u, v);
    for (std::size_t a = 0; a < out.size(); ++a) out[a] -= k * (uw * v[a] - uv * wv[a]);
    return out;
}

WarpedVector warped_curvature(const WarpEval& w, const AmbientChart& chart,
                              std::span<const double> x, const WarpedVector& X,
                              const WarpedVector& Y, const WarpedVector& Z) {
    WarpedVector out{0.0, horizontal_curvature(w, chart, x, X.fiber, Y.fiber, Z.fiber)};
    const double ff2 = w.f * w.f2;
    const double f2_over_f = w.f2 / w.f;
    // R̄(V,∂t)W = f f″ h(V,W) ∂t
    out.dt += Y.dt * ff2 * chart.inner(x, X.fiber, Z.fiber);
    // R̄(∂t,W)U = −f f″ h(W,U) ∂t
    out.dt -= X.dt * ff2 * chart.inner(x, Y.fiber, Z.fiber);
    for (std::size_t a = 0; a < out.fiber.size(); ++a) {
        // R̄(V,∂t)∂t = −(f″/f) V and R̄(∂t,W)∂t = (f″/f) W
        out.fiber[a] += -Y.dt * Z.dt * f2_over_f * X.fiber[a] + X.dt * Z.dt * f2_over_f * Y.fiber[a];
    }
    return out;
}

} // namespace biharm
