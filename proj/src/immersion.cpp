#include "biharm/immersion.hpp"

#include "biharm/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace biharm {

namespace {

constexpr double degeneracy_ratio = 1e-12;

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

} // namespace

void ImmersionSpec::validate() const {
    const auto invalid = [](const std::string& msg) {
        throw SceneError(ErrorKind::scene_invalid, msg);
    };
    if (vars.empty()) invalid("immersion needs at least one chart variable");
    if (static_cast<int>(components.size()) != ambient.dim())
        invalid("component count " + std::to_string(components.size()) +
                " does not match ambient dimension " + std::to_string(ambient.dim()));
    if (m() >= n())
        invalid("intrinsic dimension " + std::to_string(m()) + " must be below ambient dimension " +
                std::to_string(n()));
    std::set<std::string> declared;
    for (const auto& v : vars) {
        if (!declared.insert(v).second) invalid("duplicate chart variable '" + v + "'");
        if (params.contains(v)) invalid("'" + v + "' is both a chart variable and a parameter");
    }
    for (const auto& [name, value] : params) declared.insert(name);
    for (std::size_t a = 0; a < components.size(); ++a)
        for (const auto& s : expr::free_symbols(components[a]))
            if (!declared.contains(s))
                invalid("component " + std::to_string(a) + " uses undeclared symbol '" + s + "'");
}

ImmersionSpec ImmersionSpec::with_param(const std::string& name, double value) const {
    ImmersionSpec copy = *this;
    copy.params[name] = value;
    return copy;
}

ImmersionSpec make_immersion(std::vector<std::string> vars,
                             const std::vector<std::string>& components,
                             expr::ParamBindings params, AmbientChart ambient) {
    std::vector<expr::Expr> parsed;
    parsed.reserve(components.size());
    for (const auto& c : components) parsed.push_back(expr::parse(c));
    ImmersionSpec spec{std::move(vars), std::move(parsed), std::move(params), ambient};
    spec.validate();
    return spec;
}

LocalGeometry local_geometry(const ImmersionSpec& spec, std::span<const double> point, int order) {
    const int m = spec.m();
    const int n = spec.n();
    if (static_cast<int>(point.size()) != m)
        throw UsageError("point has " + std::to_string(point.size()) + " coordinates, immersion has " +
                         std::to_string(m) + " chart variables");
    if (order < 2 || order > Jet::max_order)
        throw ConfigurationError("local geometry needs jet order in [2, 4]");

    LocalGeometry geo;
    geo.m = m;
    geo.n = n;
    geo.order = order;
    geo.point.assign(point.begin(), point.end());

    expr::JetBindings seeds;
    for (int i = 0; i < m; ++i) seeds.emplace(spec.vars[sz(i)], Jet::variable(i, point[sz(i)], m, order));
    for (const auto& c : spec.components) geo.X.push_back(expr::eval_jet(c, seeds, spec.params));

    geo.dX.resize(sz(m));
    for (int i = 0; i < m; ++i) geo.dX[sz(i)] = derivative(geo.X, i);

    const JetVector x1 = truncated(geo.X, order - 1);
    geo.h = spec.ambient.metric(x1);
    geo.gamma_n = spec.ambient.christoffel(x1);

    const Jet zero1 = x1[0] * 0.0;
    geo.g = JetMatrix(m, m, zero1);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            geo.g(i, j) = bilinear(geo.h, geo.dX[sz(i)], geo.dX[sz(j)]);
            geo.g(j, i) = geo.g(i, j);
        }

    const double det = determinant(truncated(geo.g, 0)).value();
    double diag = 1.0;
    for (int i = 0; i < m; ++i) diag *= geo.g(i, i).value();
    if (!(diag > 0.0) || !(det > degeneracy_ratio * diag))
        throw DegenerateImmersionError("induced metric is degenerate (det g = " + std::to_string(det) +
                                           ")",
                                       det);
    geo.g_inv = inverse(geo.g);

    const int k2 = order - 2;
    const JetMatrix ginv2 = truncated(geo.g_inv, k2);
    std::vector<JetMatrix> dg;
    for (int k = 0; k < m; ++k) dg.push_back(derivative(geo.g, k));
    const Jet zero2 = zero1.truncated(k2);
    geo.gamma_m.assign(sz(m), JetMatrix(m, m, zero2));
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                Jet s = zero2;
                for (int l = 0; l < m; ++l)
                    s += ginv2(k, l) * (dg[sz(i)](l, j) + dg[sz(j)](l, i) - dg[sz(l)](i, j));
                geo.gamma_m[sz(k)](i, j) = 0.5 * s;
            }

    std::vector<JetVector> dX2(sz(m));
    for (int i = 0; i < m; ++i) dX2[sz(i)] = truncated(geo.dX[sz(i)], k2);
    std::vector<JetMatrix> gn2;
    for (const auto& G : geo.gamma_n) gn2.push_back(truncated(G, k2));

    geo.B.assign(sz(m), std::vector<JetVector>(sz(m)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            JetVector b = derivative(geo.dX[sz(i)], j);
            for (int a = 0; a < n; ++a) {
                Jet s = b[sz(a)];
                s += bilinear(gn2[sz(a)], dX2[sz(i)], dX2[sz(j)]);
                for (int k = 0; k < m; ++k) s -= geo.gamma_m[sz(k)](i, j) * dX2[sz(k)][sz(a)];
                b[sz(a)] = std::move(s);
            }
            geo.B[sz(i)][sz(j)] = std::move(b);
        }

    geo.H.assign(sz(n), zero2);
    for (int a = 0; a < n; ++a) {
        Jet s = zero2;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) s += ginv2(i, j) * geo.B[sz(i)][sz(j)][sz(a)];
        geo.H[sz(a)] = s * (1.0 / m);
    }
    return geo;
}

HypersurfaceJets hypersurface_jets(const LocalGeometry& geo) {
    if (geo.n != geo.m + 1)
        throw UsageError("normal, mean curvature function and shape operator need a hypersurface (n = m + 1)");
    const int n = geo.n;
    const Jet zero = geo.dX[0][0] * 0.0;
    // Cofactor covector: ω_a = det(∂_1X, …, ∂_mX, e_a), so ω annihilates the
    // tangent space and det(∂_1X, …, ∂_mX, η) = ω(η) > 0.
    JetVector omega;
    for (int a = 0; a < n; ++a) {
        JetMatrix mat(n, n, zero);
        for (int i = 0; i < geo.m; ++i)
            for (int b = 0; b < n; ++b) mat(i, b) = geo.dX[sz(i)][sz(b)];
        mat(n - 1, a) = zero + 1.0;
        omega.push_back(determinant(mat));
    }
    const JetVector raw = biharm::apply(inverse(geo.h), omega);
    const Jet inv_norm = reciprocal(sqrt(dot(omega, raw)));
    HypersurfaceJets out;
    for (const auto& r : raw) out.eta.push_back(r * inv_norm);
    const int k2 = geo.order - 2;
    out.lambda = bilinear(truncated(geo.h, k2), geo.H, truncated(out.eta, k2));
    return out;
}

TangentFrame tangent_frame(const LocalGeometry& geo) {
    TangentFrame frame;
    frame.coeffs = gram_schmidt(geo.g);
    for (int k = 0; k < geo.m; ++k) {
        Vec e(sz(geo.n), 0.0);
        for (int i = 0; i < geo.m; ++i) {
            const double c = frame.coeffs(k, i).value();
            for (int a = 0; a < geo.n; ++a) e[sz(a)] += c * geo.dX[sz(i)][sz(a)].value();
        }
        frame.ambient.push_back(std::move(e));
    }
    return frame;
}

ShapeOperator shape_operator(const LocalGeometry& geo, const HypersurfaceJets& hyp,
                             const TangentFrame& frame) {
    const int m = geo.m;
    const int n = geo.n;
    const Vec eta = values(hyp.eta);
    std::vector<Vec> d_eta(sz(m));
    for (int k = 0; k < m; ++k) {
        Vec v(sz(n));
        for (int a = 0; a < n; ++a) {
            double s = hyp.eta[sz(a)].d(k);
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    s += geo.gamma_n[sz(a)](b, c).value() * geo.dX[sz(k)][sz(b)].value() * eta[sz(c)];
            v[sz(a)] = s;
        }
        d_eta[sz(k)] = std::move(v);
    }
    ShapeOperator out;
    out.A.assign(sz(m * m), 0.0);
    for (int i = 0; i < m; ++i) {
        Vec nabla(sz(n), 0.0);
        for (int k = 0; k < m; ++k) nabla = axpy(frame.coeffs(i, k).value(), d_eta[sz(k)], nabla);
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    s += geo.h(a, b).value() * nabla[sz(a)] * frame.ambient[sz(j)][sz(b)];
            out.A[sz(i * m + j)] = -s;
            out.normA2 += s * s;
        }
    }
    return out;
}

double laplace_beltrami(const LocalGeometry& geo, const Jet& f) {
    if (f.order() < 2) throw UsageError("Laplace–Beltrami needs a jet of order >= 2");
    const int k1 = f.order() - 1;
    const int m = geo.m;
    const Jet sq = sqrt(determinant(truncated(geo.g, k1)));
    const JetMatrix ginv = truncated(geo.g_inv, k1);
    JetVector df;
    for (int j = 0; j < m; ++j) df.push_back(f.derivative(j));
    double div = 0.0;
    for (int i = 0; i < m; ++i) {
        Jet flux = ginv(i, 0) * df[0];
        for (int j = 1; j < m; ++j) flux += ginv(i, j) * df[sz(j)];
        div += (sq * flux).d(i);
    }
    return div / sq.value();
}

Vec gradient(const LocalGeometry& geo, const Jet& f) {
    const int m = geo.m;
    Vec out(sz(geo.n), 0.0);
    for (int i = 0; i < m; ++i) {
        double gi = 0.0;
        for (int j = 0; j < m; ++j) gi += geo.g_inv(i, j).value() * f.d(j);
        for (int a = 0; a < geo.n; ++a) out[sz(a)] += gi * geo.dX[sz(i)][sz(a)].value();
    }
    return out;
}

JetMatrix first_fundamental_form(const ImmersionSpec& spec, std::span<const double> point) {
    return local_geometry(spec, point).g;
}

std::vector<std::vector<Vec>> second_fundamental_form(const ImmersionSpec& spec,
                                                      std::span<const double> point) {
    const auto geo = local_geometry(spec, point);
    std::vector<std::vector<Vec>> out(sz(geo.m), std::vector<Vec>(sz(geo.m)));
    for (int i = 0; i < geo.m; ++i)
        for (int j = 0; j < geo.m; ++j) out[sz(i)][sz(j)] = values(geo.B[sz(i)][sz(j)]);
    return out;
}

MeanCurvature mean_curvature(const ImmersionSpec& spec, std::span<const double> point) {
    const auto geo = local_geometry(spec, point);
    MeanCurvature out{values(geo.H), std::nullopt, std::nullopt};
    if (spec.is_hypersurface()) {
        const auto hyp = hypersurface_jets(geo);
        out.lambda = hyp.lambda.value();
        out.eta = values(hyp.eta);
    }
    return out;
}

ShapeOperator shape_operator(const ImmersionSpec& spec, std::span<const double> point) {
    const auto geo = local_geometry(spec, point);
    return shape_operator(geo, hypersurface_jets(geo), tangent_frame(geo));
}

double laplace_beltrami(const ImmersionSpec& spec, std::span<const double> point) {
    const auto geo = local_geometry(spec, point);
    return laplace_beltrami(geo, hypersurface_jets(geo).lambda);
}

Vec gradient(const ImmersionSpec& spec, std::span<const double> point) {
    const auto geo = local_geometry(spec, point);
    return gradient(geo, hypersurface_jets(geo).lambda);
}

GeometryReport analyze_point(const ImmersionSpec& spec, std::span<const double> point) {
    const auto geo = local_geometry(spec, point);
    GeometryReport r;
    r.point.assign(point.begin(), point.end());
    r.m = geo.m;
    r.n = geo.n;
    r.g = values(geo.g);
    r.B.assign(sz(geo.m), std::vector<Vec>(sz(geo.m)));
    for (int i = 0; i < geo.m; ++i)
        for (int j = 0; j < geo.m; ++j) r.B[sz(i)][sz(j)] = values(geo.B[sz(i)][sz(j)]);
    r.H = values(geo.H);
    const Vec x = values(geo.X);
    r.H_norm = std::sqrt(std::max(0.0, spec.ambient.inner(x, r.H, r.H)));
    if (spec.is_hypersurface()) {
        const auto hyp = hypersurface_jets(geo);
        const auto frame = tangent_frame(geo);
        const auto shape = shape_operator(geo, hyp, frame);
        r.lambda = hyp.lambda.value();
        r.eta = values(hyp.eta);
        r.A = shape.A;
        r.normA2 = shape.normA2;
        r.lapLambda = laplace_beltrami(geo, hyp.lambda);
        r.gradLambda = gradient(geo, hyp.lambda);
        r.ricEtaEta = spec.ambient.ricci(x, *r.eta, *r.eta);
    }
    return r;
}

} // namespace biharm
