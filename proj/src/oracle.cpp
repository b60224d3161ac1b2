#include "biharm/oracle.hpp"

#include "biharm/error.hpp"

#include <string>

namespace biharm::oracle {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

Jet at(const Jet& a, int order) { return a.order() == order ? a : a.truncated(order); }

JetVector eval_components(const ImmersionSpec& spec, std::span<const double> point, int first_var,
                          int n_vars, int order) {
    if (static_cast<int>(point.size()) != spec.m())
        throw UsageError("point has " + std::to_string(point.size()) + " coordinates, immersion has " +
                         std::to_string(spec.m()) + " chart variables");
    expr::JetBindings seeds;
    for (int i = 0; i < spec.m(); ++i)
        seeds.emplace(spec.vars[sz(i)], Jet::variable(first_var + i, point[sz(i)], n_vars, order));
    JetVector out;
    for (const auto& c : spec.components) out.push_back(expr::eval_jet(c, seeds, spec.params));
    return out;
}

/// G_ab = h_IJ(z) ∂_a z^I ∂_b z^J over the first `count` domain variables
/// starting at `first`.
JetMatrix pull_back(const Codomain& target, const JetVector& z, int first, int count) {
    const MetricJets hz = target.metric(z);
    const int p = z[0].order() - 1;
    const int D = target.dim();
    std::vector<JetVector> dz;
    for (int a = 0; a < count; ++a) dz.push_back(derivative(z, first + a));
    JetMatrix G(count, count, Jet::constant(0.0, z[0].n_vars(), p));
    for (int a = 0; a < count; ++a)
        for (int b = a; b < count; ++b) {
            Jet s = G(a, b);
            for (int I = 0; I < D; ++I)
                for (int J = 0; J < D; ++J)
                    s += hz.h(I, J) * dz[sz(a)][sz(I)] * dz[sz(b)][sz(J)];
            G(a, b) = s;
            G(b, a) = s;
        }
    return G;
}

/// Shared pieces of the tension/bitension computation.
struct Pipeline {
    int d = 0;
    int D = 0;
    int K = 0;
    const MapSpec* map = nullptr;
    std::vector<JetVector> dphi;       // order K − 1
    std::vector<JetMatrix> gamma_bar;  // order K − 1
    JetMatrix E;                       // order K − 1
    std::vector<JetVector> nabla_ee;   // order K − 2, domain components
};

Pipeline build(const MapSpec& map) {
    Pipeline p;
    p.map = &map;
    p.d = static_cast<int>(map.point.size());
    p.D = map.codomain->dim();
    p.K = map.map.at(0).order();
    if (p.K < 4) throw ConfigurationError("bitension oracle needs order-4 map jets");
    if (static_cast<int>(map.map.size()) != p.D)
        throw UsageError("map has " + std::to_string(map.map.size()) + " components, codomain has " +
                         std::to_string(p.D));
    for (int a = 0; a < p.d; ++a) p.dphi.push_back(derivative(map.map, a));
    p.gamma_bar = christoffel(map.codomain->metric(map.map));

    const JetMatrix G = truncated(map.domain_metric, p.K - 1);
    p.E = gram_schmidt(G);
    const auto gamma = christoffel(differentiate_metric(G));
    for (int i = 0; i < p.d; ++i) {
        JetVector v;
        for (int c = 0; c < p.d; ++c) {
            Jet s = Jet::constant(0.0, p.d, p.K - 2);
            for (int a = 0; a < p.d; ++a) {
                Jet inner = p.E(i, c).derivative(a);
                for (int b = 0; b < p.d; ++b)
                    inner += gamma[sz(c)](a, b) * at(p.E(i, b), p.K - 2);
                s += at(p.E(i, a), p.K - 2) * inner;
            }
            v.push_back(s);
        }
        p.nabla_ee.push_back(std::move(v));
    }
    return p;
}

/// Σ_a w^a ∇^φ_{∂_a} Y for a field Y along φ; result order Y.order() − 1.
JetVector covariant(const Pipeline& p, const JetVector& Y, std::span<const Jet> w) {
    const int q = Y[0].order() - 1;
    JetVector out(sz(p.D), Jet::constant(0.0, p.d, q));
    for (int a = 0; a < p.d; ++a) {
        const Jet wa = at(w[sz(a)], q);
        for (int K = 0; K < p.D; ++K) {
            Jet s = Y[sz(K)].derivative(a);
            for (int I = 0; I < p.D; ++I) {
                const Jet gd = at(p.dphi[sz(a)][sz(I)], q);
                for (int J = 0; J < p.D; ++J)
                    s += at(p.gamma_bar[sz(K)](I, J), q) * gd * at(Y[sz(J)], q);
            }
            out[sz(K)] += wa * s;
        }
    }
    return out;
}

JetVector frame_row(const Pipeline& p, int i) { return p.E.row(i); }

JetVector push_forward(const Pipeline& p, std::span<const Jet> w, int order) {
    JetVector out(sz(p.D), Jet::constant(0.0, p.d, order));
    for (int a = 0; a < p.d; ++a)
        for (int K = 0; K < p.D; ++K)
            out[sz(K)] += at(w[sz(a)], order) * at(p.dphi[sz(a)][sz(K)], order);
    return out;
}

JetVector tension_jets(const Pipeline& p) {
    JetVector tau(sz(p.D), Jet::constant(0.0, p.d, p.K - 2));
    for (int i = 0; i < p.d; ++i) {
        const JetVector e = frame_row(p, i);
        const JetVector V = push_forward(p, e, p.K - 1);
        const JetVector W = covariant(p, V, e);
        const JetVector N = push_forward(p, p.nabla_ee[sz(i)], p.K - 2);
        for (int K = 0; K < p.D; ++K) tau[sz(K)] += W[sz(K)] - N[sz(K)];
    }
    return tau;
}

/// −Σ_i [R(Y, dφ e_i)dφ e_i + ∇_{e_i}∇_{e_i}Y − ∇_{∇_{e_i}e_i}Y] for Y of order ≥ 2.
Vec bilaplace_term(const Pipeline& p, const JetVector& Y) {
    const Vec z = values(p.map->map);
    const Vec y = values(Y);
    Vec out(sz(p.D), 0.0);
    for (int i = 0; i < p.d; ++i) {
        const JetVector e = frame_row(p, i);
        const Vec V = values(push_forward(p, e, 0));
        const Vec R = p.map->codomain->curvature(z, y, V, V);
        const JetVector U = covariant(p, Y, e);
        const JetVector UU = covariant(p, U, e);
        const JetVector Nt = covariant(p, Y, p.nabla_ee[sz(i)]);
        for (int K = 0; K < p.D; ++K)
            out[sz(K)] -= R[sz(K)] + UU[sz(K)].value() - Nt[sz(K)].value();
    }
    return out;
}

} // namespace

std::vector<JetMatrix> christoffel(const MetricJets& metric) {
    const int D = metric.h.rows();
    if (static_cast<int>(metric.dh.size()) != D)
        throw UsageError("metric partials do not match metric dimension");
    const JetMatrix hinv = inverse(metric.h);
    const Jet zero = metric.h(0, 0) * 0.0;
    std::vector<JetMatrix> gamma(sz(D), JetMatrix(D, D, zero));
    for (int K = 0; K < D; ++K)
        for (int I = 0; I < D; ++I)
            for (int J = I; J < D; ++J) {
                Jet s = zero;
                for (int L = 0; L < D; ++L)
                    s += hinv(K, L) *
                         (metric.dh[sz(I)](L, J) + metric.dh[sz(J)](L, I) - metric.dh[sz(L)](I, J));
                s *= 0.5;
                gamma[sz(K)](I, J) = s;
                gamma[sz(K)](J, I) = s;
            }
    return gamma;
}

MetricJets differentiate_metric(const JetMatrix& metric) {
    const int p = metric(0, 0).order();
    if (p < 1) throw ConfigurationError("metric jets must have order >= 1 to differentiate");
    MetricJets out{truncated(metric, p - 1), {}};
    for (int L = 0; L < metric.rows(); ++L) out.dh.push_back(derivative(metric, L));
    return out;
}

MetricJets SpaceFormCodomain::metric(std::span<const Jet> z) const {
    const int K = z[0].order();
    const JetMatrix h = chart_.metric(z);
    const JetVector grad = chart_.conformal_gradient(z);
    const int n = chart_.dim();
    const Jet zero = Jet::constant(0.0, z[0].n_vars(), K - 1);
    MetricJets out{truncated(h, K - 1), std::vector<JetMatrix>(sz(n), JetMatrix(n, n, zero))};
    for (int L = 0; L < n; ++L)
        for (int a = 0; a < n; ++a)
            out.dh[sz(L)](a, a) = at(2.0 * grad[sz(L)] * h(a, a), K - 1);
    return out;
}

double SpaceFormCodomain::inner(std::span<const double> z, std::span<const double> u,
                                std::span<const double> v) const {
    return chart_.inner(z, u, v);
}

Vec SpaceFormCodomain::curvature(std::span<const double> z, std::span<const double> X,
                                 std::span<const double> Y, std::span<const double> Z) const {
    return chart_.curvature_tensor(z, X, Y, Z);
}

namespace {

WarpedVector split(std::span<const double> v) { return {v[0], Vec(v.begin() + 1, v.end())}; }

} // namespace

MetricJets WarpedCodomain::metric(std::span<const Jet> z) const {
    const int K = z[0].order();
    const int n = chart_.dim();
    warp_.eval(z[0].value());
    const auto x = z.subspan(1);
    const Jet s = chart_.metric(x)(0, 0);
    const JetVector grad = chart_.conformal_gradient(x);
    const Jet f = warp_.compose(z[0]);
    const Jet fp = warp_.compose_derivative(z[0]);
    const Jet zero = Jet::constant(0.0, z[0].n_vars(), K - 1);
    MetricJets out{JetMatrix(n + 1, n + 1, zero),
                   std::vector<JetMatrix>(sz(n + 1), JetMatrix(n + 1, n + 1, zero))};
    out.h(0, 0) = zero + 1.0;
    const Jet f2s = f * f * s;
    const Jet dt = 2.0 * at(f, K - 1) * fp * at(s, K - 1);
    for (int a = 1; a <= n; ++a) {
        out.h(a, a) = at(f2s, K - 1);
        out.dh[0](a, a) = dt;
        for (int L = 0; L < n; ++L) out.dh[sz(L + 1)](a, a) = at(2.0 * grad[sz(L)] * f2s, K - 1);
    }
    return out;
}

double WarpedCodomain::inner(std::span<const double> z, std::span<const double> u,
                             std::span<const double> v) const {
    const WarpEval w = warp_.eval(z[0]);
    return warped_inner(w, chart_, z.subspan(1), split(u), split(v));
}

Vec WarpedCodomain::curvature(std::span<const double> z, std::span<const double> X,
                              std::span<const double> Y, std::span<const double> Z) const {
    const WarpEval w = warp_.eval(z[0]);
    const WarpedVector r = warped_curvature(w, chart_, z.subspan(1), split(X), split(Y), split(Z));
    Vec out{r.dt};
    out.insert(out.end(), r.fiber.begin(), r.fiber.end());
    return out;
}

MapSpec inclusion_map(const ImmersionSpec& spec, std::span<const double> point) {
    const int m = spec.m();
    MapSpec map;
    map.point.assign(point.begin(), point.end());
    map.map = eval_components(spec, point, 0, m, Jet::max_order);
    map.codomain = std::make_shared<SpaceFormCodomain>(spec.ambient);
    map.domain_metric = pull_back(*map.codomain, map.map, 0, m);
    return map;
}

JetMatrix warped_domain_metric(const ImmersionSpec& spec, const WarpFunction& warp, double t,
                               std::span<const double> point) {
    const int m = spec.m();
    const int d = m + 1;
    const int K = Jet::max_order;
    warp.eval(t);
    const JetVector X = eval_components(spec, point, 1, d, K);
    const JetMatrix g = pull_back(SpaceFormCodomain(spec.ambient), X, 1, m);
    const Jet f = at(warp.compose(Jet::variable(0, t, d, K)), K - 1);
    const Jet zero = Jet::constant(0.0, d, K - 1);
    JetMatrix G(d, d, zero);
    G(0, 0) = zero + 1.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) G(i + 1, j + 1) = f * f * g(i, j);
    return G;
}

MapSpec warped_inclusion_map(const ImmersionSpec& spec, const WarpFunction& warp, double t,
                             std::span<const double> point) {
    const int d = spec.m() + 1;
    MapSpec map;
    map.point.push_back(t);
    map.point.insert(map.point.end(), point.begin(), point.end());
    map.map.push_back(Jet::variable(0, t, d, Jet::max_order));
    const JetVector X = eval_components(spec, point, 1, d, Jet::max_order);
    map.map.insert(map.map.end(), X.begin(), X.end());
    map.codomain = std::make_shared<WarpedCodomain>(spec.ambient, warp);
    map.domain_metric = warped_domain_metric(spec, warp, t, point);
    return map;
}

Vec tension(const MapSpec& map) { return values(tension_jets(build(map))); }

Vec bitension(const MapSpec& map) {
    const Pipeline p = build(map);
    return bilaplace_term(p, tension_jets(p));
}

Vec submanifold_bitension(const ImmersionSpec& spec, std::span<const double> point) {
    const LocalGeometry geo = local_geometry(spec, point);
    const MapSpec map = inclusion_map(spec, point);
    const Pipeline p = build(map);
    Vec out = bilaplace_term(p, geo.H);
    for (auto& v : out) v *= static_cast<double>(spec.m());
    return out;
}

Riemann::Riemann(const JetMatrix& metric) : dim_(metric.rows()) {
    const int p = metric(0, 0).order();
    if (p < 2) throw ConfigurationError("curvature from a metric needs jets of order >= 2");
    const auto gamma = christoffel(differentiate_metric(metric));
    const int n = dim_;
    r_.assign(sz(n * n * n * n), 0.0);
    g_ = values(metric);
    // R^l_{kij} = ∂_i Γ^l_{jk} − ∂_j Γ^l_{ik} + Γ^l_{ip} Γ^p_{jk} − Γ^l_{jp} Γ^p_{ik}
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double s = gamma[sz(l)](j, k).d(i) - gamma[sz(l)](i, k).d(j);
                    for (int q = 0; q < n; ++q)
                        s += gamma[sz(l)](i, q).value() * gamma[sz(q)](j, k).value() -
                             gamma[sz(l)](j, q).value() * gamma[sz(q)](i, k).value();
                    r_[sz(((l * n + k) * n + i) * n + j)] = s;
                }
}

double Riemann::component(int l, int k, int i, int j) const {
    const int n = dim_;
    return r_[sz(((l * n + k) * n + i) * n + j)];
}

Vec Riemann::apply(std::span<const double> X, std::span<const double> Y,
                   std::span<const double> Z) const {
    Vec out(sz(dim_), 0.0);
    for (int l = 0; l < dim_; ++l)
        for (int k = 0; k < dim_; ++k)
            for (int i = 0; i < dim_; ++i)
                for (int j = 0; j < dim_; ++j)
                    out[sz(l)] += component(l, k, i, j) * X[sz(i)] * Y[sz(j)] * Z[sz(k)];
    return out;
}

double Riemann::ricci(std::span<const double> Y, std::span<const double> Z) const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            for (int k = 0; k < dim_; ++k) s += component(i, k, i, j) * Y[sz(j)] * Z[sz(k)];
    return s;
}

double Riemann::inner(std::span<const double> u, std::span<const double> v) const {
    double s = 0.0;
    for (int a = 0; a < dim_; ++a)
        for (int b = 0; b < dim_; ++b) s += g_[sz(a * dim_ + b)] * u[sz(a)] * v[sz(b)];
    return s;
}

JetMatrix space_form_metric(const AmbientChart& chart, std::span<const double> x, int order) {
    const int n = chart.dim();
    JetVector z;
    for (int a = 0; a < n; ++a) z.push_back(Jet::variable(a, x[sz(a)], n, order));
    return chart.metric(z);
}

JetMatrix warped_metric(const AmbientChart& chart, const WarpFunction& warp, double t,
                        std::span<const double> x, int order) {
    const int n = chart.dim();
    warp.eval(t);
    JetVector z;
    for (int a = 0; a < n; ++a) z.push_back(Jet::variable(a + 1, x[sz(a)], n + 1, order));
    const Jet s = chart.metric(z)(0, 0);
    const Jet f = warp.compose(Jet::variable(0, t, n + 1, order));
    const Jet zero = Jet::constant(0.0, n + 1, order);
    JetMatrix h(n + 1, n + 1, zero);
    h(0, 0) = zero + 1.0;
    for (int a = 1; a <= n; ++a) h(a, a) = f * f * s;
    return h;
}

} // namespace biharm::oracle
