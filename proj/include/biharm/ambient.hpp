#pragma once

#include "biharm/expr.hpp"
#include "biharm/jet_linalg.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace biharm {

enum class SpaceFormModel { euclidean, sphere, hyperbolic };

const char* to_string(SpaceFormModel model) noexcept;
SpaceFormModel parse_space_form_model(std::string_view name);

/// A unit space form N(c) written in a conformally flat chart,
/// h = e^{2ρ}·δ, with
///   euclidean:  ρ = 0                      c =  0
///   sphere:     ρ = log(2 / (1 + |x|²))    c = +1   (stereographic; misses one point)
///   hyperbolic: ρ = log(2 / (1 − |x|²))    c = −1   (Poincaré ball, |x| < 1)
class AmbientChart {
public:
    AmbientChart(SpaceFormModel model, int dim);

    SpaceFormModel model() const noexcept { return model_; }
    int dim() const noexcept { return dim_; }
    double curvature() const noexcept;

    /// Throws DomainError outside the chart (hyperbolic: |x| ≥ 1).
    void check_domain(std::span<const double> x) const;

    Jet conformal_factor(std::span<const Jet> x) const;
    /// Closed-form ∂_k ρ evaluated on jets.
    JetVector conformal_gradient(std::span<const Jet> x) const;
    /// h_ab = e^{2ρ} δ_ab.
    JetMatrix metric(std::span<const Jet> x) const;
    /// result[k](a, b) = Γ^k_ab = δ_ak ∂_b ρ + δ_bk ∂_a ρ − δ_ab ∂_k ρ.
    std::vector<JetMatrix> christoffel(std::span<const Jet> x) const;

    /// e^{2ρ(x)}.
    double scale(std::span<const double> x) const;
    double inner(std::span<const double> x, std::span<const double> u,
                 std::span<const double> v) const;

    /// R(X,Y)Z = c·(h(Y,Z)X − h(X,Z)Y).
    Vec curvature_tensor(std::span<const double> x, std::span<const double> X,
                         std::span<const double> Y, std::span<const double> Z) const;
    /// Ricci operator (n − 1)·c·v.
    Vec ricci_operator(std::span<const double> v) const;
    /// Ric(u, v) = (n − 1)·c·h(u, v).
    double ricci(std::span<const double> x, std::span<const double> u,
                 std::span<const double> v) const;

private:
    void check_jet_point(std::span<const Jet> x) const;

    SpaceFormModel model_;
    int dim_;
};

/// f, f′, f″ of the warping function at one t.
struct WarpEval {
    double f;
    double f1;
    double f2;
};

/// Validates f > 0; throws WarpDomainError otherwise.
WarpEval make_warp_eval(double t, double f, double f1, double f2);

/// Warping function f(t) written in the DSL.
struct WarpFunction {
    expr::Expr expr;
    expr::ParamBindings params;
    std::string var = "t";

    /// f, f′, f″ at t (requires f(t) > 0).
    WarpEval eval(double t) const;
    /// Taylor coefficients f^(k)(t)/k! for k = 0..order.
    std::vector<double> taylor(double t, int order) const;
    /// f ∘ s and f′ ∘ s for a jet-valued argument s; f′ ∘ s has order s.order() − 1.
    Jet compose(const Jet& s) const;
    Jet compose_derivative(const Jet& s) const;
};

WarpFunction make_warp(const std::string& source, expr::ParamBindings params,
                       std::string var = "t");

/// Vector on I × N split into its ∂t coefficient and its N-chart components.
struct WarpedVector {
    double dt = 0.0;
    Vec fiber;
};

/// h̄(a, b) = a_t b_t + f²·h(a_N, b_N).
double warped_inner(const WarpEval& w, const AmbientChart& chart, std::span<const double> x,
                    const WarpedVector& a, const WarpedVector& b);

// Levi-Civita connection of h̄ = dt² + f² h on lifted fields.

/// ∇̄_{∂t} ∂t = 0.
WarpedVector connection_dt_dt(int fiber_dim);
/// ∇̄_{∂t} U = ∇̄_U ∂t = (f′/f)·U.
WarpedVector connection_mixed(const WarpEval& w, std::span<const double> u);
/// ∇̄_U V = ∇^N_U V − h(U,V)·f f′·∂t, given ∇^N_U V and h(U,V).
WarpedVector connection_tangential(const WarpEval& w, std::span<const double> nabla_n_uv,
                                   double h_uv);

// Curvature of h̄ (convention R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z).

/// R̄(U, ∂t)∂t = −(f″/f)·U.
Vec radial_curvature(const WarpEval& w, std::span<const double> u);
/// R̄(V,W)U = R^N(V,W)U − (f′)²·[h(U,W)V − h(U,V)W].
Vec horizontal_curvature(const WarpEval& w, const AmbientChart& chart, std::span<const double> x,
                         std::span<const double> v, std::span<const double> wv,
                         std::span<const double> u);
/// Full trilinear R̄(X,Y)Z for arbitrary ∂t/N splits, assembled from the radial
/// and horizontal rules and the mixed rules R̄(V,∂t)W = f f″ h(V,W) ∂t and
/// R̄(V,W)∂t = 0.
WarpedVector warped_curvature(const WarpEval& w, const AmbientChart& chart,
                              std::span<const double> x, const WarpedVector& X,
                              const WarpedVector& Y, const WarpedVector& Z);

} // namespace biharm
