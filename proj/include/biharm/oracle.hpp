#pragma once

#include "biharm/ambient.hpp"
#include "biharm/immersion.hpp"
#include "biharm/jet_linalg.hpp"

#include <memory>
#include <span>
#include <vector>

// First-principles evaluation of tension and bitension fields. Nothing here
// uses the closed-form biharmonic system: covariant derivatives are taken by
// differentiating jets and contracting with Christoffel symbols of the
// metrics, and the only closed-form input is the codomain curvature.
namespace biharm::oracle {

/// Metric jets and their coordinate partials, dh[L](I, J) = ∂_L h_IJ, all at
/// a common order.
struct MetricJets {
    JetMatrix h;
    std::vector<JetMatrix> dh;
};

/// Γ^K_IJ = ½ h^{KL}(∂_I h_LJ + ∂_J h_LI − ∂_L h_IJ); result[K](I, J).
std::vector<JetMatrix> christoffel(const MetricJets& metric);

/// Partials of a metric given as jets; the result has order metric.order − 1.
MetricJets differentiate_metric(const JetMatrix& metric);

class Codomain {
public:
    virtual ~Codomain() = default;
    virtual int dim() const = 0;
    /// Metric and partials along a jet-valued point z, at order z.order() − 1.
    virtual MetricJets metric(std::span<const Jet> z) const = 0;
    virtual double inner(std::span<const double> z, std::span<const double> u,
                         std::span<const double> v) const = 0;
    /// Closed-form R(X,Y)Z.
    virtual Vec curvature(std::span<const double> z, std::span<const double> X,
                          std::span<const double> Y, std::span<const double> Z) const = 0;
};

class SpaceFormCodomain final : public Codomain {
public:
    explicit SpaceFormCodomain(AmbientChart chart) : chart_(chart) {}
    int dim() const override { return chart_.dim(); }
    MetricJets metric(std::span<const Jet> z) const override;
    double inner(std::span<const double> z, std::span<const double> u,
                 std::span<const double> v) const override;
    Vec curvature(std::span<const double> z, std::span<const double> X, std::span<const double> Y,
                  std::span<const double> Z) const override;

private:
    AmbientChart chart_;
};

/// I ×_f N with coordinates (t, x); component 0 is the ∂t direction.
class WarpedCodomain final : public Codomain {
public:
    WarpedCodomain(AmbientChart chart, WarpFunction warp)
        : chart_(chart), warp_(std::move(warp)) {}
    int dim() const override { return chart_.dim() + 1; }
    MetricJets metric(std::span<const Jet> z) const override;
    double inner(std::span<const double> z, std::span<const double> u,
                 std::span<const double> v) const override;
    Vec curvature(std::span<const double> z, std::span<const double> X, std::span<const double> Y,
                  std::span<const double> Z) const override;

private:
    AmbientChart chart_;
    WarpFunction warp_;
};

/// A map φ from a chart of a Riemannian domain into a codomain, as jets
/// seeded at `point`.
struct MapSpec {
    std::vector<double> point;
    JetVector map;           // order K
    JetMatrix domain_metric; // order K − 1
    std::shared_ptr<const Codomain> codomain;
};

/// Inclusion of an immersed submanifold with its induced metric.
MapSpec inclusion_map(const ImmersionSpec& spec, std::span<const double> point);

/// φ(t, u) = (t, X(u)) from (I × M, dt² + f² g) into I ×_f N.
MapSpec warped_inclusion_map(const ImmersionSpec& spec, const WarpFunction& warp, double t,
                             std::span<const double> point);

/// τ(φ) = trace ∇dφ at the seed point.
Vec tension(const MapSpec& map);
/// τ₂(φ) = −Δτ − trace R(dφ, τ)dφ, with Δ = −trace(∇∇ − ∇_∇) the rough
/// Laplacian, so τ₂ = −Σ_i [R(τ, dφ e_i)dφ e_i + ∇_{e_i}∇_{e_i}τ − ∇_{∇_{e_i}e_i}τ].
Vec bitension(const MapSpec& map);

/// Bitension of an immersion written as −m(trace R(H, ·)· + trace(∇∇ − ∇_∇)H),
/// using the mean curvature jets of the immersion module and ambient
/// Christoffels along X.
Vec submanifold_bitension(const ImmersionSpec& spec, std::span<const double> point);

/// Riemann tensor of a coordinate metric, R[l][k][i][j] = R^l_{kij} with
/// R(∂_i, ∂_j)∂_k = R^l_{kij} ∂_l. Needs metric jets of order ≥ 2.
class Riemann {
public:
    explicit Riemann(const JetMatrix& metric);

    int dim() const noexcept { return dim_; }
    double component(int l, int k, int i, int j) const;
    Vec apply(std::span<const double> X, std::span<const double> Y,
              std::span<const double> Z) const;
    /// Ric(Y, Z) = Σ_i R^i_{k i j} Y^j Z^k.
    double ricci(std::span<const double> Y, std::span<const double> Z) const;
    double inner(std::span<const double> u, std::span<const double> v) const;

private:
    int dim_;
    std::vector<double> r_;
    std::vector<double> g_;
};

/// Ambient metric jets of a space form at x (order K).
JetMatrix space_form_metric(const AmbientChart& chart, std::span<const double> x,
                            int order = Jet::max_order);
/// dt² + f² h at (t, x) (order K).
JetMatrix warped_metric(const AmbientChart& chart, const WarpFunction& warp, double t,
                        std::span<const double> x, int order = Jet::max_order);
/// dt² + f² g on I × M at (t, u) (order K − 1, from the induced metric).
JetMatrix warped_domain_metric(const ImmersionSpec& spec, const WarpFunction& warp, double t,
                               std::span<const double> point);

} // namespace biharm::oracle
