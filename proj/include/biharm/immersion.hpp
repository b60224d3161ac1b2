#pragma once

#include "biharm/ambient.hpp"
#include "biharm/expr.hpp"
#include "biharm/jet_linalg.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace biharm {

/// Parametrized immersion X: U ⊂ ℝ^m → N given by DSL component expressions
/// in the chart variables, with named real parameters.
struct ImmersionSpec {
    std::vector<std::string> vars;
    std::vector<expr::Expr> components;
    expr::ParamBindings params;
    AmbientChart ambient;

    int m() const noexcept { return static_cast<int>(vars.size()); }
    int n() const noexcept { return ambient.dim(); }
    bool is_hypersurface() const noexcept { return n() == m() + 1; }

    /// Component count, dimensions, and free-symbol coverage. Throws
    /// SceneError(scene_invalid).
    void validate() const;

    ImmersionSpec with_param(const std::string& name, double value) const;
};

ImmersionSpec make_immersion(std::vector<std::string> vars,
                             const std::vector<std::string>& components,
                             expr::ParamBindings params, AmbientChart ambient);

/// Jet-valued local geometry at a chart point. Jets live in the m chart
/// variables seeded at `order`; each differentiation costs one order, so
/// X has `order`, ∂X / g / h / Γ^N have order − 1, and Γ^M / B / H have
/// order − 2.
struct LocalGeometry {
    int m = 0;
    int n = 0;
    int order = 0;
    std::vector<double> point;
    JetVector X;
    std::vector<JetVector> dX;           // dX[i][a] = ∂_i X^a
    JetMatrix h;                         // ambient metric along X
    std::vector<JetMatrix> gamma_n;      // ambient Christoffels along X
    JetMatrix g;                         // induced metric
    JetMatrix g_inv;
    std::vector<JetMatrix> gamma_m;      // gamma_m[k](i, j) = Γ^k_ij of (M, g)
    std::vector<std::vector<JetVector>> B; // B[i][j][a]
    JetVector H;                         // mean curvature vector
};

LocalGeometry local_geometry(const ImmersionSpec& spec, std::span<const double> point,
                             int order = Jet::max_order);

/// Unit normal and mean curvature function as jets (hypersurfaces only).
/// η has order − 1 and λ has order − 2.
struct HypersurfaceJets {
    JetVector eta;
    Jet lambda;
};

HypersurfaceJets hypersurface_jets(const LocalGeometry& geo);

/// Ambient-component vectors e_k = E_k^i ∂_i X of the Gram–Schmidt
/// orthonormal tangent frame, together with the chart coefficients E.
struct TangentFrame {
    JetMatrix coeffs;          // coeffs(k, i) = E_k^i
    std::vector<Vec> ambient;  // values at the point
};

TangentFrame tangent_frame(const LocalGeometry& geo);

/// Pointwise quantities of an immersion. Hypersurface-only fields are empty
/// when n > m + 1.
struct GeometryReport {
    std::vector<double> point;
    int m = 0;
    int n = 0;
    std::vector<double> g;                     // m×m, row-major
    std::vector<std::vector<Vec>> B;           // B[i][j] as ambient vectors
    Vec H;
    double H_norm = 0.0;                       // |H|_h
    std::optional<double> lambda;
    std::optional<Vec> eta;
    std::optional<std::vector<double>> A;      // m×m in the orthonormal frame
    std::optional<double> normA2;
    std::optional<double> lapLambda;
    std::optional<Vec> gradLambda;             // ambient components
    std::optional<double> ricEtaEta;
};

JetMatrix first_fundamental_form(const ImmersionSpec& spec, std::span<const double> point);

struct MeanCurvature {
    Vec H;
    std::optional<double> lambda;
    std::optional<Vec> eta;
};

std::vector<std::vector<Vec>> second_fundamental_form(const ImmersionSpec& spec,
                                                      std::span<const double> point);
MeanCurvature mean_curvature(const ImmersionSpec& spec, std::span<const double> point);

struct ShapeOperator {
    std::vector<double> A; // m×m, row-major, in the Gram–Schmidt frame
    double normA2 = 0.0;
};

ShapeOperator shape_operator(const ImmersionSpec& spec, std::span<const double> point);

/// Δλ with Δ = div∘grad on (M, g).
double laplace_beltrami(const ImmersionSpec& spec, std::span<const double> point);
/// grad λ as an ambient vector.
Vec gradient(const ImmersionSpec& spec, std::span<const double> point);

GeometryReport analyze_point(const ImmersionSpec& spec, std::span<const double> point);

// Building blocks reused by the biharmonic and oracle modules.
ShapeOperator shape_operator(const LocalGeometry& geo, const HypersurfaceJets& hyp,
                             const TangentFrame& frame);
double laplace_beltrami(const LocalGeometry& geo, const Jet& f);
Vec gradient(const LocalGeometry& geo, const Jet& f);

} // namespace biharm
