#pragma once

#include "biharm/ambient.hpp"
#include "biharm/immersion.hpp"

#include <optional>
#include <span>
#include <vector>

namespace biharm {

/// Inclusion φ(t, x) = (t, x) of (I × M, dt² + f²g) into (I × N, dt² + f²h).
struct WarpedScene {
    ImmersionSpec immersion;
    WarpFunction warp;
    double t_lo = 0.0;
    double t_hi = 1.0;

    /// Requires t_lo < t_hi and f > 0 at both endpoints and 64 interior
    /// samples; throws SceneError or WarpDomainError.
    void validate() const;
};

/// τ(φ) = (m/f²)H; the ∂t component is zero.
WarpedVector inclusion_tension(const WarpedScene& scene, double t, std::span<const double> point);

/// τ₂(φ) = (2m[ff″ + (m−1)f′²]/f⁴)H + (1/f⁴)τ₂(i) − (m²f′/f³)|H|²∂t with
/// τ₂(i) from the first-principles oracle.
WarpedVector inclusion_bitension(const WarpedScene& scene, double t,
                                 std::span<const double> point);

struct PairingResult {
    double direct = 0.0;
    double closed_form = 0.0;
    /// False when M does not classify as biharmonic at tol 1e-7.
    bool closed_form_applicable = false;
};

/// h̄(τ₂(φ), τ(φ)) and 2m²[ff″ + (m−1)f′²]|H|²/f⁴.
PairingResult pairing(const WarpedScene& scene, double t, std::span<const double> point);

/// f f″ + (m − 1)(f′)².
double power_family_residual(const WarpFunction& warp, double t, int m);

struct RicciCheck {
    double ric_M = 0.0;
    double ric_tilde = 0.0;
    double power_residual = 0.0;
    double identity_residual = 0.0;   // ric_tilde − ric_M + power_residual
    double pairing_ricci_form = 0.0;  // 2m²[Ric(X,X) − Ric̃(X,X)]|H|²/f⁴
    double pairing_direct = 0.0;
};

/// Ricci curvatures of (M, g) and (I × M, dt² + f²g) along X, which must be
/// g-unit (|X|_g = 1 within 1e-10) and is given in chart components of M.
/// With no X the first Gram–Schmidt frame vector is used.
RicciCheck ricci_warped_check(const WarpedScene& scene, double t, std::span<const double> point,
                              std::optional<Vec> X = std::nullopt);

struct WarpedReport {
    double t = 0.0;
    std::vector<double> point;
    WarpEval warp{};
    WarpedVector tension;
    WarpedVector bitension;
    WarpedVector bitension_oracle;
    double oracle_discrepancy = 0.0;  // |τ₂ closed form − τ₂ oracle|_h̄
    PairingResult pairing;
    double power_residual = 0.0;
    double tangential_part_norm = 0.0;
    double normal_part_norm = 0.0;
};

WarpedReport warped_report(const WarpedScene& scene, double t, std::span<const double> point);

/// Full first-principles τ₂(φ) of the inclusion, split into ∂t and N parts.
WarpedVector inclusion_bitension_oracle(const WarpedScene& scene, double t,
                                        std::span<const double> point);
WarpedVector inclusion_tension_oracle(const WarpedScene& scene, double t,
                                      std::span<const double> point);

} // namespace biharm
