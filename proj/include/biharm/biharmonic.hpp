#pragma once

#include "biharm/immersion.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace biharm {

/// Both components of the hypersurface biharmonic system at one point.
struct SystemResiduals {
    double normal = 0.0;          // m[−Δλ + λ|A|² − λ Ric(η,η)]
    Vec tangential;               // m[2A(grad λ) + mλ grad λ − 2λ (Ric η)^⊤], ambient components
    double tangential_norm = 0.0; // g-norm
    double scale = 1.0;           // m(1 + |λ|)(1 + |A|²)
    GeometryReport geometry;
};

/// Throws UsageError unless the immersion is a hypersurface.
SystemResiduals system_residuals(const ImmersionSpec& spec, std::span<const double> point);
double normal_residual(const ImmersionSpec& spec, std::span<const double> point);
Vec tangential_residual(const ImmersionSpec& spec, std::span<const double> point);

struct Flag {
    bool value = false;
    double tolerance = 0.0;
};

struct PointResidual {
    std::vector<double> point;
    double normal = 0.0;
    Vec tangential;
    double tangential_norm = 0.0;
    double H_norm = 0.0;
    double scale = 1.0;
};

struct ClassificationRecord {
    std::vector<PointResidual> points;
    double max_normal_relative = 0.0;
    double max_tangential_relative = 0.0;
    Flag harmonic;
    Flag biharmonic;
    Flag normally_biharmonic;
    Flag tangentially_biharmonic;
};

/// Flags hold iff the largest relative residual over all points is ≤ tol.
/// `harmonic` additionally needs |H| ≤ tol·(1 + scale) everywhere, and is
/// only reported together with `biharmonic`.
ClassificationRecord classify(const ImmersionSpec& spec,
                              const std::vector<std::vector<double>>& points, double tol);

struct ScanFailure {
    double param = 0.0;
    std::string message;
};

struct ScanSample {
    double param = 0.0;
    double residual = 0.0;
};

struct ScanResult {
    std::vector<double> roots;
    std::vector<ScanSample> samples;
    std::vector<ScanFailure> failures;
};

/// Roots in `param` of the normal residual at `probe`, found by sampling
/// [lo, hi] uniformly and bisecting each sign change to a bracket ≤ 1e-10.
ScanResult parameter_scan(const ImmersionSpec& spec, const std::string& param, double lo,
                          double hi, int samples, std::span<const double> probe);

} // namespace biharm
