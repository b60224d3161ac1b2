#pragma once

#include "biharm/immersion.hpp"
#include "biharm/warped.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace biharm {

using PointList = std::vector<std::vector<double>>;

/// A scene file:
///   {
///     "ambient":   {"model": "sphere", "dim": 3},
///     "immersion": {"vars": ["u", "v"], "components": ["u", "v", "r"], "params": {"r": 1}},
///     "warp":      {"expr": "exp(t)", "interval": [-1, 1], "params": {}},   (optional)
///     "analysis":  {"points": [[0, 0]], "tolerance": 1e-7}                  (optional)
///   }
struct Scene {
    std::string origin;
    ImmersionSpec immersion;
    std::optional<WarpedScene> warped;
    PointList points;
    double tolerance = 1e-7;
};

/// Errors: SceneError(scene_format) for unreadable or malformed JSON,
/// ParseError for DSL syntax errors (message carries origin and offset),
/// SceneError(scene_invalid) for invariant violations.
Scene load_scene(const std::filesystem::path& path);
Scene parse_scene(std::string_view text, const std::string& origin = "<scene>");

/// "a,b;c,d" lists points; "grid:lo:hi:N,lo:hi:N" is a tensor grid with one
/// range per chart variable.
PointList parse_points(std::string_view spec, int dim);

struct Range {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
};

/// "lo:hi" (count 0) or "lo:hi:N".
Range parse_range(std::string_view spec);
std::vector<double> linspace(const Range& range);

/// Immersions used by the built-in checks.
namespace builtin {

/// X(u_1, …, u_m) = (u_1, …, u_m, r) in stereographic S^{m+1}; r = 1 is S^m(1/√2).
ImmersionSpec sphere_slice(double r, int m = 2);
/// X(u, v) = (r u cos v, r u sin v, u) in ℝ³; with `doubled` the chart is u = 2ũ.
ImmersionSpec cone(double r, bool doubled = false);
/// X(u, v) = (u, v, 0) in ℝ³.
ImmersionSpec plane();
/// X(u, v) = (u, v, 0) in stereographic S³, a great sphere.
ImmersionSpec equator();

WarpFunction warp(const std::string& source, expr::ParamBindings params = {});

} // namespace builtin

} // namespace biharm
