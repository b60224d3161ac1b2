#include "biharm/scene.hpp"

#include "biharm/error.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace biharm {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& origin, const std::string& msg) {
    throw SceneError(ErrorKind::scene_format, origin + ": " + msg);
}

const json& require(const json& obj, const char* key, const std::string& where,
                    const std::string& origin) {
    if (!obj.is_object() || !obj.contains(key))
        malformed(origin, "missing key '" + std::string(key) + "' in " + where);
    return obj.at(key);
}

double number(const json& v, const std::string& what, const std::string& origin) {
    if (!v.is_number()) malformed(origin, what + " must be a number");
    return v.get<double>();
}

expr::ParamBindings params_of(const json& obj, const std::string& where, const std::string& origin) {
    expr::ParamBindings out;
    if (!obj.contains("params")) return out;
    const json& p = obj.at("params");
    if (!p.is_object()) malformed(origin, where + ".params must be an object");
    for (const auto& [k, v] : p.items()) out.emplace(k, number(v, where + ".params." + k, origin));
    return out;
}

expr::Expr parse_dsl(const json& v, const std::string& where, const std::string& origin) {
    if (!v.is_string()) malformed(origin, where + " must be a string");
    const std::string src = v.get<std::string>();
    try {
        return expr::parse(src);
    } catch (const ParseError& e) {
        throw ParseError(origin + ": " + where + " \"" + src + "\": " + e.what(), e.offset(),
                         e.expected());
    }
}

PointList points_of(const json& v, int dim, const std::string& origin) {
    if (!v.is_array()) malformed(origin, "analysis.points must be an array");
    PointList out;
    for (const auto& p : v) {
        if (!p.is_array()) malformed(origin, "each analysis point must be an array");
        std::vector<double> q;
        for (const auto& c : p) q.push_back(number(c, "point coordinate", origin));
        if (static_cast<int>(q.size()) != dim)
            throw SceneError(ErrorKind::scene_invalid,
                             origin + ": analysis point has " + std::to_string(q.size()) +
                                 " coordinates, expected " + std::to_string(dim));
        out.push_back(std::move(q));
    }
    return out;
}

Scene build(const json& doc, const std::string& origin) {
    if (!doc.is_object()) malformed(origin, "top level must be an object");
    for (const auto& [k, v] : doc.items())
        if (k != "ambient" && k != "immersion" && k != "warp" && k != "analysis")
            malformed(origin, "unknown top-level key '" + k + "'");

    const json& amb = require(doc, "ambient", "scene", origin);
    const json& model = require(amb, "model", "ambient", origin);
    if (!model.is_string()) malformed(origin, "ambient.model must be a string");
    const json& dim = require(amb, "dim", "ambient", origin);
    if (!dim.is_number_integer()) malformed(origin, "ambient.dim must be an integer");

    const json& imm = require(doc, "immersion", "scene", origin);
    const json& vars = require(imm, "vars", "immersion", origin);
    const json& comps = require(imm, "components", "immersion", origin);
    if (!vars.is_array() || !comps.is_array())
        malformed(origin, "immersion.vars and immersion.components must be arrays");
    std::vector<std::string> names;
    for (const auto& v : vars) {
        if (!v.is_string()) malformed(origin, "immersion.vars entries must be strings");
        names.push_back(v.get<std::string>());
    }
    std::vector<expr::Expr> parsed;
    for (std::size_t i = 0; i < comps.size(); ++i)
        parsed.push_back(parse_dsl(comps[i], "immersion.components[" + std::to_string(i) + "]", origin));

    std::optional<Scene> scene;
    try {
        AmbientChart chart(parse_space_form_model(model.get<std::string>()), dim.get<int>());
        ImmersionSpec spec{std::move(names), std::move(parsed), params_of(imm, "immersion", origin),
                           chart};
        spec.validate();
        scene = Scene{origin, std::move(spec), std::nullopt, {}, 1e-7};
    } catch (const ConfigurationError& e) {
        throw SceneError(ErrorKind::scene_invalid, origin + ": " + e.what());
    } catch (const SceneError& e) {
        throw SceneError(e.kind(), origin + ": " + e.what());
    }

    if (doc.contains("warp")) {
        const json& w = doc.at("warp");
        WarpFunction warp{parse_dsl(require(w, "expr", "warp", origin), "warp.expr", origin),
                          params_of(w, "warp", origin), "t"};
        const json& iv = require(w, "interval", "warp", origin);
        if (!iv.is_array() || iv.size() != 2) malformed(origin, "warp.interval must be [lo, hi]");
        WarpedScene ws{scene->immersion, std::move(warp), number(iv[0], "warp.interval", origin),
                       number(iv[1], "warp.interval", origin)};
        for (const auto& s : expr::free_symbols(ws.warp.expr))
            if (s != "t" && !ws.warp.params.contains(s))
                throw SceneError(ErrorKind::scene_invalid,
                                 origin + ": warp uses undeclared symbol '" + s + "'");
        try {
            ws.validate();
        } catch (const WarpDomainError& e) {
            throw SceneError(ErrorKind::scene_invalid, origin + ": " + e.what() + " on the warp interval");
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::parse) throw;
            throw SceneError(ErrorKind::scene_invalid, origin + ": warp: " + e.what());
        }
        scene->warped = std::move(ws);
    }

    if (doc.contains("analysis")) {
        const json& a = doc.at("analysis");
        if (!a.is_object()) malformed(origin, "analysis must be an object");
        if (a.contains("points")) scene->points = points_of(a.at("points"), scene->immersion.m(), origin);
        if (a.contains("tolerance")) {
            scene->tolerance = number(a.at("tolerance"), "analysis.tolerance", origin);
            if (!(scene->tolerance >= 0.0))
                throw SceneError(ErrorKind::scene_invalid, origin + ": analysis.tolerance must be >= 0");
        }
    }
    return std::move(*scene);
}

double to_double(std::string_view s, std::string_view what) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw UsageError("invalid number '" + std::string(s) + "' in " + std::string(what));
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    return out;
}

} // namespace

Scene parse_scene(std::string_view text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        malformed(origin, std::string("invalid JSON: ") + e.what());
    }
    return build(doc, origin);
}

Scene load_scene(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SceneError(ErrorKind::scene_format, path.string() + ": cannot open scene file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str(), path.string());
}

Range parse_range(std::string_view spec) {
    const auto parts = split(spec, ':');
    if (parts.size() != 2 && parts.size() != 3)
        throw UsageError("range '" + std::string(spec) + "' must be lo:hi or lo:hi:N");
    Range r{to_double(parts[0], "range"), to_double(parts[1], "range"), 0};
    if (parts.size() == 3) {
        const double n = to_double(parts[2], "range");
        if (n < 1 || n != static_cast<int>(n))
            throw UsageError("range count must be a positive integer");
        r.count = static_cast<int>(n);
    }
    return r;
}

std::vector<double> linspace(const Range& range) {
    if (range.count < 1) throw UsageError("linspace needs a positive count");
    if (range.count == 1) return {range.lo};
    std::vector<double> out;
    for (int k = 0; k < range.count; ++k)
        out.push_back(k + 1 == range.count ? range.hi
                                           : range.lo + (range.hi - range.lo) * k / (range.count - 1));
    return out;
}

PointList parse_points(std::string_view spec, int dim) {
    PointList out;
    if (spec.starts_with("grid:")) {
        const auto axes = split(spec.substr(5), ',');
        if (static_cast<int>(axes.size()) != dim)
            throw UsageError("grid needs " + std::to_string(dim) + " ranges");
        std::vector<std::vector<double>> ticks;
        for (const auto& a : axes) {
            const Range r = parse_range(a);
            if (r.count < 1) throw UsageError("grid ranges need a count, lo:hi:N");
            ticks.push_back(linspace(r));
        }
        std::vector<std::size_t> idx(ticks.size(), 0);
        while (true) {
            std::vector<double> p;
            for (std::size_t k = 0; k < ticks.size(); ++k) p.push_back(ticks[k][idx[k]]);
            out.push_back(std::move(p));
            std::size_t k = ticks.size();
            while (k > 0) {
                --k;
                if (++idx[k] < ticks[k].size()) break;
                idx[k] = 0;
                if (k == 0) return out;
            }
            if (ticks.empty()) return out;
        }
    }
    for (const auto& p : split(spec, ';')) {
        std::vector<double> q;
        for (const auto& c : split(p, ',')) q.push_back(to_double(c, "point list"));
        if (static_cast<int>(q.size()) != dim)
            throw UsageError("point '" + std::string(p) + "' needs " + std::to_string(dim) +
                             " coordinates");
        out.push_back(std::move(q));
    }
    return out;
}

namespace builtin {

ImmersionSpec sphere_slice(double r, int m) {
    std::vector<std::string> vars;
    std::vector<std::string> comps;
    for (int i = 1; i <= m; ++i) {
        vars.push_back(m == 2 ? std::string(i == 1 ? "u" : "v") : "u" + std::to_string(i));
        comps.push_back(vars.back());
    }
    comps.push_back("r");
    return make_immersion(vars, comps, {{"r", r}}, AmbientChart(SpaceFormModel::sphere, m + 1));
}

ImmersionSpec cone(double r, bool doubled) {
    const std::string u = doubled ? "(2*w)" : "u";
    return make_immersion({doubled ? "w" : "u", "v"},
                          {"r*" + u + "*cos(v)", "r*" + u + "*sin(v)", u}, {{"r", r}},
                          AmbientChart(SpaceFormModel::euclidean, 3));
}

ImmersionSpec plane() {
    return make_immersion({"u", "v"}, {"u", "v", "0"}, {}, AmbientChart(SpaceFormModel::euclidean, 3));
}

ImmersionSpec equator() {
    return make_immersion({"u", "v"}, {"u", "v", "0"}, {}, AmbientChart(SpaceFormModel::sphere, 3));
}

WarpFunction warp(const std::string& source, expr::ParamBindings params) {
    return make_warp(source, std::move(params));
}

} // namespace builtin

} // namespace biharm
