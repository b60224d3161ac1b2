#include "biharm/report.hpp"

#include <algorithm>
#include <cstdio>

namespace biharm::report {

namespace {

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// Display width in code points.
std::size_t width_of(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

} // namespace

json to_json(const GeometryReport& r) {
    json j;
    j["point"] = r.point;
    j["m"] = r.m;
    j["n"] = r.n;
    j["g"] = r.g;
    j["B"] = r.B;
    j["H"] = r.H;
    j["H_norm"] = r.H_norm;
    put_optional(j, "lambda", r.lambda);
    put_optional(j, "eta", r.eta);
    put_optional(j, "A", r.A);
    put_optional(j, "normA2", r.normA2);
    put_optional(j, "lapLambda", r.lapLambda);
    put_optional(j, "gradLambda", r.gradLambda);
    put_optional(j, "ricEtaEta", r.ricEtaEta);
    return j;
}

json to_json(const SystemResiduals& r) {
    json j = to_json(r.geometry);
    j["normal_residual"] = r.normal;
    j["tangential_residual"] = r.tangential;
    j["tangential_norm"] = r.tangential_norm;
    j["scale"] = r.scale;
    return j;
}

json to_json(const ClassificationRecord& r) {
    json j;
    const auto flag = [](const Flag& f) { return json{{"value", f.value}, {"tolerance", f.tolerance}}; };
    j["harmonic"] = flag(r.harmonic);
    j["biharmonic"] = flag(r.biharmonic);
    j["normally_biharmonic"] = flag(r.normally_biharmonic);
    j["tangentially_biharmonic"] = flag(r.tangentially_biharmonic);
    j["max_normal_relative"] = r.max_normal_relative;
    j["max_tangential_relative"] = r.max_tangential_relative;
    j["points"] = json::array();
    for (const auto& p : r.points)
        j["points"].push_back({{"point", p.point},
                               {"normal_residual", p.normal},
                               {"tangential_residual", p.tangential},
                               {"tangential_norm", p.tangential_norm},
                               {"H_norm", p.H_norm},
                               {"scale", p.scale}});
    return j;
}

json to_json(const ScanResult& r) {
    json j;
    j["roots"] = r.roots;
    j["samples"] = json::array();
    for (const auto& s : r.samples) j["samples"].push_back({{"param", s.param}, {"residual", s.residual}});
    j["failures"] = json::array();
    for (const auto& f : r.failures) j["failures"].push_back({{"param", f.param}, {"error", f.message}});
    return j;
}

json to_json(const WarpedVector& v) { return {{"dt", v.dt}, {"N", v.fiber}}; }

json to_json(const WarpedReport& r) {
    json j;
    j["t"] = r.t;
    j["point"] = r.point;
    j["warp"] = {{"f", r.warp.f}, {"f1", r.warp.f1}, {"f2", r.warp.f2}};
    j["tension"] = to_json(r.tension);
    j["bitension"] = to_json(r.bitension);
    j["bitension_oracle"] = to_json(r.bitension_oracle);
    j["oracle_discrepancy"] = r.oracle_discrepancy;
    j["pairing"] = r.pairing.direct;
    j["pairing_closed_form"] = r.pairing.closed_form;
    j["pairing_closed_form_applicable"] = r.pairing.closed_form_applicable;
    j["power_residual"] = r.power_residual;
    j["tangential_part_norm"] = r.tangential_part_norm;
    j["normal_part_norm"] = r.normal_part_norm;
    return j;
}

Table::Table(std::vector<std::string> header) : header_(std::move(header)) {}

void Table::add(std::vector<std::string> row) {
    row.resize(header_.size());
    rows_.push_back(std::move(row));
}

std::string Table::text() const {
    std::vector<std::size_t> width(header_.size());
    for (std::size_t c = 0; c < header_.size(); ++c) {
        width[c] = width_of(header_[c]);
        for (const auto& r : rows_) width[c] = std::max(width[c], width_of(r[c]));
    }
    std::string out;
    const auto line = [&](const std::vector<std::string>& cells, bool left) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string pad(width[c] - width_of(cells[c]), ' ');
            if (c) out += "  ";
            out += left || c == 0 ? cells[c] + pad : pad + cells[c];
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += '\n';
    };
    line(header_, true);
    for (const auto& r : rows_) line(r, false);
    return out;
}

std::string Table::csv() const {
    std::string out;
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) out += ',';
            out += csv_field(cells[c]);
        }
        out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
}

std::string num(double v) {
    if (v == 0.0) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string vec(const std::vector<double>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += num(v[i]);
    }
    return out + ")";
}

} // namespace biharm::report
