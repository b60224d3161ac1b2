#pragma once

#include "biharm/biharmonic.hpp"
#include "biharm/immersion.hpp"
#include "biharm/warped.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace biharm::report {

using nlohmann::json;

json to_json(const GeometryReport& r);
json to_json(const SystemResiduals& r);
json to_json(const ClassificationRecord& r);
json to_json(const ScanResult& r);
json to_json(const WarpedVector& v);
json to_json(const WarpedReport& r);

/// Aligned text table: header and first column left-aligned, other cells
/// right-aligned.
class Table {
public:
    explicit Table(std::vector<std::string> header);
    void add(std::vector<std::string> row);
    std::string text() const;
    std::string csv() const;
    bool empty() const noexcept { return rows_.empty(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// %.10g, with "-0" folded to "0".
std::string num(double v);
std::string vec(const std::vector<double>& v);

} // namespace biharm::report
