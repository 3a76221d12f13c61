#pragma once

#include "fdcv/reference_tables.hpp"
#include "fdcv/selector.hpp"
#include "fdcv/simulation.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace fdcv {

inline constexpr int kSchemaVersion = 1;

[[nodiscard]] nlohmann::json to_json(const FdcvResult& result);
[[nodiscard]] nlohmann::json to_json(const CoverageReport& report);

/// Inverse of to_json(CoverageReport). Throws ConfigError on a schema mismatch.
[[nodiscard]] CoverageReport coverage_report_from_json(const nlohmann::json& j);

[[nodiscard]] std::string estimate_text(const FdcvResult& result);
[[nodiscard]] std::string estimate_csv(const FdcvResult& result);

/// Method rows by nominal-level columns, coverages in percent.
[[nodiscard]] std::string coverage_text(const CoverageReport& report);
[[nodiscard]] std::string coverage_csv(const CoverageReport& report);

struct ComparisonRow {
    std::string process;
    double c = 0.8;
    Method method = Method::CvC;
    std::string quantity;    // "coverage@95" or "efficiency"
    double reference = 0.0;  // percent for coverage, fraction for efficiency
    double observed = 0.0;
    [[nodiscard]] double deviation() const { return observed - reference; }
};

/// Pairs every published cell of the preset with the matching observed value.
/// Cells without an observed counterpart are skipped.
[[nodiscard]] std::vector<ComparisonRow> compare(const ReproducePreset& preset,
                                                 const std::vector<CoverageReport>& reports);

[[nodiscard]] std::string comparison_text(const std::vector<ComparisonRow>& rows);
[[nodiscard]] std::string comparison_csv(const std::vector<ComparisonRow>& rows);
[[nodiscard]] nlohmann::json to_json(const std::vector<ComparisonRow>& rows);

}  // namespace fdcv
