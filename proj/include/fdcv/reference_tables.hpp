#pragma once

#include "fdcv/simulation.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fdcv {

/// Published coverage (percent) for one (process, c, method, level) cell.
struct ReferenceCoverage {
    DgpSpec dgp;
    double c = 0.8;
    Method method = Method::CvC;
    double level = 0.95;
    double percent = 0.0;
};

/// Published relative efficiency at 95% nominal.
struct ReferenceEfficiency {
    DgpSpec dgp;
    Method method = Method::CvC;
    double value = 0.0;
};

/// A reproducible experiment grid with its published values.
struct ReproducePreset {
    std::string id;
    std::string title;
    std::vector<DgpSpec> dgps;
    std::vector<double> c_values{0.8};
    std::vector<Method> methods;
    std::vector<ReferenceCoverage> coverage;
    std::vector<ReferenceEfficiency> efficiency;
    /// Efficiency-only presets reuse the coverages of this preset's run.
    std::optional<std::string> coverage_source;
};

/// "1" ... "7" and "c-study".
[[nodiscard]] const std::vector<std::string>& preset_ids();

/// Throws ConfigError for an unknown identifier.
[[nodiscard]] ReproducePreset reproduce_preset(std::string_view id);

/// Looks a cell up across every preset.
[[nodiscard]] std::optional<double> reference_coverage(const DgpSpec& dgp, double c, Method method,
                                                       double level);

[[nodiscard]] bool same_process(const DgpSpec& a, const DgpSpec& b);

}  // namespace fdcv
