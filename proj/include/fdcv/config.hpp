#pragma once

#include "fdcv/simulation.hpp"

#include <istream>
#include <map>
#include <string>
#include <vector>

namespace fdcv {

/// Flat `key = value` text. '#' starts a comment, values may be quoted.
struct KeyValueConfig {
    std::string source;
    std::map<std::string, std::string> values;
    std::map<std::string, std::size_t> lines;  // key -> line number
};

/// Throws ConfigError("<source>:<line>: ...") on malformed lines or duplicate keys.
[[nodiscard]] KeyValueConfig parse_key_values(std::istream& in, const std::string& source);
[[nodiscard]] KeyValueConfig load_key_values(const std::string& path);

/**
 * Experiment settings from a key-value file.
 *
 *   schema_version = 1          (required)
 *   family = ar1 | white-noise | ma1 | maq | ar2-half-phi
 *   n, phi, psi, alpha, beta, q
 *   replications, seed, c, threads
 *   parzen_max                  (largest Parzen truncation; default m(n))
 *   levels  = 0.90, 0.95, 0.99
 *   methods = CV_C, CV_AR, CV_PZ, AM-PW, NW-PW
 *
 * A "dgp." prefix on the process keys is accepted. Unknown keys are errors.
 */
[[nodiscard]] ExperimentConfig experiment_from_config(const KeyValueConfig& cfg);

/// Numbers separated by newlines, commas or blanks; '#' comments; one
/// non-numeric header line allowed before the first value. Throws DataError
/// naming the line of the first bad token.
[[nodiscard]] std::vector<double> read_series(std::istream& in, const std::string& source);
[[nodiscard]] std::vector<double> load_series(const std::string& path);

}  // namespace fdcv
