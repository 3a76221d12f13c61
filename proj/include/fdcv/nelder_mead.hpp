#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fdcv {

struct SimplexOptions {
    double f_tolerance = 1e-8;  // stop when max f - min f over the simplex is below this
    int max_evaluations = 500;
    double initial_step = 0.25;
};

struct SimplexResult {
    std::vector<double> argmin;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Derivative-free Nelder-Mead minimization. The starting point is always a
/// vertex, so the returned value never exceeds f(start). Non-finite
/// objective values are treated as +infinity.
[[nodiscard]] SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                                        std::span<const double> start,
                                        const SimplexOptions& options = {});

}  // namespace fdcv
