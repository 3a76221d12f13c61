#include "fdcv/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fdcv {

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::span<const double> start, const SimplexOptions& options)
{
    const std::size_t dim = start.size();
    SimplexResult result;
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    std::vector<std::vector<double>> vertices(dim + 1, std::vector<double>(start.begin(), start.end()));
    for (std::size_t i = 0; i < dim; ++i) vertices[i + 1][i] += options.initial_step;
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(vertices[i]);

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    auto point = [&](double t, std::vector<double>& out, std::size_t worst) {
        for (std::size_t k = 0; k < dim; ++k) {
            out[k] = centroid[k] + t * (vertices[worst][k] - centroid[k]);
        }
    };

    while (true) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        // Stable sort keeps the starting point ahead of ties.
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[dim > 0 ? dim - 1 : 0];

        if (dim == 0 || values[worst] - values[best] <= options.f_tolerance) {
            result.converged = true;
            break;
        }
        if (evals >= options.max_evaluations) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < dim; ++k) centroid[k] += vertices[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        point(-1.0, trial, worst);
        const double f_reflect = eval(trial);
        if (f_reflect < values[best]) {
            point(-2.0, trial2, worst);
            const double f_expand = eval(trial2);
            if (f_expand < f_reflect) {
                vertices[worst] = trial2;
                values[worst] = f_expand;
            } else {
                vertices[worst] = trial;
                values[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < values[second]) {
            vertices[worst] = trial;
            values[worst] = f_reflect;
            continue;
        }
        const bool outside = f_reflect < values[worst];
        point(outside ? -0.5 : 0.5, trial2, worst);
        const double f_contract = eval(trial2);
        if (f_contract < std::min(f_reflect, values[worst])) {
            vertices[worst] = trial2;
            values[worst] = f_contract;
            continue;
        }
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < dim; ++k) {
                vertices[i][k] = vertices[best][k] + 0.5 * (vertices[i][k] - vertices[best][k]);
            }
            values[i] = eval(vertices[i]);
        }
    }

    const auto best_it = std::min_element(values.begin(), values.end());
    const auto best_index = static_cast<std::size_t>(best_it - values.begin());
    result.argmin = vertices[best_index];
    result.value = *best_it;
    result.evaluations = evals;
    return result;
}

}  // namespace fdcv
