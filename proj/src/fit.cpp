#include "citesim/fit.hpp"

#include <cmath>

#include "citesim/parallel.hpp"

namespace citesim {

namespace {

std::vector<double> axis_values(const GridAxis& axis) {
    std::vector<double> values;
    // Tolerate rounding at the top of the range so hi itself is included.
    const double limit = axis.hi + axis.step * 1e-9;
    for (double v = axis.lo; v <= limit; v += axis.step) values.push_back(v);
    return values;
}

void apply_param(KernelSpec& k, const std::string& name, double value) {
    if (name == "alpha")
        k.alpha = value;
    else if (name == "beta")
        k.beta = value;
    else if (name == "gamma")
        k.transform.gamma = value;
    else if (name == "c")
        k.transform.c = value;
    else if (name == "cap")
        k.transform.cap = static_cast<int>(std::lround(value));
    else
        throw parameter_error("grid: unknown parameter '" + name + "'");
}

}  // namespace

void ParamGrid::validate() const {
    if (axes.empty()) throw parameter_error("grid: no axes");
    for (const GridAxis& axis : axes) {
        if (axis.name != "alpha" && axis.name != "beta" && axis.name != "gamma" &&
            axis.name != "c" && axis.name != "cap")
            throw parameter_error("grid: unknown parameter '" + axis.name + "'");
        if (!std::isfinite(axis.lo) || !std::isfinite(axis.hi) || axis.lo > axis.hi)
            throw parameter_error("grid: axis '" + axis.name + "' needs lo <= hi");
        if (!std::isfinite(axis.step) || axis.step <= 0.0)
            throw parameter_error("grid: axis '" + axis.name + "' needs step > 0");
        for (const GridAxis& other : axes)
            if (&other != &axis && other.name == axis.name)
                throw parameter_error("grid: duplicate axis '" + axis.name + "'");
    }
    std::size_t points = 1;
    for (const GridAxis& axis : axes) points *= axis_values(axis).size();
    if (points == 0) throw parameter_error("grid: empty grid");
    if (points > max_points)
        throw parameter_error("grid: " + std::to_string(points) +
                              " points exceed the limit of " +
                              std::to_string(max_points));
}

double objective(const KernelSpec& kernel, const BinnedDistribution& target,
                 const SimulationConfig& cfg, const TeamSizeVector& teams) {
    const BinningScheme scheme = target.scheme.value_or(BinningScheme{});
    const std::vector<RunResult> runs = run_ensemble(cfg, teams, kernel);
    Histogram pooled;
    for (const RunResult& rr : runs)
        for (const auto& [value, count] : citation_histogram(rr.final_snapshot()))
            pooled[value] += count;
    return distance(log_binned(pooled, scheme), target).decades;
}

FitResult grid_fit(const ParamGrid& grid, const KernelSpec& base,
                   const BinnedDistribution& target, const SimulationConfig& cfg,
                   const TeamSizeVector& teams) {
    grid.validate();

    std::vector<std::vector<double>> values;
    values.reserve(grid.axes.size());
    std::size_t n_points = 1;
    for (const GridAxis& axis : grid.axes) {
        values.push_back(axis_values(axis));
        n_points *= values.back().size();
    }

    FitResult result;
    for (const GridAxis& axis : grid.axes) result.axis_names.push_back(axis.name);
    result.surface.resize(n_points);
    for (std::size_t p = 0; p < n_points; ++p) {
        std::size_t rem = p;
        GridPoint& point = result.surface[p];
        point.values.resize(grid.axes.size());
        // First axis most significant: enumeration order is lexicographic.
        for (std::size_t a = grid.axes.size(); a-- > 0;) {
            point.values[a] = values[a][rem % values[a].size()];
            rem /= values[a].size();
        }
    }

    parallel_for_index(static_cast<int>(n_points), [&](int p) {
        GridPoint& point = result.surface[static_cast<std::size_t>(p)];
        KernelSpec k = base;
        for (std::size_t a = 0; a < grid.axes.size(); ++a)
            apply_param(k, grid.axes[a].name, point.values[a]);
        point.objective = objective(k, target, cfg, teams);
    });

    std::size_t best = 0;
    for (std::size_t p = 1; p < n_points; ++p)
        if (result.surface[p].objective < result.surface[best].objective)
            best = p;
    result.best_objective = result.surface[best].objective;
    for (std::size_t a = 0; a < grid.axes.size(); ++a)
        result.best_params[grid.axes[a].name] = result.surface[best].values[a];
    return result;
}

}  // namespace citesim
