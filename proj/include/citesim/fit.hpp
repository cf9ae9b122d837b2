#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "citesim/engine.hpp"
#include "citesim/stats.hpp"

namespace citesim {

// One grid axis over a kernel parameter; values lo, lo+step, ... up to hi.
// Valid names: alpha, beta, gamma, c, cap.
struct GridAxis {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
};

struct ParamGrid {
    std::vector<GridAxis> axes;
    std::size_t max_points = 10000;

    void validate() const;
};

struct GridPoint {
    std::vector<double> values;  // aligned with axis order
    double objective = 0.0;
};

struct FitResult {
    std::vector<std::string> axis_names;
    std::map<std::string, double> best_params;
    double best_objective = 0.0;
    std::vector<GridPoint> surface;  // grid enumeration order
};

// Monte Carlo objective: run cfg.replicates simulations of the kernel, pool
// the final-checkpoint histograms, bin them with the target's scheme and
// return the distance to the target in decades. Deterministic given
// (kernel, cfg.seed).
double objective(const KernelSpec& kernel, const BinnedDistribution& target,
                 const SimulationConfig& cfg, const TeamSizeVector& teams);

// Exhaustive grid search; the grid is evaluated in lexicographic axis order
// (first axis most significant) and ties break toward the first, i.e.
// lexicographically smallest, parameter vector.
FitResult grid_fit(const ParamGrid& grid, const KernelSpec& base,
                   const BinnedDistribution& target, const SimulationConfig& cfg,
                   const TeamSizeVector& teams);

}  // namespace citesim
