#include "citesim/population.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace citesim {

void TeamGenParams::validate() const {
    if (!std::isfinite(core_mean) || core_mean <= 0.0)
        throw parameter_error("team generator: core_mean must be > 0");
    if (!std::isfinite(tail_exponent) || tail_exponent <= 1.0)
        throw parameter_error("team generator: tail_exponent must be > 1");
    if (!std::isfinite(tail_fraction) || tail_fraction < 0.0 || tail_fraction > 1.0)
        throw parameter_error("team generator: tail_fraction must be in [0, 1]");
    if (max_size < 1)
        throw parameter_error("team generator: max_size must be >= 1");
}

void DirectTransform::validate() const {
    if (!std::isfinite(c) || c <= 0.0)
        throw parameter_error("transform: c must be > 0");
    if (!std::isfinite(gamma) || gamma < 0.0)
        throw parameter_error("transform: gamma must be >= 0");
    if (cap < 1)
        throw parameter_error("transform: cap must be >= 1");
}

TeamSizeVector gen_team_sizes(const TeamGenParams& params, int n, Rng& rng) {
    params.validate();
    if (n < 1)
        throw parameter_error("team generator: n must be >= 1");

    // Core is 1 + Poisson(core_mean - 1): mean core_mean, minimum 1, and
    // degenerate (all ones) when core_mean == 1.
    const double core_lambda = std::max(0.0, params.core_mean - 1.0);
    const DiscretePowerLaw tail(params.tail_exponent, params.max_size);

    TeamSizeVector sizes;
    sizes.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int s;
        if (uniform01(rng) < params.tail_fraction) {
            s = tail.sample(rng);
        } else {
            const long long core = 1 + sample_poisson(rng, core_lambda);
            s = static_cast<int>(std::min<long long>(core, params.max_size));
        }
        sizes.push_back(s);
    }
    return sizes;
}

TeamSizeVector load_team_sizes(const std::vector<long long>& raw_sizes) {
    if (raw_sizes.empty())
        throw parameter_error("team sizes: empty cohort");
    TeamSizeVector sizes;
    sizes.reserve(raw_sizes.size());
    for (std::size_t row = 0; row < raw_sizes.size(); ++row) {
        const long long s = raw_sizes[row];
        if (s < 1)
            throw parameter_error("team sizes: row " + std::to_string(row) +
                                  " has team size " + std::to_string(s) +
                                  "; sizes must be >= 1");
        if (s > std::numeric_limits<int>::max())
            throw parameter_error("team sizes: row " + std::to_string(row) +
                                  " is out of range");
        sizes.push_back(static_cast<int>(s));
    }
    return sizes;
}

double intrinsic_weight(int team_size, const DirectTransform& t) {
    if (team_size < 1)
        throw parameter_error("intrinsic weight: team size must be >= 1");
    t.validate();
    const int capped = std::min(team_size, t.cap);
    switch (t.kind) {
        case TransformKind::identity:
            return static_cast<double>(capped);
        case TransformKind::power:
            return t.c * std::pow(static_cast<double>(capped), t.gamma);
        case TransformKind::constant:
            return t.c;
    }
    throw parameter_error("intrinsic weight: unknown transform kind");
}

std::map<int, std::uint64_t> team_size_histogram(const TeamSizeVector& v) {
    std::map<int, std::uint64_t> hist;
    for (int s : v) ++hist[s];
    return hist;
}

}  // namespace citesim
