#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "citesim/random.hpp"

namespace citesim {

// Team sizes for the whole cohort; the paper id of an entry is its position.
using TeamSizeVector = std::vector<int>;

// Synthetic team-size generator: a mixture of a shifted-Poisson core of
// small teams and a truncated discrete power-law tail of large ones.
// Defaults put the modal size at 2-3 authors with a tail reaching several
// hundred.
struct TeamGenParams {
    double core_mean = 2.8;       // mean team size of the core component
    double tail_exponent = 2.0;   // pmf exponent of the power-law tail
    double tail_fraction = 0.15;  // probability a paper is drawn from the tail
    int max_size = 500;

    void validate() const;
};

enum class TransformKind { identity, power, constant };

// Static map from (capped) team size to a paper's direct-citation weight.
struct DirectTransform {
    TransformKind kind = TransformKind::identity;
    double c = 1.0;      // multiplier (power/constant kinds)
    double gamma = 1.0;  // exponent (power kind)
    int cap = 30;        // team sizes above this count as exactly cap

    void validate() const;
};

TeamSizeVector gen_team_sizes(const TeamGenParams& params, int n, Rng& rng);

// Validates raw sizes (one per row, row order preserved); errors name the
// offending row.
TeamSizeVector load_team_sizes(const std::vector<long long>& raw_sizes);

// c * min(team_size, cap)^gamma for power, min(team_size, cap) for identity,
// c for constant.
double intrinsic_weight(int team_size, const DirectTransform& t);

std::map<int, std::uint64_t> team_size_histogram(const TeamSizeVector& v);

}  // namespace citesim
