#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "citesim/engine.hpp"

namespace citesim {

// Exact value -> count map; only values that occur are present.
using Histogram = std::map<std::uint32_t, std::uint64_t>;

// Canonical bucket lattice for distribution plots and value bucketing:
// exact unit-width buckets [v-0.5, v+0.5) up to integer_bins_up_to, then
// contiguous log10 buckets of log_width decades starting at
// integer_bins_up_to + 0.5.
struct BinningScheme {
    int integer_bins_up_to = 10;
    double log_width = 0.1;  // decades

    void validate() const;
};

// 1-based bucket index of a value x >= 0.5 (unit buckets get index v, log
// buckets follow), and the [lo, hi) bounds of a bucket.
int bucket_index(double x, const BinningScheme& s);
std::pair<double, double> bucket_bounds(int index, const BinningScheme& s);

struct Bin {
    double lo = 0.0;
    double hi = 0.0;
    double center = 0.0;
    double count = 0.0;
    double density = 0.0;  // count / (width * n_total)
};

// Distribution over the shifted axis x = n_cit + 1, so zero-citation papers
// are displayable on log axes.
struct BinnedDistribution {
    std::vector<Bin> bins;  // contiguous, ascending
    std::uint64_t n_total = 0;
    std::optional<BinningScheme> scheme;  // set when produced by log_binned
};

Histogram citation_histogram(const Snapshot& snapshot);

BinnedDistribution log_binned(const Histogram& h, const BinningScheme& scheme);

struct DistanceReport {
    double decades = 0.0;  // RMS of log10-density differences
    int common_bins = 0;   // bins with positive density in both
    int excluded_bins = 0; // bins skipped because either side is empty there
};

// RMS log10-density distance over bins where both distributions have mass.
// Bin boundaries must align (same scheme); no common nonzero bin is an
// analysis error.
DistanceReport distance(const BinnedDistribution& a, const BinnedDistribution& b);

struct PeriodShare {
    std::string label;
    std::uint64_t events = 0;
    std::uint64_t direct = 0;
    std::uint64_t indirect = 0;
    std::optional<double> share;  // absent for zero-event periods
};

std::vector<PeriodShare> direct_share_by_period(const RunResult& rr);

struct FractionBucket {
    double lo = 0.0;
    double hi = 0.0;
    std::uint64_t n_papers = 0;
    double mean_fraction = 0.0;  // mean over papers of n_direct / n_cit
};

// Papers grouped by final citation count (unit buckets to the scheme
// threshold, log buckets above); zero-citation papers are excluded.
std::vector<FractionBucket> direct_fraction_by_final_count(
    const Snapshot& snapshot, const BinningScheme& scheme = BinningScheme{});

struct TeamGmBucket {
    double lo = 0.0;
    double hi = 0.0;
    std::uint64_t n_papers = 0;
    double gm = 0.0;
};

// Geometric mean citations per team-size bucket. The shifted variant (the
// default) computes exp(mean(ln(n_cit + 1))) - 1 so zero-citation papers are
// well defined; the unshifted variant drops them and averages ln(n_cit).
std::vector<TeamGmBucket> geometric_mean_by_team_size(
    const Snapshot& snapshot, const TeamSizeVector& teams,
    const BinningScheme& scheme = BinningScheme{}, bool shifted = true);

}  // namespace citesim
