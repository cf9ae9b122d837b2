#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "citesim/kernels.hpp"
#include "citesim/population.hpp"

namespace citesim {

struct Checkpoint {
    std::string label;
    std::uint64_t events = 0;

    bool operator==(const Checkpoint&) const = default;
};

// The two pinned event counts give the default calendar anchors: 38,414
// events for the end of the first full year ("initial") and 263,371 for the
// end of the observation window ("final"). Additional mid-run checkpoints
// are caller-supplied cumulative event counts.
struct SimulationConfig {
    int n_papers = 6430;
    std::uint64_t total_events = 263371;
    std::vector<Checkpoint> checkpoints = default_checkpoints(263371);
    std::uint64_t seed = 1;
    int replicates = 1;

    static std::vector<Checkpoint> default_checkpoints(std::uint64_t total_events);
    void validate() const;
};

struct Snapshot {
    std::string label;
    std::uint64_t events = 0;
    std::vector<std::uint32_t> n_cit;
    std::vector<std::uint32_t> n_direct;

    bool operator==(const Snapshot&) const = default;
};

// Direct/indirect event tallies for the span between consecutive
// checkpoints; labeled by the checkpoint that closes the period.
struct PeriodTally {
    std::string label;
    std::uint64_t events = 0;
    std::uint64_t direct = 0;
    std::uint64_t indirect = 0;

    bool operator==(const PeriodTally&) const = default;
};

struct RunResult {
    std::uint64_t seed = 0;
    int replicate_id = 0;
    std::vector<Snapshot> snapshots;  // always ends with the final state
    std::vector<PeriodTally> periods;

    const Snapshot& final_snapshot() const;
    const Snapshot* find_snapshot(const std::string& label) const;

    bool operator==(const RunResult&) const = default;
};

// Runs cfg.total_events citation events over the cohort. Each event samples
// a paper proportionally to its total kernel weight, attributes the citation
// direct/indirect, and updates the weight index. Fully deterministic given
// (cfg.seed, replicate_id, teams, kernel); replicate streams are derived via
// make_stream(seed, replicate_id).
RunResult run(const SimulationConfig& cfg, const TeamSizeVector& teams,
              const KernelSpec& kernel, int replicate_id);

// Runs cfg.replicates independent replicates (in parallel); result r is
// identical to run(cfg, teams, kernel, r).
std::vector<RunResult> run_ensemble(const SimulationConfig& cfg,
                                    const TeamSizeVector& teams,
                                    const KernelSpec& kernel);

// Exact expected number of direct citations among the first n_events events
// of a kernel with static aggregate direct weight A and linear cumulative
// advantage: sum over E < n_events of A / (A + E). At event E the total
// weight is A + E, of which A is direct.
double expected_direct_count(double aggregate_direct_weight,
                             std::uint64_t n_events);

}  // namespace citesim
