#include "citesim/engine.hpp"

#include <optional>
#include <string>
#include <utility>

#include "citesim/parallel.hpp"
#include "citesim/weight_index.hpp"

namespace citesim {

namespace {
// Support cap for the once-per-paper attractiveness draw; at exponents > 1.5
// the truncated tail mass is negligible.
constexpr int kAttractSupportMax = 10000;
}  // namespace

std::vector<Checkpoint> SimulationConfig::default_checkpoints(
    std::uint64_t total_events) {
    std::vector<Checkpoint> cps;
    if (total_events > 38414) cps.push_back({"initial", 38414});
    if (total_events > 0) cps.push_back({"final", total_events});
    return cps;
}

void SimulationConfig::validate() const {
    if (n_papers < 1)
        throw parameter_error("config: n_papers must be >= 1");
    if (replicates < 1)
        throw parameter_error("config: replicates must be >= 1");
    std::uint64_t prev = 0;
    for (const Checkpoint& cp : checkpoints) {
        if (cp.events < 1)
            throw parameter_error("config: checkpoint events must be >= 1");
        if (cp.events <= prev)
            throw parameter_error(
                "config: checkpoints must be strictly increasing");
        if (cp.events > total_events)
            throw parameter_error("config: checkpoint '" + cp.label +
                                  "' is past total_events");
        prev = cp.events;
    }
}

const Snapshot& RunResult::final_snapshot() const {
    if (snapshots.empty())
        throw analysis_error("run result has no snapshots");
    return snapshots.back();
}

const Snapshot* RunResult::find_snapshot(const std::string& label) const {
    for (const Snapshot& s : snapshots)
        if (s.label == label) return &s;
    return nullptr;
}

RunResult run(const SimulationConfig& cfg, const TeamSizeVector& teams,
              const KernelSpec& kernel, int replicate_id) {
    cfg.validate();
    kernel.validate();
    if (static_cast<int>(teams.size()) != cfg.n_papers)
        throw parameter_error("run: team vector has " +
                              std::to_string(teams.size()) +
                              " entries but n_papers is " +
                              std::to_string(cfg.n_papers));

    std::vector<Checkpoint> cps = cfg.checkpoints;
    if (cps.empty() || cps.back().events != cfg.total_events)
        cps.push_back({"final", cfg.total_events});

    Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(replicate_id));
    const std::size_t n = static_cast<std::size_t>(cfg.n_papers);

    std::vector<PaperState> papers(n);
    if (kernel.uses_team_weights()) {
        for (std::size_t i = 0; i < n; ++i)
            papers[i].d = intrinsic_weight(teams[i], kernel.transform);
    } else if (kernel.mode == KernelMode::powerlaw_attract) {
        const DiscretePowerLaw attract(kernel.attract_exponent, kAttractSupportMax);
        for (std::size_t i = 0; i < n; ++i)
            papers[i].d = attract.sample(rng);
    }

    std::optional<DiscretePowerLaw> influence_dist;
    if (kernel.mode == KernelMode::influence &&
        kernel.influence->dist.kind == InfluenceDistKind::powerlaw)
        influence_dist.emplace(kernel.influence->dist.exponent,
                               kernel.influence->dist.max_value);
    const DiscretePowerLaw* influence_ptr =
        influence_dist ? &*influence_dist : nullptr;

    std::vector<double> weights(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        weights[i] = total_weight(papers[i], kernel);
        total += weights[i];
    }
    if (!(total > 0.0))
        throw parameter_error(
            "run: degenerate kernel, total citation weight is zero before any "
            "event");
    WeightIndex index = WeightIndex::build(std::move(weights));

    RunResult rr;
    rr.seed = cfg.seed;
    rr.replicate_id = replicate_id;

    std::size_t cp_i = 0;
    std::uint64_t period_events = 0;
    std::uint64_t period_direct = 0;

    const auto close_checkpoints = [&](std::uint64_t done) {
        while (cp_i < cps.size() && cps[cp_i].events == done) {
            Snapshot snap;
            snap.label = cps[cp_i].label;
            snap.events = done;
            snap.n_cit.resize(n);
            snap.n_direct.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                snap.n_cit[i] = papers[i].n_cit;
                snap.n_direct[i] = papers[i].n_direct;
            }
            rr.snapshots.push_back(std::move(snap));
            rr.periods.push_back({cps[cp_i].label, period_events, period_direct,
                                  period_events - period_direct});
            period_events = 0;
            period_direct = 0;
            ++cp_i;
        }
    };

    for (std::uint64_t e = 0; e < cfg.total_events; ++e) {
        const double u = uniform01(rng);
        const std::size_t i = index.sample(u);
        const CiteOutcome out = on_cited(papers[i], kernel, rng, influence_ptr);
        index.update(i, total_weight(papers[i], kernel));
        ++period_events;
        if (out.was_direct) ++period_direct;
        close_checkpoints(e + 1);
    }
    close_checkpoints(cfg.total_events);  // covers the zero-event run

    return rr;
}

std::vector<RunResult> run_ensemble(const SimulationConfig& cfg,
                                    const TeamSizeVector& teams,
                                    const KernelSpec& kernel) {
    cfg.validate();
    std::vector<RunResult> results(static_cast<std::size_t>(cfg.replicates));
    try {
        parallel_for_index(cfg.replicates, [&](int r) {
            results[static_cast<std::size_t>(r)] = run(cfg, teams, kernel, r);
        });
    } catch (const parameter_error& e) {
        throw parameter_error(std::string("ensemble: ") + e.what());
    }
    return results;
}

double expected_direct_count(double aggregate_direct_weight,
                             std::uint64_t n_events) {
    if (!(aggregate_direct_weight > 0.0))
        throw parameter_error("expected_direct_count: weight must be > 0");
    double sum = 0.0;
    for (std::uint64_t e = 0; e < n_events; ++e)
        sum += aggregate_direct_weight /
               (aggregate_direct_weight + static_cast<double>(e));
    return sum;
}

}  // namespace citesim
