#include "citesim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "citesim/engine.hpp"
#include "citesim/fit.hpp"
#include "citesim/io.hpp"
#include "citesim/population.hpp"
#include "citesim/stats.hpp"

namespace citesim {

namespace {

// Values accepted from a --config JSON file; command-line flags override.
struct CliConfig {
    std::optional<int> n_papers;
    std::optional<std::uint64_t> total_events;
    std::optional<std::vector<Checkpoint>> checkpoints;
    std::optional<std::uint64_t> seed;
    std::optional<int> replicates;
    std::optional<KernelSpec> kernel;
    std::optional<BinningScheme> binning;
    std::optional<std::string> teams_csv;
    std::optional<std::string> out;
};

CliConfig load_cli_config(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw parameter_error(path + ": invalid JSON: " + e.what());
    }
    if (!j.is_object()) throw parameter_error(path + ": expected a JSON object");
    const std::vector<std::string> allowed = {
        "n_papers", "total_events", "checkpoints", "seed", "replicates",
        "kernel",   "binning",      "teams_csv",   "out"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw parameter_error(path + ": unknown field '" + key + "'");
    }
    CliConfig cfg;
    if (j.contains("n_papers")) cfg.n_papers = j.at("n_papers").get<int>();
    if (j.contains("total_events"))
        cfg.total_events = j.at("total_events").get<std::uint64_t>();
    if (j.contains("checkpoints")) {
        std::vector<Checkpoint> cps;
        for (const nlohmann::json& jc : j.at("checkpoints")) {
            if (!jc.is_object() || !jc.contains("label") || !jc.contains("events") ||
                jc.size() != 2)
                throw parameter_error(path +
                                      ": checkpoints need {label, events} objects");
            cps.push_back({jc.at("label").get<std::string>(),
                           jc.at("events").get<std::uint64_t>()});
        }
        cfg.checkpoints = std::move(cps);
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("replicates")) cfg.replicates = j.at("replicates").get<int>();
    if (j.contains("kernel")) cfg.kernel = kernel_from_json(j.at("kernel"));
    if (j.contains("binning")) {
        const nlohmann::json& jb = j.at("binning");
        if (!jb.is_object())
            throw parameter_error(path + ": binning must be an object");
        BinningScheme scheme;
        for (const auto& [key, value] : jb.items()) {
            if (key == "integer_bins_up_to")
                scheme.integer_bins_up_to = value.get<int>();
            else if (key == "log_width")
                scheme.log_width = value.get<double>();
            else
                throw parameter_error(path + ": unknown binning field '" + key +
                                      "'");
        }
        scheme.validate();
        cfg.binning = scheme;
    }
    if (j.contains("teams_csv"))
        cfg.teams_csv = j.at("teams_csv").get<std::string>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    return cfg;
}

Checkpoint parse_checkpoint_flag(const std::string& text) {
    const std::size_t pos = text.rfind(':');
    if (pos == std::string::npos || pos == 0 || pos + 1 == text.size())
        throw parameter_error("checkpoint '" + text +
                              "' must look like label:events");
    Checkpoint cp;
    cp.label = text.substr(0, pos);
    try {
        cp.events = std::stoull(text.substr(pos + 1));
    } catch (const std::exception&) {
        throw parameter_error("checkpoint '" + text + "' has a bad event count");
    }
    return cp;
}

GridAxis parse_grid_flag(const std::string& text) {
    GridAxis axis;
    std::vector<std::string> parts;
    std::string part;
    std::stringstream ss(text);
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 4)
        throw parameter_error("grid '" + text + "' must look like name:lo:hi:step");
    axis.name = parts[0];
    try {
        axis.lo = std::stod(parts[1]);
        axis.hi = std::stod(parts[2]);
        axis.step = std::stod(parts[3]);
    } catch (const std::exception&) {
        throw parameter_error("grid '" + text + "' has non-numeric bounds");
    }
    return axis;
}

// Flag holders for kernel parameters shared by `simulate` and `fit`.
struct KernelFlags {
    std::string mode;
    double alpha = 0.0, epsilon = 0.0, beta = 0.0;
    std::string transform_kind;
    double c = 0.0, gamma = 0.0;
    int cap = 0;
    double attract_exponent = 0.0;
};

void add_kernel_flags(CLI::App* cmd, KernelFlags& f) {
    cmd->add_option("--kernel", f.mode,
                    "kernel mode (uniform, pure-ca, price, gen-price, team, "
                    "team-general, direct-only-team, powerlaw-attract, influence)");
    cmd->add_option("--alpha", f.alpha, "constant direct weight (gen-price)");
    cmd->add_option("--epsilon", f.epsilon, "direct seed weight (pure-ca)");
    cmd->add_option("--beta", f.beta, "cumulative-advantage exponent");
    cmd->add_option("--transform", f.transform_kind,
                    "team-size transform kind (identity, power, constant)");
    cmd->add_option("--c", f.c, "transform multiplier");
    cmd->add_option("--gamma", f.gamma, "transform exponent");
    cmd->add_option("--cap", f.cap, "team-size cap");
    cmd->add_option("--attract-exponent", f.attract_exponent,
                    "power-law attractiveness exponent");
}

KernelSpec assemble_kernel(const CLI::App* cmd, const KernelFlags& f,
                           const CliConfig& cfg) {
    KernelSpec k = cfg.kernel.value_or(KernelSpec{});
    const bool kind_set = cmd->count("--transform") > 0;
    if (cmd->count("--kernel")) k.mode = kernel_mode_from_string(f.mode);
    if (cmd->count("--alpha")) k.alpha = f.alpha;
    if (cmd->count("--epsilon")) k.epsilon = f.epsilon;
    if (cmd->count("--beta")) k.beta = f.beta;
    if (kind_set) {
        if (f.transform_kind == "identity")
            k.transform.kind = TransformKind::identity;
        else if (f.transform_kind == "power")
            k.transform.kind = TransformKind::power;
        else if (f.transform_kind == "constant")
            k.transform.kind = TransformKind::constant;
        else
            throw parameter_error("unknown transform kind: " + f.transform_kind);
    }
    if (cmd->count("--c")) k.transform.c = f.c;
    if (cmd->count("--gamma")) k.transform.gamma = f.gamma;
    if (cmd->count("--cap")) k.transform.cap = f.cap;
    if (cmd->count("--attract-exponent")) k.attract_exponent = f.attract_exponent;
    // team-general defaults to the power transform so --gamma/--c take effect
    // without an explicit --transform power.
    if (k.mode == KernelMode::team_general && !kind_set && !cfg.kernel)
        k.transform.kind = TransformKind::power;
    if (k.mode == KernelMode::influence && !k.influence) k.influence = InfluenceSpec{};
    resolve_influence_mean(k);
    k.validate();
    return k;
}

SimulationConfig assemble_sim_config(const CLI::App* cmd, const CliConfig& cfg,
                                     std::uint64_t events_flag,
                                     std::uint64_t seed_flag, int replicates_flag,
                                     const std::vector<std::string>& checkpoint_flags,
                                     int n_papers) {
    SimulationConfig sim;
    sim.n_papers = n_papers;
    sim.total_events = cfg.total_events.value_or(sim.total_events);
    if (cmd->count("--events")) sim.total_events = events_flag;
    sim.seed = cfg.seed.value_or(sim.seed);
    if (cmd->count("--seed")) sim.seed = seed_flag;
    sim.replicates = cfg.replicates.value_or(sim.replicates);
    if (cmd->count("--replicates")) sim.replicates = replicates_flag;
    if (!checkpoint_flags.empty()) {
        std::vector<Checkpoint> cps;
        for (const std::string& text : checkpoint_flags)
            cps.push_back(parse_checkpoint_flag(text));
        sim.checkpoints = std::move(cps);
    } else if (cfg.checkpoints) {
        sim.checkpoints = *cfg.checkpoints;
    } else {
        sim.checkpoints = SimulationConfig::default_checkpoints(sim.total_events);
    }
    if (cfg.n_papers && *cfg.n_papers != n_papers)
        throw parameter_error("config n_papers (" + std::to_string(*cfg.n_papers) +
                              ") does not match the team file (" +
                              std::to_string(n_papers) + " rows)");
    sim.validate();
    return sim;
}

std::string replicate_path(const std::string& prefix, int replicate) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "_r%04d", replicate);
    return prefix + buf + ".json";
}

int cmd_gen_teams(int n, std::uint64_t seed, const TeamGenParams& params,
                  const std::string& out) {
    if (n < 1) throw parameter_error("gen-teams: --n must be >= 1");
    params.validate();
    Rng rng = make_stream(seed, 0);
    const TeamSizeVector teams = gen_team_sizes(params, n, rng);
    write_team_csv(out, teams);

    const auto hist = team_size_histogram(teams);
    int mode = 0;
    std::uint64_t mode_count = 0;
    for (const auto& [size, count] : hist)
        if (count > mode_count) {
            mode = size;
            mode_count = count;
        }
    std::cout << "teams: n=" << teams.size() << " mode=" << mode
              << " max=" << hist.rbegin()->first << " -> " << out << "\n";
    return 0;
}

int cmd_simulate(const CLI::App* cmd, const CliConfig& cfg,
                 const KernelFlags& kflags, const std::string& teams_path,
                 std::uint64_t events_flag, std::uint64_t seed_flag,
                 int replicates_flag,
                 const std::vector<std::string>& checkpoint_flags,
                 const std::string& out_prefix) {
    const std::string teams_file =
        !teams_path.empty() ? teams_path : cfg.teams_csv.value_or("");
    if (teams_file.empty())
        throw parameter_error("simulate: provide --teams or teams_csv in the config");
    const std::string out = !out_prefix.empty() ? out_prefix : cfg.out.value_or("");
    if (out.empty())
        throw parameter_error("simulate: provide --out or out in the config");

    const TeamSizeVector teams = read_team_csv(teams_file);
    const KernelSpec kernel = assemble_kernel(cmd, kflags, cfg);
    const SimulationConfig sim =
        assemble_sim_config(cmd, cfg, events_flag, seed_flag, replicates_flag,
                            checkpoint_flags, static_cast<int>(teams.size()));

    const std::vector<RunResult> results = run_ensemble(sim, teams, kernel);

    double sum_direct = 0.0;
    double sum_direct_sq = 0.0;
    nlohmann::json files = nlohmann::json::array();
    for (const RunResult& rr : results) {
        const std::string path = replicate_path(out, rr.replicate_id);
        write_run_json(path, rr, sim, kernel);
        files.push_back(path);
        std::uint64_t direct = 0;
        for (std::uint32_t d : rr.final_snapshot().n_direct) direct += d;
        sum_direct += static_cast<double>(direct);
        sum_direct_sq += static_cast<double>(direct) * static_cast<double>(direct);
        std::cout << "wrote " << path << "\n";
    }
    const double r = static_cast<double>(results.size());
    const double mean_direct = sum_direct / r;
    const double var_direct =
        results.size() > 1
            ? std::max(0.0, (sum_direct_sq - r * mean_direct * mean_direct) / (r - 1.0))
            : 0.0;

    nlohmann::json summary;
    summary["format"] = "citesim-ensemble-v1";
    summary["replicates"] = sim.replicates;
    summary["seed"] = sim.seed;
    summary["n_papers"] = sim.n_papers;
    summary["total_events"] = sim.total_events;
    summary["kernel"] = kernel_to_json(kernel);
    nlohmann::json cps = nlohmann::json::array();
    for (const Snapshot& s : results[0].snapshots)
        cps.push_back({{"label", s.label}, {"events", s.events}});
    summary["checkpoints"] = std::move(cps);
    summary["total_direct"] = {{"mean", mean_direct},
                               {"stddev", std::sqrt(var_direct)}};
    summary["files"] = std::move(files);
    const std::string summary_path = out + "_summary.json";
    write_file_atomic(summary_path, summary.dump(2) + "\n");
    std::cout << "wrote " << summary_path << "\n";
    return 0;
}

int cmd_analyze(const std::string& run_path, const std::string& checkpoint,
                const BinningScheme& scheme, const std::string& dist_path,
                const std::string& shares_path, const std::string& gm_path,
                const std::string& teams_path, bool unshifted_gm) {
    if (dist_path.empty() && shares_path.empty() && gm_path.empty())
        throw parameter_error(
            "analyze: request at least one of --dist, --shares, --gm");
    const RunResult rr = read_run_json(run_path);

    const Snapshot* snap = nullptr;
    if (!dist_path.empty() || !gm_path.empty()) {
        snap = rr.find_snapshot(checkpoint);
        if (snap == nullptr) {
            std::string labels;
            for (const Snapshot& s : rr.snapshots) {
                if (!labels.empty()) labels += ", ";
                labels += s.label;
            }
            throw parameter_error("analyze: no checkpoint '" + checkpoint +
                                  "'; available: " + labels);
        }
    }

    if (!dist_path.empty()) {
        const BinnedDistribution dist =
            log_binned(citation_histogram(*snap), scheme);
        write_distribution_csv(dist_path, dist);
        std::cout << "wrote " << dist_path << "\n";
    }
    if (!shares_path.empty()) {
        write_share_csv(shares_path, direct_share_by_period(rr));
        std::cout << "wrote " << shares_path << "\n";
    }
    if (!gm_path.empty()) {
        if (teams_path.empty())
            throw parameter_error("analyze: --gm needs --teams");
        const TeamSizeVector teams = read_team_csv(teams_path);
        write_gm_csv(gm_path, geometric_mean_by_team_size(*snap, teams, scheme,
                                                          !unshifted_gm));
        std::cout << "wrote " << gm_path << "\n";
    }
    return 0;
}

int cmd_compare(const std::string& a_path, const std::string& b_path) {
    const BinnedDistribution a = read_distribution_csv(a_path);
    const BinnedDistribution b = read_distribution_csv(b_path);
    const DistanceReport report = distance(a, b);
    std::cout << "distance_decades=" << report.decades
              << " common_bins=" << report.common_bins
              << " excluded_bins=" << report.excluded_bins << "\n";
    return 0;
}

int cmd_fit(const CLI::App* cmd, const CliConfig& cfg, const KernelFlags& kflags,
            const std::string& target_path, const std::string& teams_path,
            const std::vector<std::string>& grid_flags, std::size_t max_points,
            std::uint64_t events_flag, std::uint64_t seed_flag,
            int replicates_flag, const std::string& out_path) {
    const std::string teams_file =
        !teams_path.empty() ? teams_path : cfg.teams_csv.value_or("");
    if (teams_file.empty())
        throw parameter_error("fit: provide --teams or teams_csv in the config");
    if (grid_flags.empty()) throw parameter_error("fit: provide at least one --grid");

    const TeamSizeVector teams = read_team_csv(teams_file);
    BinnedDistribution target = read_distribution_csv(target_path);
    target.scheme = cfg.binning.value_or(BinningScheme{});
    const KernelSpec base = assemble_kernel(cmd, kflags, cfg);

    ParamGrid grid;
    grid.max_points = max_points;
    for (const std::string& text : grid_flags)
        grid.axes.push_back(parse_grid_flag(text));

    SimulationConfig sim =
        assemble_sim_config(cmd, cfg, events_flag, seed_flag, replicates_flag, {},
                            static_cast<int>(teams.size()));
    sim.checkpoints.clear();  // fit only needs the implicit final snapshot

    const FitResult fit = grid_fit(grid, base, target, sim, teams);
    write_fit_json(out_path, fit);
    std::cout << "best objective " << fit.best_objective << " decades at";
    for (const auto& [name, value] : fit.best_params)
        std::cout << " " << name << "=" << value;
    std::cout << "; wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"citesim: citation-accumulation simulator"};
    app.require_subcommand(1);

    // gen-teams
    auto* gen = app.add_subcommand("gen-teams", "generate a synthetic team CSV");
    int gen_n = 6430;
    std::uint64_t gen_seed = 1;
    TeamGenParams gen_params;
    std::string gen_out;
    gen->add_option("--n", gen_n, "cohort size");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--core-mean", gen_params.core_mean, "core mean team size");
    gen->add_option("--tail-exponent", gen_params.tail_exponent,
                    "power-law tail exponent");
    gen->add_option("--tail-fraction", gen_params.tail_fraction,
                    "probability of a tail draw");
    gen->add_option("--max-size", gen_params.max_size, "largest team size");
    gen->add_option("--out", gen_out, "output CSV path")->required();

    // simulate
    auto* sim = app.add_subcommand("simulate", "run a seeded replicate ensemble");
    std::string sim_config, sim_teams, sim_out;
    KernelFlags sim_kernel;
    std::uint64_t sim_events = 0, sim_seed = 0;
    int sim_replicates = 0;
    std::vector<std::string> sim_checkpoints;
    sim->add_option("--config", sim_config, "JSON config file");
    sim->add_option("--teams", sim_teams, "team CSV path");
    sim->add_option("--out", sim_out, "output path prefix");
    add_kernel_flags(sim, sim_kernel);
    sim->add_option("--events", sim_events, "total citation events");
    sim->add_option("--seed", sim_seed, "ensemble seed");
    sim->add_option("--replicates", sim_replicates, "replicate count");
    sim->add_option("--checkpoint", sim_checkpoints,
                    "extra snapshot as label:events (repeatable)");

    // analyze
    auto* ana = app.add_subcommand("analyze", "turn a run JSON into CSV tables");
    std::string ana_config, ana_run, ana_checkpoint = "final";
    std::string ana_dist, ana_shares, ana_gm, ana_teams;
    BinningScheme ana_scheme;
    bool ana_unshifted = false;
    ana->add_option("--config", ana_config, "JSON config file");
    ana->add_option("--run", ana_run, "run JSON path")->required();
    ana->add_option("--checkpoint", ana_checkpoint, "snapshot label");
    ana->add_option("--dist", ana_dist, "distribution CSV output");
    ana->add_option("--shares", ana_shares, "direct-share CSV output");
    ana->add_option("--gm", ana_gm, "geometric-mean CSV output");
    ana->add_option("--teams", ana_teams, "team CSV (for --gm)");
    ana->add_option("--int-bins", ana_scheme.integer_bins_up_to,
                    "unit bins up to this value");
    ana->add_option("--log-width", ana_scheme.log_width, "log bin width, decades");
    ana->add_flag("--unshifted-gm", ana_unshifted,
                  "geometric mean without the +1 shift (drops zero-citation papers)");

    // compare
    auto* cmp = app.add_subcommand("compare", "distance between two distributions");
    std::string cmp_a, cmp_b;
    cmp->add_option("--a", cmp_a, "first distribution CSV")->required();
    cmp->add_option("--b", cmp_b, "second distribution CSV")->required();

    // fit
    auto* fit = app.add_subcommand("fit", "grid-search kernel calibration");
    std::string fit_config, fit_target, fit_teams, fit_out = "fit.json";
    KernelFlags fit_kernel;
    std::vector<std::string> fit_grids;
    std::size_t fit_max_points = 10000;
    std::uint64_t fit_events = 0, fit_seed = 0;
    int fit_replicates = 0;
    fit->add_option("--config", fit_config, "JSON config file");
    fit->add_option("--target", fit_target, "target distribution CSV")->required();
    fit->add_option("--teams", fit_teams, "team CSV path");
    fit->add_option("--grid", fit_grids, "axis as name:lo:hi:step (repeatable)");
    fit->add_option("--max-points", fit_max_points, "grid size limit");
    add_kernel_flags(fit, fit_kernel);
    fit->add_option("--events", fit_events, "events per simulation");
    fit->add_option("--seed", fit_seed, "objective seed");
    fit->add_option("--replicates", fit_replicates, "replicates per grid point");
    fit->add_option("--out", fit_out, "fit report JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(gen))
            return cmd_gen_teams(gen_n, gen_seed, gen_params, gen_out);
        if (app.got_subcommand(sim)) {
            const CliConfig cfg =
                sim_config.empty() ? CliConfig{} : load_cli_config(sim_config);
            return cmd_simulate(sim, cfg, sim_kernel, sim_teams, sim_events,
                                sim_seed, sim_replicates, sim_checkpoints, sim_out);
        }
        if (app.got_subcommand(ana)) {
            if (!ana_config.empty()) {
                const CliConfig cfg = load_cli_config(ana_config);
                if (cfg.binning && ana->count("--int-bins") == 0 &&
                    ana->count("--log-width") == 0)
                    ana_scheme = *cfg.binning;
                if (ana_teams.empty() && cfg.teams_csv) ana_teams = *cfg.teams_csv;
            }
            ana_scheme.validate();
            return cmd_analyze(ana_run, ana_checkpoint, ana_scheme, ana_dist,
                               ana_shares, ana_gm, ana_teams, ana_unshifted);
        }
        if (app.got_subcommand(cmp)) return cmd_compare(cmp_a, cmp_b);
        if (app.got_subcommand(fit)) {
            const CliConfig cfg =
                fit_config.empty() ? CliConfig{} : load_cli_config(fit_config);
            return cmd_fit(fit, cfg, fit_kernel, fit_target, fit_teams, fit_grids,
                           fit_max_points, fit_events, fit_seed, fit_replicates,
                           fit_out);
        }
        throw parameter_error("no command given");
    } catch (const parameter_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const analysis_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace citesim
