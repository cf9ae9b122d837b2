// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Scales, seeds and tolerances are pinned here; the default seed for
// every ensemble is 1 and the default cohort is the seed-7 synthetic one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "citesim/engine.hpp"
#include "citesim/fit.hpp"
#include "citesim/stats.hpp"
#include "citesim/weight_index.hpp"
#include "support/stat_utils.hpp"

using namespace citesim;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s %2d  %-24s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::uint64_t sum32(const std::vector<std::uint32_t>& v) {
    std::uint64_t s = 0;
    for (std::uint32_t x : v) s += x;
    return s;
}

std::uint32_t modal_value(const Histogram& h) {
    std::uint32_t modal = 0;
    std::uint64_t best = 0;
    for (const auto& [value, count] : h)
        if (count > best) {
            best = count;
            modal = value;
        }
    return modal;
}

TeamSizeVector make_teams(int n, std::uint64_t seed = 7) {
    Rng rng = make_stream(seed, 0);
    return gen_team_sizes(TeamGenParams{}, n, rng);
}

KernelSpec make_kernel(KernelMode mode) {
    KernelSpec k;
    k.mode = mode;
    if (mode == KernelMode::influence) {
        k.influence = InfluenceSpec{};
        resolve_influence_mean(k);
    }
    return k;
}

SimulationConfig full_config(int replicates = 1) {
    SimulationConfig cfg;  // 6430 papers, 263371 events, initial/final
    cfg.seed = 1;
    cfg.replicates = replicates;
    return cfg;
}

// --- criterion 1: conservation + speed over the whole kernel family --------

void criterion_conservation(const TeamSizeVector& teams) {
    std::vector<KernelSpec> kernels;
    kernels.push_back(make_kernel(KernelMode::uniform));
    kernels.push_back(make_kernel(KernelMode::pure_ca));
    kernels.push_back(make_kernel(KernelMode::price));
    KernelSpec gp = make_kernel(KernelMode::gen_price);
    gp.alpha = 1.5;
    kernels.push_back(gp);
    kernels.push_back(make_kernel(KernelMode::team));
    KernelSpec tg = make_kernel(KernelMode::team_general);
    tg.transform.kind = TransformKind::power;
    tg.transform.gamma = 0.3;
    tg.transform.c = 1.0;
    kernels.push_back(tg);
    kernels.push_back(make_kernel(KernelMode::direct_only_team));
    kernels.push_back(make_kernel(KernelMode::powerlaw_attract));
    kernels.push_back(make_kernel(KernelMode::influence));

    bool pass = true;
    double slowest = 0.0;
    std::string bad;
    for (const KernelSpec& k : kernels) {
        const auto t0 = std::chrono::steady_clock::now();
        const RunResult rr = run(full_config(), teams, k, 0);
        const double dt = seconds_since(t0);
        slowest = std::max(slowest, dt);
        const Snapshot* initial = rr.find_snapshot("initial");
        const bool ok = initial != nullptr && sum32(initial->n_cit) == 38414 &&
                        sum32(rr.final_snapshot().n_cit) == 263371 && dt < 1.0;
        if (!ok) {
            pass = false;
            bad += std::string(" ") + to_string(k.mode);
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof detail, "9 kernels, slowest replicate %.3fs%s%s",
                  slowest, bad.empty() ? "" : ", failed:", bad.c_str());
    report(1, "conservation", pass, detail);
}

// --- criterion 2: uniform model is Poisson-like -----------------------------

void criterion_uniform_poisson(const TeamSizeVector& teams) {
    const std::vector<RunResult> ens =
        run_ensemble(full_config(100), teams, make_kernel(KernelMode::uniform));
    const double lambda = 263371.0 / 6430.0;
    int chi_pass = 0;
    int range_pass = 0;
    for (const RunResult& rr : ens) {
        const Histogram h = citation_histogram(rr.final_snapshot());
        if (statcheck::poisson_gof_pvalue(h, lambda, 6430.0) >= 0.01) ++chi_pass;
        if (h.begin()->first >= 15 && h.rbegin()->first <= 70) ++range_pass;
    }
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "chi-square pass %d/100 (need >=95), range [15,70] pass %d/100 "
                  "(need >=95)",
                  chi_pass, range_pass);
    report(2, "uniform Poisson fit", chi_pass >= 95 && range_pass >= 95, detail);
}

// --- criterion 3: pure cumulative advantage leaves most papers uncited -----

void criterion_pure_ca(const TeamSizeVector& teams) {
    KernelSpec k = make_kernel(KernelMode::pure_ca);
    k.epsilon = 0.01;
    const RunResult rr = run(full_config(), teams, k, 0);
    const Histogram h = citation_histogram(rr.final_snapshot());
    const double zero_fraction = static_cast<double>(h.at(0)) / 6430.0;
    char detail[96];
    std::snprintf(detail, sizeof detail, "zero fraction %.3f, modal value %u",
                  zero_fraction, modal_value(h));
    report(3, "pure CA ground state", zero_fraction > 0.5 && modal_value(h) == 0,
           detail);
}

// --- criterion 4: Price peaks at zero and has a thinner tail than team -----

void criterion_price_tail(const std::vector<RunResult>& price_ens,
                          const std::vector<RunResult>& team_ens) {
    Histogram pooled;
    for (const RunResult& rr : price_ens)
        for (const auto& [value, count] : citation_histogram(rr.final_snapshot()))
            pooled[value] += count;
    const bool modal_zero = modal_value(pooled) == 0;

    int thinner = 0;
    for (std::size_t r = 0; r < price_ens.size(); ++r) {
        std::uint64_t price_over = 0;
        std::uint64_t team_over = 0;
        for (std::uint32_t c : price_ens[r].final_snapshot().n_cit)
            if (c > 500) ++price_over;
        for (std::uint32_t c : team_ens[r].final_snapshot().n_cit)
            if (c > 500) ++team_over;
        if (price_over < team_over) ++thinner;
    }
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "pooled modal value %u, thinner tail in %d/100 pairs (need >=90)",
                  modal_value(pooled), thinner);
    report(4, "Price model tail", modal_zero && thinner >= 90, detail);
}

// --- criterion 5: alpha = 1.5 shifts the peak upward ------------------------

void criterion_alpha_peak(const TeamSizeVector& teams) {
    KernelSpec a10 = make_kernel(KernelMode::gen_price);
    a10.alpha = 1.0;
    KernelSpec a15 = make_kernel(KernelMode::gen_price);
    a15.alpha = 1.5;
    const std::vector<RunResult> ens10 = run_ensemble(full_config(100), teams, a10);
    const std::vector<RunResult> ens15 = run_ensemble(full_config(100), teams, a15);
    double mean10 = 0.0;
    double mean15 = 0.0;
    for (std::size_t r = 0; r < ens10.size(); ++r) {
        mean10 += modal_value(citation_histogram(ens10[r].final_snapshot()));
        mean15 += modal_value(citation_histogram(ens15[r].final_snapshot()));
    }
    mean10 /= static_cast<double>(ens10.size());
    mean15 /= static_cast<double>(ens15.size());
    char detail[96];
    std::snprintf(detail, sizeof detail,
                  "mean modal value %.2f (a=1.5) vs %.2f (a=1)", mean15, mean10);
    report(5, "generalized Price peak", mean15 >= mean10, detail);
}

// --- criterion 6: analytic direct-share oracle at reduced scale -------------

void criterion_direct_share_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = 500;
    const std::uint64_t total = 20000;
    const TeamSizeVector teams = make_teams(n);

    SimulationConfig cfg;
    cfg.n_papers = n;
    cfg.total_events = total;
    cfg.seed = 1;
    cfg.replicates = 100;
    cfg.checkpoints.clear();
    for (std::uint64_t e = 2000; e <= total; e += 2000)
        cfg.checkpoints.push_back({"p" + std::to_string(e), e});

    bool pass = true;
    std::string detail;
    for (const KernelMode mode : {KernelMode::price, KernelMode::team}) {
        const KernelSpec kernel = make_kernel(mode);
        double aggregate_direct = 0.0;
        for (int t : teams)
            aggregate_direct += mode == KernelMode::price
                                    ? 1.0
                                    : intrinsic_weight(t, kernel.transform);
        const std::vector<RunResult> ens = run_ensemble(cfg, teams, kernel);

        std::vector<double> totals;
        for (const RunResult& rr : ens)
            totals.push_back(static_cast<double>(sum32(rr.final_snapshot().n_direct)));
        const statcheck::MeanSe total_stats = statcheck::mean_se(totals);
        const double oracle = expected_direct_count(aggregate_direct, total);
        const bool total_ok = std::abs(total_stats.mean - oracle) <= 3.0 * total_stats.se;

        const std::size_t n_periods = ens[0].periods.size();
        std::vector<statcheck::MeanSe> share_stats;
        for (std::size_t p = 0; p < n_periods; ++p) {
            std::vector<double> shares;
            for (const RunResult& rr : ens)
                shares.push_back(static_cast<double>(rr.periods[p].direct) /
                                 static_cast<double>(rr.periods[p].events));
            share_stats.push_back(statcheck::mean_se(shares));
        }
        bool monotone = true;
        for (std::size_t p = 0; p + 1 < n_periods; ++p) {
            const double allowance =
                2.0 * std::sqrt(share_stats[p].se * share_stats[p].se +
                                share_stats[p + 1].se * share_stats[p + 1].se);
            if (share_stats[p + 1].mean > share_stats[p].mean + allowance)
                monotone = false;
        }
        pass = pass && total_ok && monotone;
        char buf[128];
        std::snprintf(buf, sizeof buf, "%s%s: |%.1f - %.1f| <= 3SE=%.1f%s",
                      detail.empty() ? "" : "; ", to_string(mode),
                      total_stats.mean, oracle, 3.0 * total_stats.se,
                      monotone ? "" : ", SHARES RISE");
        detail += buf;
    }
    const double dt = seconds_since(t0);
    pass = pass && dt < 10.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "; %.1fs (need <10s)", dt);
    report(6, "direct-share oracle", pass, detail + buf);
}

// --- criterion 7: attribution break-even near seven citations ---------------

void criterion_break_even() {
    const TeamSizeVector twos(6430, 2);
    const std::vector<RunResult> ens =
        run_ensemble(full_config(100), twos, make_kernel(KernelMode::team));

    std::map<std::uint32_t, std::pair<std::uint64_t, double>> by_count;
    for (const RunResult& rr : ens) {
        const Snapshot& fin = rr.final_snapshot();
        for (std::size_t i = 0; i < fin.n_cit.size(); ++i) {
            if (fin.n_cit[i] == 0) continue;
            auto& slot = by_count[fin.n_cit[i]];
            slot.first += 1;
            slot.second += static_cast<double>(fin.n_direct[i]) / fin.n_cit[i];
        }
    }
    const auto frac = [&](std::uint32_t c) {
        const auto& slot = by_count.at(c);
        return slot.second / static_cast<double>(slot.first);
    };
    const auto law = [](std::uint32_t c) {
        double s = 0.0;
        for (std::uint32_t n = 0; n < c; ++n) s += 1.0 / (2.0 + n);
        return s * 2.0 / c;
    };
    double max_dev = 0.0;
    for (std::uint32_t c = 2; c <= 10; ++c)
        max_dev = std::max(max_dev, std::abs(frac(c) - law(c)));

    int crossing = 0;
    for (std::uint32_t c = 7; c <= 9; ++c)
        if (frac(c) < 0.5) {
            crossing = static_cast<int>(c);
            break;
        }
    const bool pass =
        frac(6) > 0.5 && frac(9) < 0.5 && crossing != 0 && max_dev <= 0.02;
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "frac(6)=%.4f, frac(9)=%.4f, crosses 0.5 at c=%d, max |sim-law| "
                  "for c<=10 is %.4f (tol 0.02)",
                  frac(6), frac(9), crossing, max_dev);
    report(7, "break-even point", pass, detail);
}

// --- criterion 8: removing cumulative advantage narrows the distribution ----

void criterion_direct_only(const TeamSizeVector& teams,
                           const std::vector<RunResult>& team_ens) {
    const std::vector<RunResult> donly_ens = run_ensemble(
        full_config(100), teams, make_kernel(KernelMode::direct_only_team));

    double frac_lt10_donly = 0.0;
    double frac_lt10_team = 0.0;
    int narrower = 0;
    for (std::size_t r = 0; r < donly_ens.size(); ++r) {
        std::uint64_t lt10_d = 0;
        std::uint64_t lt10_t = 0;
        std::uint32_t max_d = 0;
        std::uint32_t max_t = 0;
        for (std::uint32_t c : donly_ens[r].final_snapshot().n_cit) {
            if (c < 10) ++lt10_d;
            max_d = std::max(max_d, c);
        }
        for (std::uint32_t c : team_ens[r].final_snapshot().n_cit) {
            if (c < 10) ++lt10_t;
            max_t = std::max(max_t, c);
        }
        frac_lt10_donly += static_cast<double>(lt10_d) / 6430.0;
        frac_lt10_team += static_cast<double>(lt10_t) / 6430.0;
        if (max_d < max_t) ++narrower;
    }
    frac_lt10_donly /= static_cast<double>(donly_ens.size());
    frac_lt10_team /= static_cast<double>(donly_ens.size());
    const bool pass = frac_lt10_donly < 0.5 * frac_lt10_team && narrower >= 90;
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "frac<10: %.4f direct-only vs %.4f team (need < half), narrower "
                  "max in %d/100 pairs (need >=90)",
                  frac_lt10_donly, frac_lt10_team, narrower);
    report(8, "direct-only ablation", pass, detail);
}

// --- criterion 9: sampler equals its oracle and is proportional -------------

void criterion_sampler() {
    Rng rng = make_stream(1, 9);
    int mismatches = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t n = 1 + rng() % 100;
        std::vector<double> w(n);
        bool any = false;
        for (double& x : w) {
            x = uniform01(rng) < 0.2 ? 0.0 : uniform01(rng) * 10.0;
            any = any || x > 0.0;
        }
        if (!any) w[rng() % n] = 1.0;
        const double u = uniform01(rng);
        if (WeightIndex::build(w).sample(u) != oracle_sample(w, u)) ++mismatches;
    }

    const std::vector<double> w = {0.5, 1.0, 2.0, 3.0, 0.25,
                                   4.0, 2.5, 1.5, 5.0, 0.75};
    double total = 0.0;
    for (double x : w) total += x;
    const WeightIndex ix = WeightIndex::build(w);
    const int draws = 1000000;
    std::vector<std::uint64_t> counts(w.size(), 0);
    for (int t = 0; t < draws; ++t) ++counts[ix.sample(uniform01(rng))];
    double worst_sigma = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double p = w[i] / total;
        const double sd = std::sqrt(draws * p * (1.0 - p));
        worst_sigma =
            std::max(worst_sigma, std::abs(counts[i] - draws * p) / sd);
    }
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "oracle mismatches %d/10^4 (need 0), worst frequency deviation "
                  "%.2f sigma (need <4)",
                  mismatches, worst_sigma);
    report(9, "sampler oracle", mismatches == 0 && worst_sigma < 4.0, detail);
}

// --- criterion 10: team kernel on unit teams is bitwise the Price kernel ----

void criterion_mode_equivalence() {
    const TeamSizeVector ones(6430, 1);
    bool pass = true;
    for (int r = 0; r < 3; ++r) {
        const RunResult a = run(full_config(), ones, make_kernel(KernelMode::team), r);
        const RunResult b = run(full_config(), ones, make_kernel(KernelMode::price), r);
        pass = pass && a == b;
    }
    report(10, "mode equivalence", pass,
           pass ? "3 replicates bit-identical" : "replicate results diverged");
}

// --- criterion 11: grid fit recovers known parameters -----------------------

void criterion_fit_recovery() {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = 1000;
    const std::uint64_t events = 40000;
    const TeamSizeVector teams = make_teams(n);

    const auto make_cfg = [&](std::uint64_t seed) {
        SimulationConfig cfg;
        cfg.n_papers = n;
        cfg.total_events = events;
        cfg.checkpoints.clear();
        cfg.seed = seed;
        cfg.replicates = 10;
        return cfg;
    };
    const auto pooled_target = [&](const KernelSpec& k, std::uint64_t seed) {
        Histogram pooled;
        for (const RunResult& rr : run_ensemble(make_cfg(seed), teams, k))
            for (const auto& [value, count] :
                 citation_histogram(rr.final_snapshot()))
                pooled[value] += count;
        return log_binned(pooled, BinningScheme{});
    };

    KernelSpec alpha_truth = make_kernel(KernelMode::gen_price);
    alpha_truth.alpha = 1.5;
    const BinnedDistribution alpha_target = pooled_target(alpha_truth, 777);
    ParamGrid alpha_grid;
    alpha_grid.axes = {{"alpha", 0.5, 3.0, 0.1}};
    const FitResult alpha_fit =
        grid_fit(alpha_grid, alpha_truth, alpha_target, make_cfg(1), teams);
    const double alpha_hat = alpha_fit.best_params.at("alpha");

    KernelSpec gamma_truth = make_kernel(KernelMode::team_general);
    gamma_truth.transform.kind = TransformKind::power;
    gamma_truth.transform.gamma = 0.3;
    gamma_truth.transform.c = 1.0;
    const BinnedDistribution gamma_target = pooled_target(gamma_truth, 778);
    ParamGrid gamma_grid;
    gamma_grid.axes = {{"gamma", 0.05, 0.75, 0.05}, {"c", 0.6, 1.4, 0.4}};
    const FitResult gamma_fit =
        grid_fit(gamma_grid, gamma_truth, gamma_target, make_cfg(1), teams);
    const double gamma_hat = gamma_fit.best_params.at("gamma");

    const double dt = seconds_since(t0);
    const bool pass = std::abs(alpha_hat - 1.5) <= 0.25 &&
                      std::abs(gamma_hat - 0.3) <= 0.15 && dt < 300.0;
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "alpha 1.5 -> %.2f (tol 0.25), gamma 0.3 -> %.2f (tol 0.15), "
                  "c -> %.2f, %.0fs (need <300s)",
                  alpha_hat, gamma_hat, gamma_fit.best_params.at("c"), dt);
    report(11, "fit self-recovery", pass, detail);
}

// --- criterion 12: geometric mean rises with team size ----------------------

void criterion_gm_trend(const TeamSizeVector& teams,
                        const std::vector<RunResult>& team_ens) {
    const int cap = 30;
    std::map<double, std::pair<std::uint64_t, double>> by_bucket;  // lo -> (n, sum)
    const std::size_t reps = 30;
    for (std::size_t r = 0; r < reps; ++r) {
        for (const TeamGmBucket& b :
             geometric_mean_by_team_size(team_ens[r].final_snapshot(), teams)) {
            if (b.lo > cap) continue;  // weights are flat past the cap by design
            auto& slot = by_bucket[b.lo];
            slot.first += 1;
            slot.second += b.gm;
        }
    }
    std::vector<double> order;
    std::vector<double> gms;
    for (const auto& [lo, slot] : by_bucket) {
        order.push_back(static_cast<double>(order.size()));
        gms.push_back(slot.second / static_cast<double>(slot.first));
    }
    const double rho = statcheck::spearman(order, gms);
    char detail[96];
    std::snprintf(detail, sizeof detail,
                  "Spearman rho %.3f over %zu team-size buckets (need >0.9)", rho,
                  order.size());
    report(12, "geometric-mean trend", rho > 0.9, detail);
}

// --- criterion 13: binning mass conservation and distance scale -------------

void criterion_binning(const std::vector<RunResult>& team_ens) {
    const BinningScheme scheme;
    std::vector<BinnedDistribution> dists;
    dists.push_back(
        log_binned(citation_histogram(team_ens[0].final_snapshot()), scheme));
    dists.push_back(log_binned({{0, 10}}, scheme));
    dists.push_back(log_binned({{0, 5}, {1, 5}}, scheme));
    dists.push_back(log_binned({{0, 40}, {7, 3}, {2042, 1}}, scheme));

    bool pass = true;
    double worst_mass = 0.0;
    for (const BinnedDistribution& d : dists) {
        double mass = 0.0;
        for (const Bin& b : d.bins) mass += b.density * (b.hi - b.lo);
        worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
        pass = pass && std::abs(mass - 1.0) <= 1e-9;
    }

    const DistanceReport self = distance(dists[0], dists[0]);
    pass = pass && self.decades == 0.0;

    BinnedDistribution scaled = dists[0];
    for (Bin& b : scaled.bins) b.density *= 10.0;
    const double shifted = distance(dists[0], scaled).decades;
    pass = pass && std::abs(shifted - 1.0) <= 1e-12;

    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "worst |mass-1| %.2e, self distance %g, x10 shift %.15f",
                  worst_mass, self.decades, shifted);
    report(13, "binning invariants", pass, detail);
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    const TeamSizeVector teams = make_teams(6430);

    criterion_conservation(teams);
    criterion_uniform_poisson(teams);
    criterion_pure_ca(teams);

    const std::vector<RunResult> price_ens =
        run_ensemble(full_config(100), teams, make_kernel(KernelMode::price));
    const std::vector<RunResult> team_ens =
        run_ensemble(full_config(100), teams, make_kernel(KernelMode::team));

    criterion_price_tail(price_ens, team_ens);
    criterion_alpha_peak(teams);
    criterion_direct_share_oracle();
    criterion_break_even();
    criterion_direct_only(teams, team_ens);
    criterion_sampler();
    criterion_mode_equivalence();
    criterion_fit_recovery();
    criterion_gm_trend(teams, team_ens);
    criterion_binning(team_ens);

    std::printf("%d/13 criteria passed in %.0fs\n", 13 - g_failures,
                seconds_since(t0));
    return g_failures == 0 ? 0 : 1;
}
