#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "citesim/population.hpp"
#include "citesim/random.hpp"

namespace citesim {

// Citation-probability family. Every kernel gives each paper a weight that
// splits into a direct component (independent of citations received) and an
// indirect, cumulative-advantage component; a paper is cited with
// probability proportional to the sum.
enum class KernelMode {
    uniform,           // direct 1, no cumulative advantage
    pure_ca,           // direct epsilon (seed only), indirect n_cit
    price,             // direct 1, indirect n_cit
    gen_price,         // direct alpha, indirect n_cit^beta
    team,              // direct = capped team size, indirect n_cit
    team_general,      // direct = c * capped_team^gamma, indirect n_cit^beta
    direct_only_team,  // direct = capped team size, no cumulative advantage
    powerlaw_attract,  // direct drawn once per paper from a power law
    influence,         // direct = transformed team size, indirect weighted by
                       // the influence of each citing item
};

const char* to_string(KernelMode mode);
KernelMode kernel_mode_from_string(const std::string& name);

enum class GKind { identity, power };
enum class InfluenceDistKind { constant, powerlaw };

// Distribution of the influence I of an (anonymous, external) citing item.
struct InfluenceDist {
    InfluenceDistKind kind = InfluenceDistKind::powerlaw;
    double value = 1.0;     // constant kind
    double exponent = 2.5;  // powerlaw kind
    int max_value = 10000;  // powerlaw truncation
};

// Influence weighting: each received citation contributes g(I) / <g(I)> to a
// paper's indirect weight, so an average-influence citation contributes 1.
// mean_g is the analytic mean of g under the configured distribution.
struct InfluenceSpec {
    GKind g_kind = GKind::identity;
    double g_exponent = 1.0;
    InfluenceDist dist;
    double mean_g = 0.0;

    double g(double influence) const {
        return g_kind == GKind::identity ? influence
                                         : std::pow(influence, g_exponent);
    }
};

// Exact mean of g under spec.dist, by direct summation over the support.
double analytic_mean_g(const InfluenceSpec& spec);

struct KernelSpec {
    KernelMode mode = KernelMode::team;
    double alpha = 1.0;    // gen_price direct weight
    double epsilon = 0.01; // pure_ca direct seed
    double beta = 1.0;     // cumulative-advantage exponent
    DirectTransform transform;     // team-based modes
    double attract_exponent = 2.5; // powerlaw_attract
    std::optional<InfluenceSpec> influence;

    // Mode-irrelevant parameters are ignored by the weight functions but must
    // still be finite and in range.
    void validate() const;

    bool uses_team_weights() const {
        return mode == KernelMode::team || mode == KernelMode::team_general ||
               mode == KernelMode::direct_only_team ||
               mode == KernelMode::influence;
    }
};

// Fills influence.mean_g from the analytic mean when it was left unset.
void resolve_influence_mean(KernelSpec& spec);

struct PaperState {
    std::uint32_t n_cit = 0;
    std::uint32_t n_direct = 0;
    double s_weighted = 0.0;  // sum of g(I)/<g>; equals n_cit outside influence mode
    double d = 0.0;           // static direct weight (team / attractiveness modes)
};

inline double direct_weight(const PaperState& p, const KernelSpec& k) {
    switch (k.mode) {
        case KernelMode::uniform:
        case KernelMode::price:
            return 1.0;
        case KernelMode::pure_ca:
            return k.epsilon;
        case KernelMode::gen_price:
            return k.alpha;
        default:
            return p.d;
    }
}

inline double indirect_weight(const PaperState& p, const KernelSpec& k) {
    switch (k.mode) {
        case KernelMode::uniform:
        case KernelMode::direct_only_team:
            return 0.0;
        case KernelMode::influence:
            return p.s_weighted;
        default:
            if (k.beta == 1.0) return static_cast<double>(p.n_cit);
            return std::pow(static_cast<double>(p.n_cit), k.beta);
    }
}

inline double total_weight(const PaperState& p, const KernelSpec& k) {
    return direct_weight(p, k) + indirect_weight(p, k);
}

struct CiteOutcome {
    double delta_total_weight = 0.0;
    bool was_direct = false;
};

// Applies one received citation to p. The direct/indirect attribution is a
// Bernoulli draw on the pre-event weight split; no draw is consumed when one
// component is zero. For powerlaw influence kernels, pass the prepared
// distribution to avoid rebuilding its table per event (a null table is
// rebuilt on the fly).
CiteOutcome on_cited(PaperState& p, const KernelSpec& k, Rng& rng,
                     const DiscretePowerLaw* influence_dist = nullptr);

}  // namespace citesim
