#include "citesim/kernels.hpp"

#include <cmath>

namespace citesim {

const char* to_string(KernelMode mode) {
    switch (mode) {
        case KernelMode::uniform: return "uniform";
        case KernelMode::pure_ca: return "pure_ca";
        case KernelMode::price: return "price";
        case KernelMode::gen_price: return "gen_price";
        case KernelMode::team: return "team";
        case KernelMode::team_general: return "team_general";
        case KernelMode::direct_only_team: return "direct_only_team";
        case KernelMode::powerlaw_attract: return "powerlaw_attract";
        case KernelMode::influence: return "influence";
    }
    return "?";
}

KernelMode kernel_mode_from_string(const std::string& name) {
    // Accept hyphenated spellings from the command line as well.
    std::string s = name;
    for (char& ch : s)
        if (ch == '-') ch = '_';
    if (s == "uniform") return KernelMode::uniform;
    if (s == "pure_ca") return KernelMode::pure_ca;
    if (s == "price") return KernelMode::price;
    if (s == "gen_price") return KernelMode::gen_price;
    if (s == "team") return KernelMode::team;
    if (s == "team_general") return KernelMode::team_general;
    if (s == "direct_only_team") return KernelMode::direct_only_team;
    if (s == "powerlaw_attract") return KernelMode::powerlaw_attract;
    if (s == "influence") return KernelMode::influence;
    throw parameter_error("unknown kernel mode: " + name);
}

double analytic_mean_g(const InfluenceSpec& spec) {
    if (spec.dist.kind == InfluenceDistKind::constant)
        return spec.g(spec.dist.value);
    const DiscretePowerLaw dist(spec.dist.exponent, spec.dist.max_value);
    double m = 0.0;
    for (int k = 1; k <= dist.max_value(); ++k) m += spec.g(k) * dist.pmf(k);
    return m;
}

void resolve_influence_mean(KernelSpec& spec) {
    if (spec.influence && spec.influence->mean_g == 0.0)
        spec.influence->mean_g = analytic_mean_g(*spec.influence);
}

void KernelSpec::validate() const {
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw parameter_error("kernel: alpha must be finite and >= 0");
    if (!std::isfinite(epsilon) || epsilon < 0.0)
        throw parameter_error("kernel: epsilon must be finite and >= 0");
    if (!std::isfinite(beta) || beta <= 0.0)
        throw parameter_error("kernel: beta must be finite and > 0");
    transform.validate();
    if (!std::isfinite(attract_exponent) || attract_exponent <= 1.0)
        throw parameter_error("kernel: attract_exponent must be > 1");
    if (mode == KernelMode::influence) {
        if (!influence)
            throw parameter_error("kernel: influence mode needs an influence spec");
        const InfluenceSpec& inf = *influence;
        if (!std::isfinite(inf.g_exponent))
            throw parameter_error("kernel: influence g exponent must be finite");
        if (inf.dist.kind == InfluenceDistKind::constant) {
            if (!std::isfinite(inf.dist.value) || inf.dist.value <= 0.0)
                throw parameter_error("kernel: influence constant must be > 0");
        } else {
            if (!std::isfinite(inf.dist.exponent) || inf.dist.exponent <= 1.0)
                throw parameter_error("kernel: influence exponent must be > 1");
            if (inf.dist.max_value < 1)
                throw parameter_error("kernel: influence max_value must be >= 1");
        }
        if (!(inf.mean_g > 0.0))
            throw parameter_error("kernel: influence mean_g must be > 0");
        const double exact = analytic_mean_g(inf);
        if (std::abs(inf.mean_g - exact) > 1e-6 * std::max(1.0, std::abs(exact)))
            throw parameter_error("kernel: influence mean_g does not match the "
                                  "analytic mean of g");
    }
}

CiteOutcome on_cited(PaperState& p, const KernelSpec& k, Rng& rng,
                     const DiscretePowerLaw* influence_dist) {
    const double dw = direct_weight(p, k);
    const double iw = indirect_weight(p, k);

    bool direct;
    if (iw <= 0.0)
        direct = true;
    else if (dw <= 0.0)
        direct = false;
    else
        direct = uniform01(rng) < dw / (dw + iw);

    p.n_cit += 1;
    if (direct) p.n_direct += 1;

    double delta;
    if (k.mode == KernelMode::influence) {
        const InfluenceSpec& inf = *k.influence;
        double i_value;
        if (inf.dist.kind == InfluenceDistKind::constant) {
            i_value = inf.dist.value;
        } else if (influence_dist != nullptr) {
            i_value = influence_dist->sample(rng);
        } else {
            i_value = DiscretePowerLaw(inf.dist.exponent, inf.dist.max_value)
                          .sample(rng);
        }
        delta = inf.g(i_value) / inf.mean_g;
        p.s_weighted += delta;
    } else {
        const double n_before = static_cast<double>(p.n_cit - 1);
        if (k.mode == KernelMode::uniform ||
            k.mode == KernelMode::direct_only_team) {
            delta = 0.0;
        } else if (k.beta == 1.0) {
            delta = 1.0;
        } else {
            delta = std::pow(n_before + 1.0, k.beta) - std::pow(n_before, k.beta);
        }
        p.s_weighted += 1.0;
    }
    return {delta, direct};
}

}  // namespace citesim
