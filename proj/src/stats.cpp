#include "citesim/stats.hpp"

#include <algorithm>
#include <cmath>

namespace citesim {

void BinningScheme::validate() const {
    if (integer_bins_up_to < 1)
        throw parameter_error("binning: integer_bins_up_to must be >= 1");
    if (!std::isfinite(log_width) || log_width <= 0.0)
        throw parameter_error("binning: log_width must be > 0");
}

int bucket_index(double x, const BinningScheme& s) {
    s.validate();
    if (!(x >= 0.5))
        throw parameter_error("bucket_index: x must be >= 0.5");
    const double split = s.integer_bins_up_to + 0.5;
    if (x < split) return static_cast<int>(std::lround(x));
    const int j = static_cast<int>(std::floor(std::log10(x / split) / s.log_width));
    return s.integer_bins_up_to + 1 + j;
}

std::pair<double, double> bucket_bounds(int index, const BinningScheme& s) {
    if (index < 1)
        throw parameter_error("bucket_bounds: index must be >= 1");
    if (index <= s.integer_bins_up_to)
        return {index - 0.5, index + 0.5};
    const double split = s.integer_bins_up_to + 0.5;
    const int j = index - s.integer_bins_up_to - 1;
    return {split * std::pow(10.0, j * s.log_width),
            split * std::pow(10.0, (j + 1) * s.log_width)};
}

Histogram citation_histogram(const Snapshot& snapshot) {
    Histogram h;
    for (std::uint32_t c : snapshot.n_cit) ++h[c];
    return h;
}

BinnedDistribution log_binned(const Histogram& h, const BinningScheme& scheme) {
    scheme.validate();
    BinnedDistribution dist;
    dist.scheme = scheme;
    if (h.empty()) return dist;

    std::map<int, double> counts;  // bucket index -> count
    std::uint64_t n_total = 0;
    for (const auto& [value, count] : h) {
        const double x = static_cast<double>(value) + 1.0;  // shifted axis
        counts[bucket_index(x, scheme)] += static_cast<double>(count);
        n_total += count;
    }
    dist.n_total = n_total;

    const int first = counts.begin()->first;
    const int last = counts.rbegin()->first;
    for (int idx = first; idx <= last; ++idx) {
        const auto [lo, hi] = bucket_bounds(idx, scheme);
        Bin bin;
        bin.lo = lo;
        bin.hi = hi;
        bin.center = idx <= scheme.integer_bins_up_to
                         ? static_cast<double>(idx)
                         : std::sqrt(lo * hi);
        const auto it = counts.find(idx);
        bin.count = it == counts.end() ? 0.0 : it->second;
        bin.density = bin.count / ((hi - lo) * static_cast<double>(n_total));
        dist.bins.push_back(bin);
    }
    return dist;
}

namespace {
bool bounds_close(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}
}  // namespace

DistanceReport distance(const BinnedDistribution& a, const BinnedDistribution& b) {
    DistanceReport report;
    double sum_sq = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.bins.size() && j < b.bins.size()) {
        const Bin& ba = a.bins[i];
        const Bin& bb = b.bins[j];
        if (bounds_close(ba.lo, bb.lo)) {
            if (!bounds_close(ba.hi, bb.hi))
                throw parameter_error("distance: binning schemes differ");
            if (ba.density > 0.0 && bb.density > 0.0) {
                const double diff = std::log10(ba.density) - std::log10(bb.density);
                sum_sq += diff * diff;
                ++report.common_bins;
            } else if (ba.density > 0.0 || bb.density > 0.0) {
                ++report.excluded_bins;  // mass on one side only
            }
            ++i;
            ++j;
        } else if (ba.hi <= bb.lo + 1e-12 * std::max(1.0, bb.lo)) {
            if (ba.density > 0.0) ++report.excluded_bins;  // bin only in a
            ++i;
        } else if (bb.hi <= ba.lo + 1e-12 * std::max(1.0, ba.lo)) {
            if (bb.density > 0.0) ++report.excluded_bins;  // bin only in b
            ++j;
        } else {
            throw parameter_error("distance: binning schemes differ");
        }
    }
    for (; i < a.bins.size(); ++i)
        if (a.bins[i].density > 0.0) ++report.excluded_bins;
    for (; j < b.bins.size(); ++j)
        if (b.bins[j].density > 0.0) ++report.excluded_bins;
    if (report.common_bins == 0)
        throw analysis_error(
            "distance: no bin has positive density in both distributions");
    report.decades = std::sqrt(sum_sq / report.common_bins);
    return report;
}

std::vector<PeriodShare> direct_share_by_period(const RunResult& rr) {
    if (rr.periods.empty())
        throw analysis_error("direct share: run has no periods");
    std::vector<PeriodShare> shares;
    shares.reserve(rr.periods.size());
    for (const PeriodTally& p : rr.periods) {
        PeriodShare s;
        s.label = p.label;
        s.events = p.events;
        s.direct = p.direct;
        s.indirect = p.indirect;
        if (p.events > 0)
            s.share = static_cast<double>(p.direct) / static_cast<double>(p.events);
        shares.push_back(std::move(s));
    }
    return shares;
}

std::vector<FractionBucket> direct_fraction_by_final_count(
    const Snapshot& snapshot, const BinningScheme& scheme) {
    scheme.validate();
    std::map<int, std::pair<std::uint64_t, double>> acc;  // bucket -> (n, sum frac)
    for (std::size_t i = 0; i < snapshot.n_cit.size(); ++i) {
        const std::uint32_t c = snapshot.n_cit[i];
        if (c == 0) continue;
        const double frac = static_cast<double>(snapshot.n_direct[i]) /
                            static_cast<double>(c);
        auto& slot = acc[bucket_index(static_cast<double>(c), scheme)];
        slot.first += 1;
        slot.second += frac;
    }
    std::vector<FractionBucket> out;
    out.reserve(acc.size());
    for (const auto& [idx, slot] : acc) {
        const auto [lo, hi] = bucket_bounds(idx, scheme);
        out.push_back({lo, hi, slot.first,
                       slot.second / static_cast<double>(slot.first)});
    }
    return out;
}

std::vector<TeamGmBucket> geometric_mean_by_team_size(
    const Snapshot& snapshot, const TeamSizeVector& teams,
    const BinningScheme& scheme, bool shifted) {
    scheme.validate();
    if (teams.size() != snapshot.n_cit.size())
        throw parameter_error(
            "geometric mean: team vector and snapshot sizes differ");
    std::map<int, std::pair<std::uint64_t, double>> acc;  // bucket -> (n, sum ln)
    for (std::size_t i = 0; i < teams.size(); ++i) {
        const std::uint32_t c = snapshot.n_cit[i];
        if (!shifted && c == 0) continue;
        const double ln = shifted ? std::log(static_cast<double>(c) + 1.0)
                                  : std::log(static_cast<double>(c));
        auto& slot = acc[bucket_index(static_cast<double>(teams[i]), scheme)];
        slot.first += 1;
        slot.second += ln;
    }
    std::vector<TeamGmBucket> out;
    out.reserve(acc.size());
    for (const auto& [idx, slot] : acc) {
        const auto [lo, hi] = bucket_bounds(idx, scheme);
        const double mean_ln = slot.second / static_cast<double>(slot.first);
        const double gm = shifted ? std::exp(mean_ln) - 1.0 : std::exp(mean_ln);
        out.push_back({lo, hi, slot.first, gm});
    }
    return out;
}

}  // namespace citesim
