#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "citesim/errors.hpp"

namespace citesim {

// Fenwick-tree index over nonnegative per-item weights. Supports O(log n)
// single-item weight updates and O(log n) sampling of an index with
// probability weight[i] / total.
//
// sample(u) returns the smallest i such that prefix_sum(0..i) > u * total,
// with the prefix inclusive of item i. The strict ">" sends boundary hits to
// the next bucket, so any linear scan applying the same rule picks the same
// index; zero-weight items are never selected.
//
// total is maintained incrementally and the whole tree is rebuilt from the
// stored weights every rebuild_period updates, which bounds accumulation
// drift to well below 1e-9 relative.
class WeightIndex {
  public:
    static WeightIndex build(std::vector<double> weights) {
        if (weights.empty())
            throw parameter_error("weight index: no items");
        double total = 0.0;
        for (double w : weights) {
            if (!(w >= 0.0) || !std::isfinite(w))
                throw parameter_error("weight index: weights must be finite and >= 0");
            total += w;
        }
        if (total <= 0.0)
            throw parameter_error("weight index: all weights are zero");
        WeightIndex ix;
        ix.weights_ = std::move(weights);
        ix.init_tree(total);
        return ix;
    }

    std::size_t size() const { return weights_.size(); }
    double total() const { return total_; }
    double weight(std::size_t i) const { return weights_[i]; }

    std::size_t sample(double u) const {
        if (total_ <= 0.0)
            throw analysis_error("weight index: empty support");
        const std::size_t n = weights_.size();
        double rem = u * total_;
        std::size_t pos = 0;  // 1-based count of items whose prefix sum is <= target
        for (std::size_t bm = mask_; bm != 0; bm >>= 1) {
            const std::size_t next = pos + bm;
            if (next <= n && tree_[next] <= rem) {
                pos = next;
                rem -= tree_[next];
            }
        }
        if (pos >= n) {
            // u * total reached past every prefix (rounding near u -> 1);
            // clamp to the last item with positive weight.
            pos = n;
            while (pos > 0 && weights_[pos - 1] <= 0.0) --pos;
            return pos - 1;
        }
        return pos;
    }

    void update(std::size_t i, double new_weight) {
        if (i >= weights_.size())
            throw parameter_error("weight index: index out of range");
        if (!(new_weight >= 0.0) || !std::isfinite(new_weight))
            throw parameter_error("weight index: weight must be finite and >= 0");
        const double delta = new_weight - weights_[i];
        weights_[i] = new_weight;
        total_ += delta;
        for (std::size_t j = i + 1; j <= weights_.size(); j += j & (~j + 1))
            tree_[j] += delta;
        if (++updates_since_rebuild_ >= rebuild_period_) {
            double total = 0.0;
            for (double w : weights_) total += w;
            init_tree(total);
        }
    }

    void set_rebuild_period(std::uint64_t period) {
        rebuild_period_ = period > 0 ? period : 1;
    }

  private:
    WeightIndex() = default;

    void init_tree(double total) {
        const std::size_t n = weights_.size();
        total_ = total;
        updates_since_rebuild_ = 0;
        tree_.assign(n + 1, 0.0);
        for (std::size_t i = 1; i <= n; ++i) {
            tree_[i] += weights_[i - 1];
            const std::size_t parent = i + (i & (~i + 1));
            if (parent <= n) tree_[parent] += tree_[i];
        }
        mask_ = 1;
        while ((mask_ << 1) <= n) mask_ <<= 1;
    }

    std::vector<double> tree_;     // 1-based Fenwick array of range sums
    std::vector<double> weights_;  // current item weights
    double total_ = 0.0;
    std::size_t mask_ = 0;
    std::uint64_t updates_since_rebuild_ = 0;
    std::uint64_t rebuild_period_ = 1ULL << 20;
};

// Linear-scan reference sampler with the identical ">" tie rule. Exists for
// equivalence testing against the tree; do not use in hot paths.
inline std::size_t oracle_sample(const std::vector<double>& weights, double u) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0)
        throw analysis_error("oracle sample: empty support");
    const double target = u * total;
    double cum = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) last_positive = i;
        cum += weights[i];
        if (cum > target) return i;
    }
    return last_positive;
}

}  // namespace citesim
