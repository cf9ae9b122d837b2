#include "citesim/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace citesim {

long long sample_poisson(Rng& rng, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw parameter_error("poisson mean must be finite and >= 0");
    if (lambda == 0.0) return 0;

    // Split into chunks of mean <= 32 and sum; Poisson is additive.
    const int chunks = static_cast<int>(lambda / 32.0) + 1;
    const double mu = lambda / chunks;
    const double p0 = std::exp(-mu);
    long long total = 0;
    for (int c = 0; c < chunks; ++c) {
        const double u = uniform01(rng);
        double pmf = p0;
        double cdf = p0;
        long long k = 0;
        while (u >= cdf) {
            ++k;
            pmf *= mu / static_cast<double>(k);
            cdf += pmf;
            if (pmf == 0.0) break;  // exhausted double precision far in the tail
        }
        total += k;
    }
    return total;
}

DiscretePowerLaw::DiscretePowerLaw(double exponent, int max_value)
    : exponent_(exponent), max_value_(max_value) {
    if (!std::isfinite(exponent) || exponent <= 0.0)
        throw parameter_error("power-law exponent must be finite and > 0");
    if (max_value < 1)
        throw parameter_error("power-law max_value must be >= 1");
    cdf_.resize(static_cast<std::size_t>(max_value));
    double sum = 0.0;
    for (int k = 1; k <= max_value; ++k) {
        sum += std::pow(static_cast<double>(k), -exponent);
        cdf_[static_cast<std::size_t>(k - 1)] = sum;
    }
    for (double& c : cdf_) c /= sum;
    cdf_.back() = 1.0;
}

int DiscretePowerLaw::sample(Rng& rng) const {
    const double u = uniform01(rng);
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<int>(it - cdf_.begin()) + 1;
}

double DiscretePowerLaw::pmf(int k) const {
    if (k < 1 || k > max_value_) return 0.0;
    const std::size_t i = static_cast<std::size_t>(k - 1);
    return k == 1 ? cdf_[0] : cdf_[i] - cdf_[i - 1];
}

double DiscretePowerLaw::mean() const {
    double m = 0.0;
    for (int k = 1; k <= max_value_; ++k) m += k * pmf(k);
    return m;
}

}  // namespace citesim
