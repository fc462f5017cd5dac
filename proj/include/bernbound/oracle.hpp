#pragma once

#include <cstdint>
#include <vector>

#include "bernbound/ensembles.hpp"

namespace bernbound {

/// Hard cap on enumerated outcomes (2^24), keeping exact runs desk-scale.
inline constexpr std::int64_t kEnumerationCap = std::int64_t{1} << 24;
/// Atoms closer than this are the same outcome up to rounding and get merged.
inline constexpr double kAtomMergeTolerance = 1e-14;

/// Full distribution of a statistic: atoms sorted ascending by value, values
/// within kAtomMergeTolerance merged with summed mass.
struct ExactDistribution {
    std::vector<Atom> atoms;

    double total_mass() const;
    double mean() const;
    /// Largest |value| over the support (0 for a point mass at 0).
    double support_radius() const;
    /// Two-sided tail P(|S| >= t).
    double tail_probability(double t) const;
    /// sum mass * exp(lambda * value), accumulated in linear space.
    double mgf_value(double lambda) const;
    /// log of the same sum, accumulated with log-sum-exp.
    double log_mgf(double lambda) const;
};

/// Distribution of sum (X_i - p_i) log p_i by exhaustive enumeration.
/// Requires n <= 24.
ExactDistribution exact_distribution(const BernoulliEnsemble& ensemble);

/// Distribution of the grouped statistic sum_i sum_j (X_j - p_j) log pbar_i.
/// Within a group only the success count matters, so each group reduces to a
/// Poisson-binomial over counts before groups are convolved together.
ExactDistribution exact_grouped_distribution(const GroupedEnsemble& ensemble);

/// Distribution of sum_i sum_k (X_ik - p_ik) log p_ik over all K^n category
/// assignments. Requires K^n <= 2^24.
ExactDistribution exact_multinoulli_distribution(const MultinoulliEnsemble& ensemble);

struct LogScaled {
    double value = 1.0;
    double log_value = 0.0;
};

/// prod_i G(p_i, lambda), accumulated in log space; works for any n.
LogScaled exact_mgf_product(const BernoulliEnsemble& ensemble, double lambda);

}  // namespace bernbound
