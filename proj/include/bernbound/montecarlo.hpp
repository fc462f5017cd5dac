#pragma once

#include <cstdint>
#include <vector>

#include "bernbound/ensembles.hpp"

namespace bernbound {

/// Exact Clopper-Pearson binomial confidence interval. Conservative by
/// construction, which is what tail probabilities near 0 need.
struct BinomialInterval {
    double low = 0.0;
    double high = 1.0;
};

BinomialInterval clopper_pearson(std::uint64_t hits, std::uint64_t total, double confidence);

/// Empirical tail frequency with its exact binomial interval and the seed
/// that produced it. Rerunning with the same (ensemble, t, replicates, seed)
/// reproduces `hits` bit-exactly for any worker count.
struct MonteCarloEstimate {
    std::uint64_t hits = 0;
    std::uint64_t replicates = 0;
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    double confidence = 0.99;
    std::uint64_t seed = 0;
};

/// Empirical mean of exp(lambda * S) with its standard error.
struct MgfEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t replicates = 0;
    std::uint64_t seed = 0;
};

/// Draws replicate statistics as pure functions of (seed, replicate index,
/// variable index) through the Philox counter scheme: no sequential RNG
/// state, so any parallel split of the replicate range gives identical
/// streams.
class StatisticSampler {
public:
    explicit StatisticSampler(const EnsembleVariant& ensemble);

    double sample(std::uint64_t seed, std::uint64_t replicate) const;

private:
    struct BernoulliTerm {
        std::uint64_t variable = 0;
        double prob = 0.0;
        double weight = 0.0;  // log p (or log pbar for grouped members)
        double offset = 0.0;  // -p * weight, the centering term
    };
    struct CategoricalRow {
        std::uint64_t variable = 0;
        std::vector<double> cumulative;
        std::vector<double> values;
    };

    std::vector<BernoulliTerm> terms_;
    std::vector<CategoricalRow> rows_;
};

/// One-shot draw of the statistic for replicate `replicate`.
double sample_statistic(const EnsembleVariant& ensemble, std::uint64_t seed, std::uint64_t replicate);

MonteCarloEstimate simulate_tail(const EnsembleVariant& ensemble, double t, std::uint64_t replicates,
                                 std::uint64_t seed, double confidence = 0.99, unsigned workers = 1);

/// Sample mean of exp(lambda * S). Finite variance is only guaranteed for
/// |lambda| < 1 (the envelope regime); outside it the estimate is still
/// computed but its standard error may be meaningless.
MgfEstimate simulate_mgf(const BernoulliEnsemble& ensemble, double lambda, std::uint64_t replicates,
                         std::uint64_t seed, unsigned workers = 1);

}  // namespace bernbound
