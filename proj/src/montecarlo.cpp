#include "bernbound/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <thread>
#include <variant>

#include <boost/math/special_functions/beta.hpp>

#include "bernbound/numeric.hpp"
#include "bernbound/philox.hpp"

namespace bernbound {

BinomialInterval clopper_pearson(std::uint64_t hits, std::uint64_t total, double confidence) {
    if (total == 0) {
        throw std::invalid_argument("clopper_pearson requires at least one trial");
    }
    if (hits > total) {
        throw std::invalid_argument("clopper_pearson requires hits <= total");
    }
    if (!(confidence > 0.0) || !(confidence < 1.0)) {
        throw std::invalid_argument("confidence must lie in (0, 1)");
    }
    const double alpha = 1.0 - confidence;
    const double k = static_cast<double>(hits);
    const double n = static_cast<double>(total);
    BinomialInterval out;
    out.low = (hits == 0) ? 0.0 : boost::math::ibeta_inv(k, n - k + 1.0, alpha / 2.0);
    out.high = (hits == total) ? 1.0 : boost::math::ibeta_inv(k + 1.0, n - k, 1.0 - alpha / 2.0);
    return out;
}

StatisticSampler::StatisticSampler(const EnsembleVariant& ensemble) {
    if (const auto* bern = std::get_if<BernoulliEnsemble>(&ensemble)) {
        const auto& probs = bern->probs();
        terms_.reserve(probs.size());
        for (std::size_t i = 0; i < probs.size(); ++i) {
            const double p = probs[i];
            if (bern->degenerate(i)) {
                continue;  // contributes exactly zero
            }
            BernoulliTerm term;
            term.variable = static_cast<std::uint64_t>(i);
            term.prob = p;
            term.weight = std::log(p);
            term.offset = -p * term.weight;
            terms_.push_back(term);
        }
        return;
    }
    if (const auto* grouped = std::get_if<GroupedEnsemble>(&ensemble)) {
        terms_.reserve(static_cast<std::size_t>(grouped->total_size()));
        std::uint64_t variable = 0;
        for (std::size_t g = 0; g < grouped->group_count(); ++g) {
            const auto& probs = grouped->groups()[g];
            const double mean = grouped->group_mean(g);
            const bool degenerate = grouped->group_degenerate(g);
            const double weight = degenerate ? 0.0 : std::log(mean);
            for (double p : probs) {
                if (!degenerate) {
                    BernoulliTerm term;
                    term.variable = variable;
                    term.prob = p;
                    term.weight = weight;
                    term.offset = -p * weight;
                    terms_.push_back(term);
                }
                ++variable;  // keep counter indices stable across degeneracy
            }
        }
        return;
    }
    const auto& multi = std::get<MultinoulliEnsemble>(ensemble);
    const std::size_t row_count = multi.rows().size();
    rows_.reserve(row_count);
    for (std::size_t i = 0; i < row_count; ++i) {
        CategoricalRow row;
        row.variable = static_cast<std::uint64_t>(i);
        const auto& probs = multi.rows()[i];
        row.cumulative.reserve(probs.size());
        row.values.reserve(probs.size());
        double running = 0.0;
        for (std::size_t k = 0; k < probs.size(); ++k) {
            running += probs[k];
            row.cumulative.push_back(running);
            row.values.push_back(multi.row_value(i, k));
        }
        row.cumulative.back() = 1.0;  // absorb accumulated rounding
        rows_.push_back(std::move(row));
    }
}

double StatisticSampler::sample(std::uint64_t seed, std::uint64_t replicate) const {
    KahanSum sum;
    for (const auto& term : terms_) {
        const double u = uniform01(seed, replicate, term.variable);
        const double x = (u < term.prob) ? 1.0 : 0.0;
        sum.add(x * term.weight + term.offset);
    }
    for (const auto& row : rows_) {
        const double u = uniform01(seed, replicate, row.variable);
        const auto it = std::upper_bound(row.cumulative.begin(), row.cumulative.end(), u);
        const std::size_t k = std::min(static_cast<std::size_t>(it - row.cumulative.begin()),
                                       row.cumulative.size() - 1);
        sum.add(row.values[k]);
    }
    return sum.value();
}

double sample_statistic(const EnsembleVariant& ensemble, std::uint64_t seed, std::uint64_t replicate) {
    return StatisticSampler(ensemble).sample(seed, replicate);
}

namespace {

/// Splits [0, replicates) into per-worker contiguous ranges. Hit counting is
/// integer so the combined result does not depend on the split.
template <typename PerReplicate>
void run_partitioned(std::uint64_t replicates, unsigned workers, PerReplicate&& body) {
    if (workers <= 1 || replicates < 2) {
        body(0u, std::uint64_t{0}, replicates);
        return;
    }
    const unsigned count = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, replicates));
    std::vector<std::thread> pool;
    pool.reserve(count);
    const std::uint64_t chunk = replicates / count;
    const std::uint64_t extra = replicates % count;
    std::uint64_t begin = 0;
    for (unsigned w = 0; w < count; ++w) {
        const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
        pool.emplace_back([&body, w, begin, end] { body(w, begin, end); });
        begin = end;
    }
    for (auto& th : pool) {
        th.join();
    }
}

}  // namespace

MonteCarloEstimate simulate_tail(const EnsembleVariant& ensemble, double t, std::uint64_t replicates,
                                 std::uint64_t seed, double confidence, unsigned workers) {
    if (replicates == 0) {
        throw std::invalid_argument("replicates must be positive");
    }
    if (!(t >= 0.0)) {
        throw std::invalid_argument("threshold t must be nonnegative");
    }
    const StatisticSampler sampler(ensemble);
    const unsigned count = static_cast<unsigned>(
        std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, replicates)));
    std::vector<std::uint64_t> partial_hits(count, 0);
    run_partitioned(replicates, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        std::uint64_t hits = 0;
        for (std::uint64_t r = begin; r < end; ++r) {
            const double s = sampler.sample(seed, r);
            if (std::abs(s) >= t) {
                ++hits;
            }
        }
        partial_hits[w] = hits;
    });
    std::uint64_t hits = 0;
    for (std::uint64_t h : partial_hits) {
        hits += h;
    }

    MonteCarloEstimate out;
    out.hits = hits;
    out.replicates = replicates;
    out.point = static_cast<double>(hits) / static_cast<double>(replicates);
    const BinomialInterval ci = clopper_pearson(hits, replicates, confidence);
    out.ci_low = ci.low;
    out.ci_high = ci.high;
    out.confidence = confidence;
    out.seed = seed;
    return out;
}

MgfEstimate simulate_mgf(const BernoulliEnsemble& ensemble, double lambda, std::uint64_t replicates,
                         std::uint64_t seed, unsigned workers) {
    if (replicates == 0) {
        throw std::invalid_argument("replicates must be positive");
    }
    const StatisticSampler sampler(EnsembleVariant{ensemble});
    const unsigned count = static_cast<unsigned>(
        std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, replicates)));
    // Compensated partials per worker, combined in worker order so the mean
    // is reproducible for a fixed worker count.
    std::vector<double> partial_sum(count, 0.0);
    std::vector<double> partial_sq(count, 0.0);
    run_partitioned(replicates, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        KahanSum sum;
        KahanSum sq;
        for (std::uint64_t r = begin; r < end; ++r) {
            const double v = std::exp(lambda * sampler.sample(seed, r));
            sum.add(v);
            sq.add(v * v);
        }
        partial_sum[w] = sum.value();
        partial_sq[w] = sq.value();
    });
    KahanSum total;
    KahanSum total_sq;
    for (unsigned w = 0; w < count; ++w) {
        total.add(partial_sum[w]);
        total_sq.add(partial_sq[w]);
    }
    const double n = static_cast<double>(replicates);
    const double mean = total.value() / n;
    double variance = 0.0;
    if (replicates > 1) {
        variance = std::max(0.0, (total_sq.value() - n * mean * mean) / (n - 1.0));
    }

    MgfEstimate out;
    out.mean = mean;
    out.std_error = std::sqrt(variance / n);
    out.replicates = replicates;
    out.seed = seed;
    return out;
}

}  // namespace bernbound
