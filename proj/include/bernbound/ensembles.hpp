#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

namespace bernbound {

/// One support point (value, probability mass) of a discrete statistic.
struct Atom {
    double value = 0.0;
    double mass = 0.0;
    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Support atoms of the centered weighted variable Y = (X - p) log p for a
/// single Ber(p): {((1-p) log p, p), (-p log p, 1-p)}. Degenerate p (0 or 1)
/// collapses to the single atom (0, 1) under the 0 log 0 = 0 convention.
std::vector<Atom> support_points(double p);

/// Independent Bernoulli success probabilities p_1..p_n, validated to [0, 1].
/// Entries at exactly 0 or 1 are flagged degenerate: they stay in place (so
/// indexing is stable) but contribute a zero atom to every statistic.
class BernoulliEnsemble {
public:
    explicit BernoulliEnsemble(std::vector<double> probs);

    const std::vector<double>& probs() const { return probs_; }
    std::int64_t size() const { return static_cast<std::int64_t>(probs_.size()); }
    bool degenerate(std::size_t i) const { return degenerate_[i] != 0; }
    std::size_t active_count() const { return active_count_; }
    bool all_degenerate() const { return active_count_ == 0; }

    /// Smallest non-degenerate entry p_(1). Valid only when !all_degenerate().
    double min_active_prob() const { return min_active_prob_; }
    /// Sum of (log p_i)^2 over non-degenerate entries.
    double sum_log_sq() const { return sum_log_sq_; }
    /// Sum of Var(X_i log p_i) = p_i (1-p_i) (log p_i)^2.
    double variance_sum() const { return variance_sum_; }

    friend bool operator==(const BernoulliEnsemble&, const BernoulliEnsemble&) = default;

private:
    std::vector<double> probs_;
    std::vector<std::uint8_t> degenerate_;
    std::size_t active_count_ = 0;
    double min_active_prob_ = 0.0;
    double sum_log_sq_ = 0.0;
    double variance_sum_ = 0.0;
};

/// n x K matrix of category probabilities; every row sums to 1 within 1e-12
/// (rows are never renormalized). Row i choosing category k contributes
/// row_value(i, k) = log p_ik - sum_k' p_ik' log p_ik' to the statistic.
class MultinoulliEnsemble {
public:
    explicit MultinoulliEnsemble(std::vector<std::vector<double>> probs);

    const std::vector<std::vector<double>>& rows() const { return probs_; }
    std::int64_t row_count() const { return static_cast<std::int64_t>(probs_.size()); }
    int category_count() const { return category_count_; }
    double row_value(std::size_t i, std::size_t k) const;

    friend bool operator==(const MultinoulliEnsemble&, const MultinoulliEnsemble&) = default;

private:
    std::vector<std::vector<double>> probs_;
    std::vector<double> row_entropy_term_;  // sum_k p_ik log p_ik per row
    int category_count_ = 0;
};

/// Bernoulli variables partitioned into I groups. The grouped statistic
/// weights every member of group i by log of the group mean pbar_i.
class GroupedEnsemble {
public:
    explicit GroupedEnsemble(std::vector<std::vector<double>> groups);

    const std::vector<std::vector<double>>& groups() const { return groups_; }
    std::size_t group_count() const { return groups_.size(); }
    std::int64_t total_size() const { return total_size_; }
    double group_mean(std::size_t i) const { return means_[i]; }
    double group_prob_sum(std::size_t i) const { return prob_sums_[i]; }
    /// pbar_i in {0, 1}; such a group contributes identically 0.
    bool group_degenerate(std::size_t i) const;

    friend bool operator==(const GroupedEnsemble&, const GroupedEnsemble&) = default;

private:
    std::vector<std::vector<double>> groups_;
    std::vector<double> means_;
    std::vector<double> prob_sums_;
    std::int64_t total_size_ = 0;
};

using EnsembleVariant = std::variant<BernoulliEnsemble, MultinoulliEnsemble, GroupedEnsemble>;

/// Total count of Bernoulli draws behind the ensemble's statistic (n).
std::int64_t ensemble_size(const EnsembleVariant& ensemble);

}  // namespace bernbound
