#include "bernbound/ensembles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bernbound/numeric.hpp"

namespace bernbound {

namespace {

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("probability out of range: " + std::to_string(p));
    }
}

}  // namespace

std::vector<Atom> support_points(double p) {
    check_probability(p);
    if (is_degenerate_prob(p)) return {{0.0, 1.0}};
    const double log_p = std::log(p);
    return {{(1.0 - p) * log_p, p}, {-xlogx(p), 1.0 - p}};
}

BernoulliEnsemble::BernoulliEnsemble(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("ensemble must contain at least one probability");
    degenerate_.resize(probs_.size(), 0);
    min_active_prob_ = 1.0;
    KahanSum log_sq;
    KahanSum var;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        const double p = probs_[i];
        check_probability(p);
        if (is_degenerate_prob(p)) {
            degenerate_[i] = 1;
            continue;
        }
        ++active_count_;
        if (active_count_ == 1 || p < min_active_prob_) min_active_prob_ = p;
        const double log_p = std::log(p);
        log_sq.add(log_p * log_p);
        var.add(p * (1.0 - p) * log_p * log_p);
    }
    sum_log_sq_ = active_count_ == 0 ? 0.0 : log_sq.value();
    variance_sum_ = active_count_ == 0 ? 0.0 : var.value();
    if (active_count_ == 0) min_active_prob_ = 0.0;
}

MultinoulliEnsemble::MultinoulliEnsemble(std::vector<std::vector<double>> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("multinoulli ensemble must contain at least one row");
    category_count_ = static_cast<int>(probs_.front().size());
    if (category_count_ < 2) throw std::invalid_argument("multinoulli requires K >= 2 categories");
    row_entropy_term_.reserve(probs_.size());
    for (const auto& row : probs_) {
        if (static_cast<int>(row.size()) != category_count_) {
            throw std::invalid_argument("multinoulli rows must all have the same category count");
        }
        KahanSum sum;
        KahanSum entropy;
        for (double p : row) {
            check_probability(p);
            sum.add(p);
            entropy.add(xlogx(p));
        }
        if (std::abs(sum.value() - 1.0) > 1e-12) {
            throw std::invalid_argument("multinoulli row must sum to 1 within 1e-12, got " +
                                        std::to_string(sum.value()));
        }
        row_entropy_term_.push_back(entropy.value());
    }
}

double MultinoulliEnsemble::row_value(std::size_t i, std::size_t k) const {
    const double p = probs_[i][k];
    if (p == 0.0) return -std::numeric_limits<double>::infinity();  // category never realized
    return std::log(p) - row_entropy_term_[i];
}

GroupedEnsemble::GroupedEnsemble(std::vector<std::vector<double>> groups) : groups_(std::move(groups)) {
    if (groups_.empty()) throw std::invalid_argument("grouped ensemble must contain at least one group");
    means_.reserve(groups_.size());
    prob_sums_.reserve(groups_.size());
    for (const auto& group : groups_) {
        if (group.empty()) throw std::invalid_argument("empty group");
        KahanSum sum;
        for (double p : group) {
            check_probability(p);
            sum.add(p);
        }
        prob_sums_.push_back(sum.value());
        means_.push_back(sum.value() / static_cast<double>(group.size()));
        total_size_ += static_cast<std::int64_t>(group.size());
    }
}

bool GroupedEnsemble::group_degenerate(std::size_t i) const { return is_degenerate_prob(means_[i]); }

std::int64_t ensemble_size(const EnsembleVariant& ensemble) {
    return std::visit(
        [](const auto& e) -> std::int64_t {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, BernoulliEnsemble>) return e.size();
            if constexpr (std::is_same_v<T, MultinoulliEnsemble>) return e.row_count();
            if constexpr (std::is_same_v<T, GroupedEnsemble>) return e.total_size();
        },
        ensemble);
}

}  // namespace bernbound
