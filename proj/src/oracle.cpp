#include "bernbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bernbound/mgf.hpp"
#include "bernbound/numeric.hpp"

namespace bernbound {

namespace {

/// Sort ascending and merge runs of near-identical values. Runs are anchored
/// at their first atom so tolerance cannot chain across distinct outcomes;
/// the merged value is the mass-weighted mean of the run.
std::vector<Atom> normalize_atoms(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
    std::vector<Atom> merged;
    merged.reserve(atoms.size());
    std::size_t i = 0;
    while (i < atoms.size()) {
        std::size_t j = i + 1;
        while (j < atoms.size() && atoms[j].value - atoms[i].value <= kAtomMergeTolerance) ++j;
        KahanSum mass;
        KahanSum weighted;
        for (std::size_t k = i; k < j; ++k) {
            mass.add(atoms[k].mass);
            weighted.add(atoms[k].mass * atoms[k].value);
        }
        const double m = mass.value();
        merged.push_back({m > 0.0 ? weighted.value() / m : atoms[i].value, m});
        i = j;
    }
    return merged;
}

/// Product distribution of an existing atom list with one independent factor.
std::vector<Atom> convolve(const std::vector<Atom>& dist, const std::vector<Atom>& factor) {
    std::vector<Atom> out;
    out.reserve(dist.size() * factor.size());
    for (const Atom& a : dist) {
        for (const Atom& f : factor) {
            if (f.mass == 0.0) continue;
            out.push_back({a.value + f.value, a.mass * f.mass});
        }
    }
    return normalize_atoms(std::move(out));
}

void check_outcome_cap(std::int64_t outcomes, const char* hint) {
    if (outcomes > kEnumerationCap) {
        throw std::invalid_argument(std::string("enumeration cap exceeded; use ") + hint);
    }
}

/// Poisson-binomial success-count masses for one group.
std::vector<double> count_distribution(const std::vector<double>& probs) {
    std::vector<double> dp(probs.size() + 1, 0.0);
    dp[0] = 1.0;
    for (std::size_t j = 0; j < probs.size(); ++j) {
        const double p = probs[j];
        for (std::size_t k = j + 1; k-- > 0;) {
            dp[k + 1] += dp[k] * p;
            dp[k] *= 1.0 - p;
        }
    }
    return dp;
}

}  // namespace

double ExactDistribution::total_mass() const {
    KahanSum sum;
    for (const Atom& atom : atoms) sum.add(atom.mass);
    return sum.value();
}

double ExactDistribution::mean() const {
    KahanSum sum;
    for (const Atom& atom : atoms) sum.add(atom.mass * atom.value);
    return sum.value();
}

double ExactDistribution::support_radius() const {
    if (atoms.empty()) return 0.0;
    return std::max(std::abs(atoms.front().value), std::abs(atoms.back().value));
}

double ExactDistribution::tail_probability(double t) const {
    KahanSum sum;
    for (const Atom& atom : atoms) {
        if (std::abs(atom.value) >= t) sum.add(atom.mass);
    }
    return std::min(1.0, std::max(0.0, sum.value()));
}

double ExactDistribution::mgf_value(double lambda) const {
    KahanSum sum;
    for (const Atom& atom : atoms) sum.add(atom.mass * std::exp(lambda * atom.value));
    return sum.value();
}

double ExactDistribution::log_mgf(double lambda) const {
    double acc = -std::numeric_limits<double>::infinity();
    for (const Atom& atom : atoms) {
        if (atom.mass == 0.0) continue;
        acc = log_sum_exp(acc, std::log(atom.mass) + lambda * atom.value);
    }
    return acc;
}

ExactDistribution exact_distribution(const BernoulliEnsemble& ensemble) {
    if (ensemble.size() > 24) {
        throw std::invalid_argument("enumeration cap exceeded; use montecarlo (n <= 24)");
    }
    std::vector<Atom> dist = {{0.0, 1.0}};
    for (double p : ensemble.probs()) dist = convolve(dist, support_points(p));
    return {std::move(dist)};
}

ExactDistribution exact_grouped_distribution(const GroupedEnsemble& ensemble) {
    if (ensemble.total_size() > 24) {
        throw std::invalid_argument("enumeration cap exceeded; use montecarlo (total size <= 24)");
    }
    std::vector<Atom> dist = {{0.0, 1.0}};
    for (std::size_t i = 0; i < ensemble.group_count(); ++i) {
        if (ensemble.group_degenerate(i)) continue;  // Z_i identically 0
        const auto& group = ensemble.groups()[i];
        const double log_mean = std::log(ensemble.group_mean(i));
        const double prob_sum = ensemble.group_prob_sum(i);
        const std::vector<double> counts = count_distribution(group);
        std::vector<Atom> group_atoms;
        group_atoms.reserve(counts.size());
        for (std::size_t k = 0; k < counts.size(); ++k) {
            if (counts[k] == 0.0) continue;
            group_atoms.push_back({(static_cast<double>(k) - prob_sum) * log_mean, counts[k]});
        }
        dist = convolve(dist, group_atoms);
    }
    return {std::move(dist)};
}

ExactDistribution exact_multinoulli_distribution(const MultinoulliEnsemble& ensemble) {
    const double k = static_cast<double>(ensemble.category_count());
    if (static_cast<double>(ensemble.row_count()) * std::log(k) >
        std::log(static_cast<double>(kEnumerationCap)) + 1e-9) {
        throw std::invalid_argument("enumeration cap exceeded; use montecarlo (K^n <= 2^24)");
    }
    std::vector<Atom> dist = {{0.0, 1.0}};
    for (std::size_t i = 0; i < static_cast<std::size_t>(ensemble.row_count()); ++i) {
        const auto& row = ensemble.rows()[i];
        std::vector<Atom> row_atoms;
        row_atoms.reserve(row.size());
        for (std::size_t cat = 0; cat < row.size(); ++cat) {
            if (row[cat] == 0.0) continue;
            row_atoms.push_back({ensemble.row_value(i, cat), row[cat]});
        }
        check_outcome_cap(static_cast<std::int64_t>(dist.size()) * static_cast<std::int64_t>(row_atoms.size()),
                          "montecarlo");
        dist = convolve(dist, row_atoms);
    }
    return {std::move(dist)};
}

LogScaled exact_mgf_product(const BernoulliEnsemble& ensemble, double lambda) {
    KahanSum log_prod;
    for (double p : ensemble.probs()) log_prod.add(mgf(p, lambda).log_value);
    LogScaled out;
    out.log_value = log_prod.value();
    out.value = std::exp(out.log_value);
    return out;
}

}  // namespace bernbound
