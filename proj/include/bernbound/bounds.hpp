#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bernbound/ensembles.hpp"

namespace bernbound {

enum class Method {
    kNew,
    kHoeffding,
    kClassicalBernstein,
    kMultinoulli,
    kGrouped,
    kGroupedMultinoulli,
};

std::string_view method_name(Method method);

/// One tail bound evaluation. Bounds above 1 are returned as-is (the blow-up
/// of the classical bounds is the interesting case); `trivial` marks them.
/// `degenerate` marks the all-degenerate short circuit where the exact tail
/// is 0 and the bound is reported as 0.
struct TailBoundReport {
    Method method = Method::kNew;
    std::int64_t n = 0;
    double t = 0.0;
    std::optional<double> epsilon;  // set for the epsilon-parameterized corollaries, t = n epsilon
    double bound = 0.0;
    double log_bound = 0.0;
    bool trivial = false;
    bool degenerate = false;
    std::map<std::string, double> aux;
};

/// 2 exp(-t^2 / (2 (n + t))): depends on n and t only, never on the
/// probabilities.
TailBoundReport new_tail_bound(std::int64_t n, double t);

/// 2 exp(-2 t^2 / sum (log p_i)^2) over the non-degenerate entries.
TailBoundReport hoeffding_bound(const BernoulliEnsemble& ensemble, double t);

/// 2 exp(-(t^2/2) / (sum Var(X_i log p_i) + |log p_(1)| t / 3)).
TailBoundReport classical_bernstein_bound(const BernoulliEnsemble& ensemble, double t);

/// 2K exp(-n eps^2 / (2K (K + eps))): the union bound over categories, each
/// at per-category threshold t = n eps / K.
TailBoundReport multinoulli_bound(std::int64_t n, int k, double epsilon);

/// Same formula as new_tail_bound; tagged so reports identify the grouped
/// statistic sum_i Z_i it certifies.
TailBoundReport grouped_tail_bound(std::int64_t n, double t);

TailBoundReport grouped_multinoulli_bound(std::int64_t n, int k, double epsilon);

/// new / hoeffding / classical_bernstein rows for each t, all on the same
/// statistic sum (X_i - p_i) log p_i.
std::vector<TailBoundReport> compare(const BernoulliEnsemble& ensemble, std::span<const double> t_list);

enum class TailSide { kLeft, kRight };

/// Numeric cross-check of the closed-form Chernoff choice lambda = -+t/(t+n).
/// Minimizes the quadratic exponent (n+t) lambda^2/2 -+ lambda t over one side
/// of (-1, 1); that quadratic dominates the envelope exponent
/// n lambda^2/(2(1-|lambda|)) -+ lambda t on |lambda| <= t/(t+n) and touches it
/// at the minimizer, so its minimum -t^2/(2(n+t)) is exactly the log of half
/// the two-sided bound. (The envelope exponent itself has a slightly smaller
/// minimum at |lambda| = 1 - sqrt(n/(n+2t)); the closed form is the standard
/// convenient choice that yields the clean bound.)
struct ChernoffSolution {
    double lambda_star = 0.0;
    double objective_value = 0.0;
    double closed_form_lambda = 0.0;
};

ChernoffSolution chernoff_optimize(std::int64_t n, double t, TailSide side);

}  // namespace bernbound
