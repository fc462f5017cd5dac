#include "bernbound/mgf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bernbound/ensembles.hpp"
#include "bernbound/numeric.hpp"

namespace bernbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Slope of log G against log p below which the boundary scan declares
// divergence. For lambda < -1 the true tail slope is 1 + lambda <= -0.5 over
// the lambdas anyone scans; for lambda >= -1 it tends to 0.
constexpr double kDivergenceSlopeThreshold = -0.01;

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability out of range");
}

/// log of G(p, lambda) for p in (0, 1): both MGF terms computed in log space,
/// so the result is finite even where the linear value overflows.
double log_mgf_open(double p, double lambda) {
    const double log_p = std::log(p);
    const double a = log_p + lambda * (1.0 - p) * log_p;       // log(p e^{lambda (1-p) log p})
    const double b = std::log1p(-p) - lambda * xlogx(p);       // log((1-p) e^{-lambda p log p})
    return log_sum_exp(a, b);
}

}  // namespace

MgfEvaluation mgf(double p, double lambda) {
    check_probability(p);
    if (!std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite");
    MgfEvaluation out;
    out.lambda = lambda;
    if (is_degenerate_prob(p) || lambda == 0.0) {
        out.value = 1.0;
        out.log_value = 0.0;
    } else {
        out.log_value = log_mgf_open(p, lambda);
        out.value = std::exp(out.log_value);  // may round to +inf; tagged, not fatal
    }
    if (std::abs(lambda) < 1.0) {
        out.log_envelope = log_envelope(lambda);
        out.envelope = std::exp(*out.log_envelope);
    }
    return out;
}

double log_envelope(double lambda) {
    if (!(std::abs(lambda) < 1.0)) throw std::domain_error("envelope undefined for |lambda| >= 1");
    return lambda * lambda / (2.0 * (1.0 - std::abs(lambda)));
}

double envelope(double lambda) { return std::exp(log_envelope(lambda)); }

MomentRecord moment(double p, int m) {
    check_probability(p);
    if (m < 1) throw std::invalid_argument("moment order must be >= 1");
    MomentRecord out;
    out.m = m;
    if (is_degenerate_prob(p)) return out;  // Y identically 0
    const double log_p = std::log(p);
    out.a1 = p * std::pow(1.0 - p, m) * std::pow(log_p, m);
    out.a2 = (1.0 - p) * std::pow(-xlogx(p), m);
    out.total = out.a1 + out.a2;
    return out;
}

double log_abs_moment(double p, int m) {
    check_probability(p);
    if (m < 1) throw std::invalid_argument("moment order must be >= 1");
    if (is_degenerate_prob(p)) return -kInf;
    const double log_p = std::log(p);
    const double log_abs_weight = std::log(-log_p);  // log|log p|
    const double log_abs_a1 = log_p + m * std::log1p(-p) + m * log_abs_weight;
    const double log_a2 = std::log1p(-p) + m * (log_p + log_abs_weight);
    if (m % 2 == 0) return log_sum_exp(log_abs_a1, log_a2);
    // odd m: a1 < 0 <= a2, so |total| = |a2 - |a1||
    return log_diff_exp(std::max(log_abs_a1, log_a2), std::min(log_abs_a1, log_a2));
}

BernsteinConditionReport check_bernstein_condition(int m_max, std::span<const double> p_grid) {
    if (m_max < 3) throw std::invalid_argument("m_max must be >= 3");
    if (p_grid.empty()) throw std::invalid_argument("probability grid must be nonempty");
    for (double p : p_grid) check_probability(p);

    BernsteinConditionReport report;
    report.max_violation = -kInf;
    constexpr double kLogDblMax = 709.0;
    for (int m = 3; m <= m_max; ++m) {
        const double log_half_fact = log_factorial(m) - std::log(2.0);
        for (double p : p_grid) {
            const double lhs_log = log_abs_moment(p, m);
            double violation;
            if (lhs_log < kLogDblMax && log_half_fact < kLogDblMax) {
                violation = std::exp(lhs_log) - std::exp(log_half_fact);
            } else {
                // Past double range only the sign of the margin is meaningful.
                violation = lhs_log <= log_half_fact ? -kInf : kInf;
            }
            if (violation > report.max_violation) {
                report.max_violation = violation;
                report.argmax_m = m;
                report.argmax_p = p;
            }
        }
    }
    return report;
}

MomentScan moment_scan(int m, std::span<const double> p_grid) {
    if (m < 2) throw std::invalid_argument("moment scan requires m >= 2");
    if (p_grid.empty()) throw std::invalid_argument("probability grid must be nonempty");
    MomentScan scan;
    scan.m = m;
    scan.entries.reserve(p_grid.size());
    double best = -kInf;
    double best_majorant = -kInf;
    for (double p : p_grid) {
        check_probability(p);
        MomentScanEntry entry;
        entry.p = p;
        entry.log_abs_moment = log_abs_moment(p, m);
        entry.abs_moment = std::exp(entry.log_abs_moment);
        if (is_degenerate_prob(p)) {
            entry.log_abs_a1 = -kInf;
            entry.abs_a1 = 0.0;
            entry.log_a1_majorant = -kInf;
            entry.a1_majorant = 0.0;
        } else {
            const double log_p = std::log(p);
            entry.log_abs_a1 = log_p + m * std::log1p(-p) + m * std::log(-log_p);
            entry.abs_a1 = std::exp(entry.log_abs_a1);
            entry.log_a1_majorant = log_p + m * std::log(-log_p);
            entry.a1_majorant = std::exp(entry.log_a1_majorant);
        }
        if (entry.log_abs_moment > best) {
            best = entry.log_abs_moment;
            scan.argmax_index = scan.entries.size();
        }
        if (entry.log_a1_majorant > best_majorant) {
            best_majorant = entry.log_a1_majorant;
            scan.argmax_majorant_index = scan.entries.size();
        }
        scan.entries.push_back(entry);
    }
    return scan;
}

std::string_view to_string(BoundaryVerdict verdict) {
    return verdict == BoundaryVerdict::kDiverges ? "diverges" : "converges";
}

BoundaryScan mgf_boundary_scan(double lambda, std::span<const double> p_sequence) {
    if (p_sequence.size() < 2) throw std::invalid_argument("boundary scan needs at least two points");
    for (std::size_t i = 0; i < p_sequence.size(); ++i) {
        if (!(p_sequence[i] > 0.0 && p_sequence[i] < 1.0)) {
            throw std::invalid_argument("boundary scan probabilities must lie in (0, 1)");
        }
        if (i > 0 && !(p_sequence[i] < p_sequence[i - 1])) {
            throw std::invalid_argument("boundary scan sequence must be strictly decreasing");
        }
    }
    BoundaryScan scan;
    scan.lambda = lambda;
    scan.values.reserve(p_sequence.size());
    for (double p : p_sequence) scan.values.push_back(mgf(p, lambda));

    const std::size_t pairs = std::min<std::size_t>(3, p_sequence.size() - 1);
    bool diverges = true;
    for (std::size_t j = p_sequence.size() - pairs; j < p_sequence.size(); ++j) {
        const double dlog_g = scan.values[j].log_value - scan.values[j - 1].log_value;
        const double dlog_p = std::log(p_sequence[j]) - std::log(p_sequence[j - 1]);
        if (!(dlog_g / dlog_p < kDivergenceSlopeThreshold)) diverges = false;
    }
    scan.verdict = diverges ? BoundaryVerdict::kDiverges : BoundaryVerdict::kConverges;
    return scan;
}

GroupedMgf grouped_mgf(std::span<const double> group, double lambda) {
    if (group.empty()) throw std::invalid_argument("empty group");
    if (!std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite");
    KahanSum mean_acc;
    for (double p : group) {
        check_probability(p);
        mean_acc.add(p);
    }
    const double mean = mean_acc.value() / static_cast<double>(group.size());
    GroupedMgf out;
    if (is_degenerate_prob(mean) || lambda == 0.0) return out;  // Z identically 0

    const double log_mean = std::log(mean);
    const double a = lambda * (1.0 - mean) * log_mean;  // exponent for X_j = 1
    const double b = -lambda * mean * log_mean;         // exponent for X_j = 0
    KahanSum log_prod;
    for (double p : group) {
        double log_factor;
        if (p == 0.0) {
            log_factor = b;
        } else if (p == 1.0) {
            log_factor = a;
        } else {
            log_factor = log_sum_exp(std::log(p) + a, std::log1p(-p) + b);
        }
        log_prod.add(log_factor);
    }
    out.log_exact = log_prod.value();
    out.exact = std::exp(out.log_exact);
    out.log_dominating = static_cast<double>(group.size()) * mgf(mean, lambda).log_value;
    out.dominating = std::exp(out.log_dominating);
    return out;
}

}  // namespace bernbound
