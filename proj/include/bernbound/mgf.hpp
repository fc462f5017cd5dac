#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace bernbound {

/// G(p, lambda) = E[exp(lambda (X - p) log p)] together with the
/// parameter-free envelope exp(lambda^2 / (2 (1 - |lambda|))).
///
/// `value` can legitimately overflow to +inf for lambda < -1 as p -> 0;
/// `log_value` stays finite for every p in (0, 1). The envelope fields are
/// populated only when |lambda| < 1, the range where the envelope exists.
struct MgfEvaluation {
    double lambda = 0.0;
    double value = 1.0;
    double log_value = 0.0;
    std::optional<double> envelope;
    std::optional<double> log_envelope;
};

MgfEvaluation mgf(double p, double lambda);

/// exp(lambda^2 / (2 (1 - |lambda|))). Throws std::domain_error for |lambda| >= 1.
double envelope(double lambda);
/// The envelope exponent lambda^2 / (2 (1 - |lambda|)); same domain.
double log_envelope(double lambda);

/// m-th moment of Y = (X - p) log p split into its two parts:
/// a1 = p (1-p)^m (log p)^m and a2 = (1-p) (-p log p)^m.
struct MomentRecord {
    int m = 0;
    double a1 = 0.0;
    double a2 = 0.0;
    double total = 0.0;
};

MomentRecord moment(double p, int m);

/// log |E[Y^m]|, evaluated entirely in log space so it stays meaningful far
/// beyond the double-precision factorial range (-inf when the moment is 0).
double log_abs_moment(double p, int m);

/// Result of sweeping |E[Y^m]| - m!/2 over orders 3..m_max and a probability
/// grid. The moment condition holds iff max_violation <= 0.
struct BernsteinConditionReport {
    double sigma2 = 1.0;
    double b = 1.0;
    double max_violation = 0.0;
    int argmax_m = 0;
    double argmax_p = 0.0;
};

BernsteinConditionReport check_bernstein_condition(int m_max, std::span<const double> p_grid);

struct MomentScanEntry {
    double p = 0.0;
    double abs_moment = 0.0;
    double log_abs_moment = 0.0;
    double abs_a1 = 0.0;
    double log_abs_a1 = 0.0;
    /// p |log p|^m, the undamped magnitude of the a1 term (its (1-p)^m factor
    /// dropped). This majorant peaks exactly at p = e^-m with value (m/e)^m;
    /// the damping shifts the true |a1| peak slightly below e^-m for small m.
    double a1_majorant = 0.0;
    double log_a1_majorant = 0.0;
};

/// |E[Y^m]| profile over a probability grid; the a1 majorant peaks at
/// p = exp(-m) with value of order (m/e)^m.
struct MomentScan {
    int m = 0;
    std::vector<MomentScanEntry> entries;
    std::size_t argmax_index = 0;           // argmax of |E[Y^m]|
    std::size_t argmax_majorant_index = 0;  // argmax of p |log p|^m
};

MomentScan moment_scan(int m, std::span<const double> p_grid);

enum class BoundaryVerdict { kConverges, kDiverges };
std::string_view to_string(BoundaryVerdict verdict);

/// G(p, lambda) along a decreasing probability sequence, with an empirical
/// divergence verdict: G blows up as p -> 0+ exactly when lambda < -1.
/// The verdict comes from the tail slope of log G against log p (the first
/// MGF term equals p^(1+lambda)); slopes below -0.01 on the last three steps
/// are declared divergent.
struct BoundaryScan {
    double lambda = 0.0;
    std::vector<MgfEvaluation> values;
    BoundaryVerdict verdict = BoundaryVerdict::kConverges;
};

BoundaryScan mgf_boundary_scan(double lambda, std::span<const double> p_sequence);

/// Exact MGF of the grouped statistic Z = sum_j (X_j - p_j) log pbar against
/// its mean-field dominating value G(pbar, lambda)^n. The AM-GM inequality
/// guarantees exact <= dominating for every lambda.
struct GroupedMgf {
    double exact = 1.0;
    double log_exact = 0.0;
    double dominating = 1.0;
    double log_dominating = 0.0;
};

GroupedMgf grouped_mgf(std::span<const double> group, double lambda);

}  // namespace bernbound
