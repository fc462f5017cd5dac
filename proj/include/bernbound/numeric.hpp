#pragma once

#include <cmath>
#include <limits>

namespace bernbound {

inline constexpr double kXLogXCutoff = 1e-300;

/// x * log(x) with the convention 0 log 0 = 0. Below the cutoff the product
/// underflows anyway; returning exactly 0 avoids -inf * 0 at x == 0.
inline double xlogx(double x) {
    if (x < kXLogXCutoff) return 0.0;
    return x * std::log(x);
}

inline bool is_degenerate_prob(double p) { return p == 0.0 || p == 1.0; }

/// log(e^a + e^b), safe for -inf arguments.
inline double log_sum_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = a > b ? a : b;
    const double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

/// log(e^a - e^b) for a >= b; returns -inf when a == b.
inline double log_diff_exp(double a, double b) {
    if (b == -std::numeric_limits<double>::infinity()) return a;
    if (a <= b) return -std::numeric_limits<double>::infinity();
    return a + std::log1p(-std::exp(b - a));
}

inline double log_factorial(int m) { return std::lgamma(static_cast<double>(m) + 1.0); }

/// Neumaier-compensated accumulator. Masses and tail sums go through this so
/// that totals over large atom lists stay accurate to ~1 ulp.
class KahanSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double relative_gap(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

}  // namespace bernbound
