#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bernbound {

inline std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 1) throw std::invalid_argument("linspace: count must be >= 1");
    if (count == 1) return {lo};
    std::vector<double> out(static_cast<std::size_t>(count));
    const double step = (hi - lo) / (count - 1);
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + step * i;
    out.back() = hi;
    return out;
}

/// count points with log10(p) linearly spaced between exp_lo and exp_hi.
inline std::vector<double> log10_spaced(double exp_lo, double exp_hi, int count) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (double e : linspace(exp_lo, exp_hi, count)) out.push_back(std::pow(10.0, e));
    return out;
}

/// Automatic threshold grid used by verification runs: 50 points spanning
/// 0.02 to 1.05 times the statistic's support radius, i.e. from near-trivial
/// events past the edge of the support. A zero radius (fully degenerate
/// ensemble) falls back to the single threshold t = 1.
inline std::vector<double> verify_t_grid(double support_radius) {
    if (!(support_radius >= 0.0)) throw std::invalid_argument("verify_t_grid: radius must be >= 0");
    if (support_radius == 0.0) return {1.0};
    return linspace(0.02 * support_radius, 1.05 * support_radius, 50);
}

/// Probability grid over [lo, 1-lo], log-spaced toward both endpoints and
/// symmetric under p -> 1-p. Used for envelope and moment sweeps, where the
/// interesting behavior sits at the boundary.
inline std::vector<double> log_symmetric_grid(double lo, int count) {
    if (!(lo > 0.0 && lo < 0.5)) throw std::invalid_argument("log_symmetric_grid: lo must be in (0, 0.5)");
    if (count < 2 || count % 2 != 0) throw std::invalid_argument("log_symmetric_grid: count must be even and >= 2");
    const int half = count / 2;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    // Stop one log step short of 0.5: the midpoint is its own mirror image, so
    // including it would either duplicate a grid point or break the symmetry.
    const std::vector<double> exponents = linspace(std::log10(lo), std::log10(0.5), half + 1);
    for (int i = 0; i < half; ++i) out.push_back(std::pow(10.0, exponents[static_cast<std::size_t>(i)]));
    for (int i = half - 1; i >= 0; --i) out.push_back(1.0 - out[static_cast<std::size_t>(i)]);
    return out;
}

}  // namespace bernbound
