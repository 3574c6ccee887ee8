// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the unit and acceptance suites: level-targeted root
// finding on monotone Laplace transforms and a two-sided Kolmogorov-Smirnov
// test against a fitted exponential law. Everything here is independent of
// the code paths it helps to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace thzcov::testutil {

/// Find s with L(s) = level for a monotonically decreasing L with L(0) = 1,
/// by bisection on log s. Used to place LT cross-checks at informative
/// operating points instead of degenerate L ~ 1 or L ~ 0 ones.
inline double find_s_for_level(const std::function<double(double)>& lt, double level,
                               double log_s_lo = -60.0, double log_s_hi = 80.0) {
    double lo = log_s_lo;
    double hi = log_s_hi;
    // expand if the bracket does not straddle the level
    while (lt(std::exp(lo)) < level && lo > -200.0) lo -= 20.0;
    while (lt(std::exp(hi)) > level && hi < 300.0) hi += 20.0;
    for (int it = 0; it < 90; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (lt(std::exp(mid)) > level) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

/// Two-sided KS distance of the sample against Exp(rate = 1 / sample mean).
struct KsExponentialFit {
    double statistic = 0.0;
    double fitted_rate = 0.0;
};

inline KsExponentialFit ks_against_fitted_exponential(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= n;
    KsExponentialFit out;
    out.fitted_rate = 1.0 / mean;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double cdf = 1.0 - std::exp(-out.fitted_rate * samples[i]);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        out.statistic = std::max({out.statistic, cdf - lo, hi - cdf});
    }
    return out;
}

/// Asymptotic two-sided KS critical value; c(0.01) = 1.62762.
inline double ks_critical_value(std::size_t n, double c_alpha = 1.62762) {
    return c_alpha / std::sqrt(static_cast<double>(n));
}

}  // namespace thzcov::testutil
