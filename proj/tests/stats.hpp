#pragma once

// Small statistics helpers for the experiment assertions.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace teststats {

inline double mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// One-sided Mann-Whitney p-value (normal approximation with tie
/// correction and continuity correction) for the alternative hypothesis
/// that xs tends to be smaller than ys.
inline double rank_test_less(const std::vector<double>& xs,
                             const std::vector<double>& ys) {
    const std::size_t n1 = xs.size(), n2 = ys.size();
    std::vector<std::pair<double, int>> all;
    all.reserve(n1 + n2);
    for (double x : xs) all.emplace_back(x, 0);
    for (double y : ys) all.emplace_back(y, 1);
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    const double n = static_cast<double>(n1 + n2);
    double rank1 = 0.0;   // rank sum of xs
    double tie_sum = 0.0; // sum of t^3 - t over tie groups
    std::size_t i = 0;
    while (i < all.size()) {
        std::size_t j = i;
        while (j < all.size() && all[j].first == all[i].first) ++j;
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        const double t = static_cast<double>(j - i);
        tie_sum += t * t * t - t;
        for (std::size_t k = i; k < j; ++k) {
            if (all[k].second == 0) rank1 += avg_rank;
        }
        i = j;
    }

    const double u1 = rank1 - static_cast<double>(n1) * (n1 + 1) / 2.0;
    const double mu = static_cast<double>(n1) * static_cast<double>(n2) / 2.0;
    const double var = static_cast<double>(n1) * static_cast<double>(n2) / 12.0 *
                       ((n + 1.0) - tie_sum / (n * (n - 1.0)));
    if (var <= 0.0) return 1.0;  // all values identical: no evidence either way
    const double z = (u1 - mu + 0.5) / std::sqrt(var);
    return normal_cdf(z);
}

}  // namespace teststats
