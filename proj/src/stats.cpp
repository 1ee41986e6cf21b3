#include "aapso/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace aapso {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double mw_u_statistic(std::span<const double> x, std::span<const double> y) {
    double u = 0.0;
    for (const double xi : x) {
        for (const double yj : y) {
            if (xi > yj) {
                u += 1.0;
            } else if (xi == yj) {
                u += 0.5;
            }
        }
    }
    return u;
}

bool has_ties(std::vector<double> combined) {
    std::sort(combined.begin(), combined.end());
    return std::adjacent_find(combined.begin(), combined.end()) != combined.end();
}

// Exact null distribution: every size-n subset of pooled positions is
// equally likely; U of a subset S is sum(S) - n(n-1)/2.
std::pair<double, double> exact_tail_probabilities(std::size_t n, std::size_t m, double u_obs) {
    const std::size_t total = n + m;
    std::vector<std::size_t> comb(n);
    for (std::size_t i = 0; i < n; ++i) comb[i] = i;

    const double offset = static_cast<double>(n * (n - 1)) / 2.0;
    std::uint64_t count_ge = 0, count_le = 0, count_all = 0;
    while (true) {
        std::size_t rank_sum = 0;
        for (const auto pos : comb) rank_sum += pos;
        const double u = static_cast<double>(rank_sum) - offset;
        if (u >= u_obs) ++count_ge;
        if (u <= u_obs) ++count_le;
        ++count_all;

        // next combination in lexicographic order
        std::size_t i = n;
        while (i-- > 0) {
            if (comb[i] != i + total - n) {
                ++comb[i];
                for (std::size_t j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
                break;
            }
            if (i == 0) {
                return {static_cast<double>(count_ge) / static_cast<double>(count_all),
                        static_cast<double>(count_le) / static_cast<double>(count_all)};
            }
        }
    }
}

double tie_corrected_sigma(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    const auto m = static_cast<double>(y.size());
    const double total = n + m;

    std::vector<double> combined(x.begin(), x.end());
    combined.insert(combined.end(), y.begin(), y.end());
    std::sort(combined.begin(), combined.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < combined.size();) {
        std::size_t j = i + 1;
        while (j < combined.size() && combined[j] == combined[i]) ++j;
        const auto t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }

    const double variance =
        n * m / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
    return variance > 0.0 ? std::sqrt(variance) : 0.0;
}

// z with sign preserved when sigma collapses to 0 (fully tied data), so
// one-sided p-values degrade to 1 rather than 0.5.
double safe_z(double numerator, double sigma) {
    if (sigma > 0.0) return numerator / sigma;
    if (numerator > 0.0) return std::numeric_limits<double>::infinity();
    if (numerator < 0.0) return -std::numeric_limits<double>::infinity();
    return 0.0;
}

} // namespace

StatReport mann_whitney_u(std::span<const double> x, std::span<const double> y,
                          Alternative alternative) {
    if (x.size() < 2 || y.size() < 2) {
        throw std::invalid_argument("mann_whitney_u needs at least 2 values per sample");
    }

    StatReport report;
    report.alternative = alternative;
    report.u_statistic = mw_u_statistic(x, y);

    std::vector<double> combined(x.begin(), x.end());
    combined.insert(combined.end(), y.begin(), y.end());
    const bool tied = has_ties(std::move(combined));

    if (!tied && x.size() + y.size() <= 20) {
        report.method = TestMethod::exact;
        const auto [p_ge, p_le] = exact_tail_probabilities(x.size(), y.size(), report.u_statistic);
        switch (alternative) {
            case Alternative::greater: report.p_value = p_ge; break;
            case Alternative::less: report.p_value = p_le; break;
            case Alternative::two_sided:
                report.p_value = std::min(1.0, 2.0 * std::min(p_ge, p_le));
                break;
        }
        return report;
    }

    report.method = TestMethod::normal_approx;
    const double mean =
        static_cast<double>(x.size()) * static_cast<double>(y.size()) / 2.0;
    const double sigma = tie_corrected_sigma(x, y);
    const double diff = report.u_statistic - mean;
    switch (alternative) {
        case Alternative::greater:
            report.p_value = 1.0 - normal_cdf(safe_z(diff - 0.5, sigma));
            break;
        case Alternative::less:
            report.p_value = normal_cdf(safe_z(diff + 0.5, sigma));
            break;
        case Alternative::two_sided:
            report.p_value =
                std::min(1.0, 2.0 * (1.0 - normal_cdf(safe_z(std::abs(diff) - 0.5, sigma))));
            break;
    }
    return report;
}

BoxSummary box_summary(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("box_summary needs a nonempty input");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    const auto quantile = [&sorted](double p) {
        const double h = p * static_cast<double>(sorted.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const auto hi = std::min(lo + 1, sorted.size() - 1);
        const double frac = h - std::floor(h);
        return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
    };

    BoxSummary box;
    box.min = sorted.front();
    box.q1 = quantile(0.25);
    box.median = quantile(0.5);
    box.q3 = quantile(0.75);
    box.max = sorted.back();
    return box;
}

} // namespace aapso
