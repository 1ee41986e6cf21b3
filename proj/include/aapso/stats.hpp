#pragma once

#include <span>

namespace aapso {

enum class Alternative { greater, less, two_sided };
enum class TestMethod { exact, normal_approx };

struct StatReport {
    double u_statistic = 0.0;
    double p_value = 1.0;
    TestMethod method = TestMethod::normal_approx;
    Alternative alternative = Alternative::greater;
};

/// Mann-Whitney U test of x against y.
///
/// U counts pairs with x_i > y_j, plus 0.5 per tied pair. For tie-free
/// samples with n + m <= 20 the p-value is exact: every C(n+m, n) assignment
/// of the pooled ranks is enumerated. Otherwise a normal approximation is
/// used with tie-corrected variance
///   sigma^2 = (n*m/12) * ((N+1) - sum(t^3 - t) / (N(N-1)))
/// and continuity correction 0.5 (two-sided p = min(1, 2*min(one-sided))).
/// Requires at least 2 values per sample.
StatReport mann_whitney_u(std::span<const double> x, std::span<const double> y,
                          Alternative alternative = Alternative::greater);

/// Five-number summary; quartiles interpolate linearly between closest
/// ranks: q(p) = v[i] + frac * (v[i+1] - v[i]) with i = floor((n-1)*p) on
/// the sorted values.
struct BoxSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

BoxSummary box_summary(std::span<const double> values);

} // namespace aapso
