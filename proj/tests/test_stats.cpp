#include <doctest.h>

#include <cmath>
#include <vector>

#include "aapso/rng.hpp"
#include "aapso/stats.hpp"
#include "support/oracles.hpp"

using namespace aapso;

namespace {

std::vector<double> random_sample(RngStream& rng, int n, bool integer_grid) {
    std::vector<double> values;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        values.push_back(integer_grid ? std::floor(u * 6.0) : u);
    }
    return values;
}

} // namespace

TEST_SUITE_BEGIN("stats");

TEST_CASE("fully separated samples give the exact tail probability") {
    const std::vector<double> x = {3, 4, 5};
    const std::vector<double> y = {0, 1, 2};
    const auto report = mann_whitney_u(x, y, Alternative::greater);
    CHECK(report.u_statistic == 9.0);
    CHECK(report.method == TestMethod::exact);
    CHECK(report.p_value == doctest::Approx(0.05).epsilon(1e-12)); // 1 / C(6,3)
}

TEST_CASE("identical samples are maximally non-significant") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    const auto report = mann_whitney_u(x, x, Alternative::two_sided);
    CHECK(report.u_statistic == 12.5); // n*m/2 with full tie credit
    CHECK(report.method == TestMethod::normal_approx);
    CHECK(report.p_value == 1.0);

    // one-sided: no evidence in either direction
    CHECK(mann_whitney_u(x, x, Alternative::greater).p_value >= 0.5);

    // a fully constant pool collapses the variance; every alternative is 1
    const std::vector<double> flat = {2, 2, 2, 2};
    CHECK(mann_whitney_u(flat, flat, Alternative::greater).p_value == 1.0);
    CHECK(mann_whitney_u(flat, flat, Alternative::less).p_value == 1.0);
    CHECK(mann_whitney_u(flat, flat, Alternative::two_sided).p_value == 1.0);
}

TEST_CASE("fold accuracies reproduce the reported one-sided p-value") {
    const std::vector<double> aapso_accs = {98.37, 98.54, 98.46, 97.86, 98.80};
    const std::vector<double> pso_accs = {97.52, 97.78, 97.52, 96.84, 98.46};
    const auto report = mann_whitney_u(aapso_accs, pso_accs, Alternative::greater);
    CHECK(report.u_statistic == 22.5);
    CHECK(report.method == TestMethod::normal_approx); // the 98.46 tie forces it
    CHECK(std::abs(report.p_value - 0.02293) <= 2e-3);
}

TEST_CASE("exact path agrees with enumeration for small tie-free samples") {
    RngStream rng(404);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform01() * 5);
        const int m = 2 + static_cast<int>(rng.uniform01() * 5);
        auto x = random_sample(rng, n, false);
        auto y = random_sample(rng, m, false);
        for (const auto alt : {Alternative::greater, Alternative::less, Alternative::two_sided}) {
            const auto report = mann_whitney_u(x, y, alt);
            REQUIRE(report.method == TestMethod::exact);
            CHECK(report.p_value == testing::mw_enumeration_oracle(x, y, alt));
        }
    }
}

TEST_CASE("exact and approximate paths agree loosely on 5v5 inputs") {
    RngStream rng(808);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = random_sample(rng, 5, false);
        const auto y = random_sample(rng, 5, false);
        const auto exact = mann_whitney_u(x, y, Alternative::greater);
        REQUIRE(exact.method == TestMethod::exact);

        // tie-free normal approximation of the same data
        const double n = 5, m = 5, total = 10;
        const double mean = n * m / 2.0;
        const double sigma = std::sqrt(n * m * (total + 1.0) / 12.0);
        const double z = (exact.u_statistic - mean - 0.5) / sigma;
        const double approx_p = 0.5 * std::erfc(z / std::sqrt(2.0));
        CHECK(std::abs(exact.p_value - approx_p) <= 0.02);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("U(x,y) + U(y,x) == n*m with tie credit") {
    RngStream rng(1234);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform01() * 10);
        const int m = 2 + static_cast<int>(rng.uniform01() * 10);
        const bool grid = rng.uniform01() < 0.5; // force ties half the time
        const auto x = random_sample(rng, n, grid);
        const auto y = random_sample(rng, m, grid);
        const auto forward = mann_whitney_u(x, y, Alternative::two_sided);
        const auto backward = mann_whitney_u(y, x, Alternative::two_sided);
        CHECK(forward.u_statistic + backward.u_statistic ==
              doctest::Approx(static_cast<double>(n * m)).epsilon(1e-12));
    }
}

TEST_CASE("rank statistics ignore shift and positive scaling") {
    RngStream rng(555);
    const auto x = random_sample(rng, 8, false);
    const auto y = random_sample(rng, 6, false);
    const auto base = mann_whitney_u(x, y, Alternative::greater);

    auto x_shift = x;
    auto y_shift = y;
    for (auto& v : x_shift) v = v * 3.5 + 11.0;
    for (auto& v : y_shift) v = v * 3.5 + 11.0;
    const auto moved = mann_whitney_u(x_shift, y_shift, Alternative::greater);
    CHECK(moved.u_statistic == base.u_statistic);
    CHECK(moved.p_value == base.p_value);
}

TEST_CASE("mann_whitney_u rejects undersized samples") {
    const std::vector<double> one = {1.0};
    const std::vector<double> two = {1.0, 2.0};
    CHECK_THROWS_AS(mann_whitney_u(one, two, Alternative::greater), std::invalid_argument);
    CHECK_THROWS_AS(mann_whitney_u(two, one, Alternative::greater), std::invalid_argument);
}

TEST_CASE("box_summary interpolates quartiles between closest ranks") {
    const std::vector<double> simple = {1, 2, 3, 4, 5};
    const auto box = box_summary(simple);
    CHECK(box.min == 1.0);
    CHECK(box.q1 == 2.0);
    CHECK(box.median == 3.0);
    CHECK(box.q3 == 4.0);
    CHECK(box.max == 5.0);

    const std::vector<double> constant = {7, 7, 7};
    const auto flat = box_summary(constant);
    CHECK(flat.min == 7.0);
    CHECK(flat.q1 == 7.0);
    CHECK(flat.median == 7.0);
    CHECK(flat.q3 == 7.0);
    CHECK(flat.max == 7.0);

    // feature counts from a five-fold comparison: sort-and-pick median
    const std::vector<double> feats = {163, 176, 183, 195, 183};
    CHECK(box_summary(feats).median == 183.0);

    CHECK_THROWS_AS(box_summary(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("box_summary fields are always ordered") {
    RngStream rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform01() * 15);
        const auto values = random_sample(rng, n, trial % 2 == 0);
        const auto box = box_summary(values);
        CHECK(box.min <= box.q1);
        CHECK(box.q1 <= box.median);
        CHECK(box.median <= box.q3);
        CHECK(box.q3 <= box.max);
    }
}

TEST_SUITE_END();
