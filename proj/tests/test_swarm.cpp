#include <doctest.h>

#include <cmath>

#include "aapso/rng.hpp"
#include "aapso/swarm.hpp"
#include "support/oracles.hpp"

using namespace aapso;
using aapso::testing::DrawTape;

namespace {

// Two well-separated clusters; the first feature alone separates the classes.
Dataset separable_clusters(int per_class, int n_features, std::uint64_t seed) {
    RngStream rng(seed);
    Matrix features(2 * per_class, n_features);
    std::vector<std::string> labels;
    for (int i = 0; i < 2 * per_class; ++i) {
        const bool hi = i >= per_class;
        features(i, 0) = (hi ? 0.8 : 0.2) + 0.05 * (rng.uniform01() - 0.5);
        for (int j = 1; j < n_features; ++j) features(i, j) = rng.uniform01();
        labels.push_back(hi ? "hi" : "lo");
    }
    std::vector<std::string> names;
    for (int j = 0; j < n_features; ++j) names.push_back("f" + std::to_string(j));
    return Dataset(std::move(features), std::move(labels), std::move(names));
}

} // namespace

TEST_SUITE_BEGIN("swarm");

TEST_CASE("sigmoid hits the analytic anchor points") {
    CHECK(sigmoid(0.0) == 0.5);
    CHECK(sigmoid(std::log(4.0)) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(sigmoid(-std::log(4.0)) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("sigmoid is symmetric and strictly increasing") {
    RngStream rng(12);
    double prev = sigmoid(-40.0);
    for (int i = 0; i < 200; ++i) {
        const double x = -20.0 + 0.2 * i;
        const double s = sigmoid(x);
        CHECK(s > prev);
        prev = s;
        CHECK(std::abs(sigmoid(-x) - (1.0 - s)) <= 1e-12);
    }
    for (int i = 0; i < 100; ++i) {
        const double x = 30.0 * (rng.uniform01() - 0.5);
        CHECK(std::abs(sigmoid(-x) - (1.0 - sigmoid(x))) <= 1e-12);
    }
}

TEST_CASE("binarize compares sigmoid(v) against one draw") {
    DrawTape tape({0.3, 0.3});
    CHECK(binarize(0.0, tape) == 1);    // 0.5 >= 0.3
    CHECK(binarize(-10.0, tape) == 0);  // sigmoid ~ 4.5e-5 < 0.3
    CHECK(tape.exhausted());            // exactly one draw per call

    RngStream rng(77);
    for (int i = 0; i < 20; ++i) CHECK(binarize(30.0, rng) == 1); // saturated
}

TEST_CASE("binarize selects at the sigmoid rate empirically") {
    RngStream rng(2024);
    int ones = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ones += binarize(0.0, rng);
    const double rate = static_cast<double>(ones) / draws;
    CHECK(rate == doctest::Approx(0.5).epsilon(0.04)); // 0.5 +- 0.02
}

TEST_CASE("fitness_value implements the weighted accuracy/reduction blend") {
    const FitnessParams full{0.98, 512};
    CHECK(fitness_value(1.0, 512, full) == doctest::Approx(0.98).epsilon(1e-12));
    CHECK(fitness_value(0.0, 512, full) == 0.0);

    // fold-1 style values, checked against the one-line arithmetic oracle
    const double expected = 0.98 * 0.9837 + 0.02 * (512.0 - 163.0) / 512.0;
    const double got = fitness_value(0.9837, 163, full);
    CHECK(got == doctest::Approx(expected).epsilon(1e-15));
    CHECK(std::abs(got - 0.97766) <= 1e-5);

    CHECK_THROWS_AS(fitness_value(0.5, 0, full), std::invalid_argument);
    CHECK_THROWS_AS(fitness_value(0.5, 513, full), std::invalid_argument);
}

TEST_CASE("fitness strictly prefers fewer features at equal accuracy") {
    const FitnessParams params{0.98, 64};
    double prev = fitness_value(0.9, 64, params);
    for (int d = 63; d >= 1; --d) {
        const double f = fitness_value(0.9, d, params);
        CHECK(f > prev);
        prev = f;
    }
}

TEST_CASE("improves_best breaks ties toward fewer features, then the incumbent") {
    CHECK(improves_best(0.9, 5, 0.8, 3));
    CHECK_FALSE(improves_best(0.7, 1, 0.8, 3));
    CHECK(improves_best(0.8, 2, 0.8, 3));        // tie, fewer features
    CHECK_FALSE(improves_best(0.8, 3, 0.8, 3));  // tie, same count: incumbent
    CHECK_FALSE(improves_best(0.8, 4, 0.8, 3));  // tie, more features
    // candidates below the incumbent never replace it, even inside the band
    CHECK_FALSE(improves_best(0.8 - 1e-13, 2, 0.8, 3));
    CHECK_FALSE(improves_best(0.8 - 1e-13, 5, 0.8, 3));
}

TEST_CASE("repair_mask only touches empty masks") {
    DrawTape tape({0.4});
    Mask ok(3);
    ok << 1, 0, 1;
    CHECK((repair_mask(ok, tape) == ok).all());
    CHECK(tape.consumed() == 0);

    Mask empty = Mask::Zero(3);
    const auto repaired = repair_mask(empty, tape);
    CHECK(repaired.sum() == 1);
    CHECK(repaired[1] == 1); // floor(0.4 * 3)

    Mask single = Mask::Zero(1);
    RngStream rng(5);
    CHECK(repair_mask(single, rng)[0] == 1);
}

TEST_CASE("init_swarm is reproducible and well-formed") {
    RngStream a(1);
    RngStream b(1);
    const auto s1 = init_swarm(20, 512, a);
    const auto s2 = init_swarm(20, 512, b);
    REQUIRE(s1.agents.size() == 20);
    for (std::size_t i = 0; i < s1.agents.size(); ++i) {
        CHECK((s1.agents[i].mask == s2.agents[i].mask).all());
        CHECK((s1.agents[i].velocity == s2.agents[i].velocity).all());
        CHECK(s1.agents[i].mask.sum() >= 1);
        CHECK(s1.agents[i].velocity.minCoeff() >= 0.0);
        CHECK(s1.agents[i].velocity.maxCoeff() <= 1.0);
        CHECK((s1.agents[i].pbest_mask == s1.agents[i].mask).all());
    }
    RngStream c(3);
    CHECK_THROWS_AS(init_swarm(1, 4, c), std::invalid_argument);
}

TEST_CASE("evaluate_mask is pure and finds separable structure") {
    const auto data = separable_clusters(20, 4, 9);
    const auto fit = take_rows(data, std::vector<Eigen::Index>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9,
                                                               20, 21, 22, 23, 24, 25, 26, 27, 28, 29});
    const auto val = take_rows(data, std::vector<Eigen::Index>{10, 11, 12, 13, 14,
                                                               30, 31, 32, 33, 34});
    const FitnessParams params{0.98, 4};
    const KnnConfig knn{.k = 3};

    Mask informative(4);
    informative << 1, 0, 0, 0;
    const auto [fitness, accuracy] = evaluate_mask(informative, fit, val, knn, params);
    CHECK(accuracy == 1.0);
    CHECK(fitness == doctest::Approx(0.98 + 0.02 * 3.0 / 4.0).epsilon(1e-12));

    const auto again = evaluate_mask(informative, fit, val, knn, params);
    CHECK(again.first == fitness);
    CHECK(again.second == accuracy);

    // same accuracy on two masks -> fewer features wins on fitness
    Mask wider(4);
    wider << 1, 1, 0, 0;
    const auto [wider_fitness, wider_accuracy] = evaluate_mask(wider, fit, val, knn, params);
    if (wider_accuracy == accuracy) CHECK(fitness > wider_fitness);
}

TEST_CASE("a constant column classifies at the degenerate-geometry rate") {
    // all points identical after masking: the oracle defines the expectation
    const auto data = separable_clusters(10, 3, 33);
    Matrix constant = data.features();
    constant.col(2).setZero();
    const Dataset flat(constant, data.labels(), data.feature_names());

    const auto fit = take_rows(flat, std::vector<Eigen::Index>{0, 1, 2, 3, 4, 10, 11, 12, 13, 14});
    const auto val = take_rows(flat, std::vector<Eigen::Index>{5, 6, 7, 8, 15, 16, 17, 18});
    Mask only_constant = Mask::Zero(3);
    only_constant[2] = 1;

    const KnnConfig knn{.k = 3};
    const auto [fitness, accuracy] =
        evaluate_mask(only_constant, fit, val, knn, FitnessParams{0.98, 3});

    const auto expected = testing::knn_oracle(select_columns(fit, only_constant),
                                              select_columns(val, only_constant), 3);
    int correct = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        correct += expected[i] == val.labels()[i];
    }
    CHECK(accuracy == doctest::Approx(static_cast<double>(correct) / 8.0));
    CHECK(fitness == doctest::Approx(0.98 * accuracy + 0.02 * 2.0 / 3.0));
}

TEST_CASE("evaluate_swarm keeps gbest consistent with the pbest pool") {
    const auto data = separable_clusters(15, 6, 55);
    const auto [train, val] = stratified_holdout(data, 0.3, 4);
    RngStream rng(21);
    auto state = init_swarm(8, 6, rng);
    const EvalContext ctx{train, val, KnnConfig{.k = 3}, FitnessParams{0.98, 6}};
    evaluate_swarm(state, ctx);

    double best = -1.0;
    for (const auto& agent : state.agents) {
        CHECK(agent.pbest_fitness == agent.fitness); // first evaluation
        best = std::max(best, agent.pbest_fitness);
    }
    CHECK(state.gbest_fitness <= best);
    CHECK(state.gbest_fitness >= best - 1e-12);
    CHECK(state.gbest_mask.sum() >= 1);
}

TEST_SUITE_END();
