#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "aapso/knn.hpp"
#include "aapso/rng.hpp"
#include "support/oracles.hpp"

using namespace aapso;

namespace {

Dataset points(const std::vector<std::vector<double>>& rows,
               const std::vector<std::string>& labels) {
    Matrix features(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    std::vector<std::string> names(rows.front().size(), "f");
    for (std::size_t j = 0; j < names.size(); ++j) names[j] += std::to_string(j);
    return Dataset(std::move(features), labels, std::move(names));
}

Dataset random_points(int n, int d, std::uint64_t seed, int classes = 2) {
    RngStream rng(seed);
    Matrix features(n, d);
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) features(i, j) = rng.uniform01();
        labels.push_back("c" + std::to_string(static_cast<int>(rng.uniform01() * classes) % classes));
    }
    // ensure at least two classes survive the draw
    labels[0] = "c0";
    labels[static_cast<std::size_t>(n - 1)] = "c1";
    std::vector<std::string> names;
    for (int j = 0; j < d; ++j) names.push_back("f" + std::to_string(j));
    return Dataset(std::move(features), std::move(labels), std::move(names));
}

} // namespace

TEST_SUITE_BEGIN("knn");

TEST_CASE("nearest neighbor wins with k=1") {
    const auto train = points({{0.0}, {1.0}}, {"A", "B"});
    const auto query = points({{0.1}, {0.9}}, {"?", "x"});
    const auto pred = knn_classify(train, query, {.k = 1});
    CHECK(pred == std::vector<std::string>{"A", "B"});
}

TEST_CASE("majority vote with k=3 matches the brute-force ranking") {
    const auto train = points({{0.0}, {0.1}, {5.0}, {5.1}, {0.2}}, {"A", "A", "B", "B", "A"});
    const auto query = points({{0.05}, {5.05}}, {"?", "x"});
    const auto pred = knn_classify(train, query, {.k = 3});
    CHECK(pred[0] == "A");
    CHECK(pred == testing::knn_oracle(train, query, 3));
}

TEST_CASE("a query equal to a training point takes that point's label") {
    const auto train = points({{1.0, 2.0}, {3.0, 4.0}}, {"A", "B"});
    const auto query = points({{3.0, 4.0}, {1.0, 2.0}}, {"?", "x"});
    CHECK(knn_classify(train, query, {.k = 1}) == std::vector<std::string>{"B", "A"});
}

TEST_CASE("knn_classify validates its inputs") {
    const auto train = points({{0.0}, {1.0}, {2.0}}, {"A", "B", "A"});
    const auto query1 = points({{0.5, 0.5}, {1.5, 1.5}}, {"?", "x"});
    CHECK_THROWS_AS(knn_classify(train, query1, {.k = 1}), std::invalid_argument);
    const auto query2 = points({{0.5}, {1.5}}, {"?", "x"});
    CHECK_THROWS_AS(knn_classify(train, query2, {.k = 5}), std::invalid_argument);
    CHECK_THROWS_AS(knn_classify(train, query2, {.k = 2}), std::invalid_argument);
}

TEST_CASE("classifying the training set against itself is exact at k=1") {
    const auto data = random_points(40, 4, 202);
    const auto pred = knn_classify(data, data, {.k = 1});
    CHECK(pred == data.labels());
}

TEST_CASE("predictions are invariant to training-row permutation when distances are distinct") {
    const auto train = random_points(25, 3, 7);
    const auto query = random_points(10, 3, 8);
    const auto baseline = knn_classify(train, query, {.k = 3});

    std::vector<Eigen::Index> perm(25);
    std::iota(perm.begin(), perm.end(), 0);
    RngStream rng(99);
    for (std::size_t i = perm.size(); i > 1; --i) {
        std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.uniform01() * static_cast<double>(i))]);
    }
    const auto shuffled = take_rows(train, perm);
    CHECK(knn_classify(shuffled, query, {.k = 3}) == baseline);
}

TEST_CASE("duplicated queries keep their predictions") {
    const auto train = random_points(30, 5, 31);
    auto query = random_points(6, 5, 32);
    std::vector<Eigen::Index> doubled = {0, 1, 2, 3, 4, 5, 2};
    const auto dup = take_rows(query, doubled);
    const auto pred = knn_classify(train, dup, {.k = 3});
    CHECK(pred[2] == pred[6]);
}

TEST_CASE("knn matches the brute-force oracle on random instances") {
    RngStream rng(500);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 5 + static_cast<int>(rng.uniform01() * 95);
        const int d = 1 + static_cast<int>(rng.uniform01() * 19);
        const int k_raw = 1 + static_cast<int>(rng.uniform01() * std::min(n - 1, 9));
        const int k = std::min(k_raw | 1, n);
        const auto train = random_points(n, d, 1000 + static_cast<std::uint64_t>(trial));
        const auto query = random_points(12, d, 2000 + static_cast<std::uint64_t>(trial));
        CHECK(knn_classify(train, query, {.k = k}) == testing::knn_oracle(train, query, k));
    }
}

TEST_CASE("score on perfect and all-wrong predictions") {
    const std::vector<std::string> truth = {"P", "N", "P", "N"};
    const auto perfect = score(truth, truth, "P");
    CHECK(perfect.accuracy == 1.0);
    CHECK(perfect.f1 == 1.0);
    CHECK(perfect.confusion.sum() == 4);

    const std::vector<std::string> flipped = {"N", "P", "N", "P"};
    CHECK(score(flipped, truth, "P").accuracy == 0.0);
}

TEST_CASE("score matches confusion-matrix arithmetic on the mixed case") {
    const std::vector<std::string> truth = {"P", "P", "N", "N"};
    const std::vector<std::string> pred = {"P", "N", "N", "N"};
    const auto m = score(pred, truth, "P");
    CHECK(m.accuracy == doctest::Approx(0.75));
    CHECK(m.precision == doctest::Approx(1.0));
    CHECK(m.recall == doctest::Approx(0.5));
    CHECK(m.f1 == doctest::Approx(2.0 / 3.0));
    // binary f1 is the harmonic mean of precision and recall
    CHECK(m.f1 == doctest::Approx(2.0 * m.precision * m.recall / (m.precision + m.recall)));
}

TEST_CASE("score macro-averages three or more classes") {
    const std::vector<std::string> truth = {"a", "a", "b", "b", "c", "c"};
    const std::vector<std::string> pred = {"a", "b", "b", "c", "c", "a"};
    const auto m = score(pred, truth, "ignored");
    CHECK(m.accuracy == doctest::Approx(0.5));
    CHECK(m.precision == doctest::Approx(0.5));
    CHECK(m.recall == doctest::Approx(0.5));
    CHECK(m.f1 == doctest::Approx(0.5));
}

TEST_CASE("score validates inputs") {
    const std::vector<std::string> truth = {"P", "N"};
    CHECK_THROWS_AS(score({"P"}, truth, "P"), std::invalid_argument);
    CHECK_THROWS_AS(score({"P", "N"}, truth, "Q"), std::invalid_argument);
}

TEST_SUITE_END();
