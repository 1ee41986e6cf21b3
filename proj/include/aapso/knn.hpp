#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "aapso/dataset.hpp"

namespace aapso {

enum class Distance { euclidean };

struct KnnConfig {
    int k = 5; // positive and odd
    Distance distance = Distance::euclidean;

    /// Throws ConfigError unless k is a positive odd integer.
    void validate() const;
};

/// Classify each query row by majority vote among its k nearest training
/// rows. Distances are squared Euclidean (rank-equivalent to Euclidean);
/// equal distances are broken toward the lower training-row index, and a
/// tied vote falls back to the label of the single nearest neighbor.
/// Throws std::invalid_argument on a feature-count mismatch, k > n_train,
/// or an even/non-positive k.
std::vector<std::string> knn_classify(const Dataset& train, const Dataset& queries,
                                      const KnnConfig& config);

/// Classification quality summary. `confusion(i, j)` counts rows whose true
/// class is `classes[i]` and predicted class is `classes[j]`.
struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    Eigen::MatrixXi confusion;
    std::vector<std::string> classes; // confusion row/column order, sorted
};

/// Score predictions against ground truth. With two classes in `truth`,
/// precision/recall/F1 are computed w.r.t. `positive_class` (which must
/// appear in truth); with more classes they are macro-averaged over classes
/// and `positive_class` is ignored. Accuracy is label-agnostic.
Metrics score(const std::vector<std::string>& predicted,
              const std::vector<std::string>& truth,
              const std::string& positive_class);

} // namespace aapso
