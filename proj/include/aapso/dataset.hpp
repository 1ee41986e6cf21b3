#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aapso/errors.hpp"

namespace aapso {

using Matrix = Eigen::MatrixXd;

/// Binary feature mask over dataset columns: 1 = column selected.
using Mask = Eigen::ArrayXi;

/// Immutable tabular classification dataset: a dense feature matrix
/// (n_samples x n_features), one categorical label per row, and one name
/// per feature column. Construction validates:
///   - n_samples >= 2, n_features >= 1, matching label/name lengths,
///   - at least 2 distinct label values,
///   - every feature value finite.
/// Violations throw DataError. Instances are safe to share across threads.
class Dataset {
public:
    Dataset(Matrix features, std::vector<std::string> labels,
            std::vector<std::string> feature_names);

    const Matrix& features() const { return features_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::string>& feature_names() const { return feature_names_; }

    Eigen::Index n_samples() const { return features_.rows(); }
    Eigen::Index n_features() const { return features_.cols(); }

    /// Distinct label values in lexicographic order.
    std::vector<std::string> classes() const;

private:
    Matrix features_;
    std::vector<std::string> labels_;
    std::vector<std::string> feature_names_;
};

/// One cross-validation fold: row indices for the train and test partitions.
struct FoldSplit {
    std::vector<Eigen::Index> train_indices;
    std::vector<Eigen::Index> test_indices;
};

/// Stratified k-fold plan. Test sets are pairwise disjoint and cover all
/// rows; each fold's train set is the complement of its test set.
struct FoldPlan {
    std::vector<FoldSplit> folds;

    int n_folds() const { return static_cast<int>(folds.size()); }
};

/// Per-feature min/max fitted on a training partition.
struct NormalizationStats {
    Eigen::VectorXd per_feature_min;
    Eigen::VectorXd per_feature_max;
};

/// Load a comma-delimited text file.
///
/// Format: UTF-8, one row per line (LF or CRLF), comma separator, no quoting;
/// cells may carry surrounding spaces/tabs. With `has_header` the first line
/// names the columns. `label_column` picks the label column by header name
/// (header required) or, failing a name match, by 0-based column index. All
/// remaining cells must parse as decimal reals.
///
/// Throws DataError for a missing file, ragged rows, a non-numeric feature
/// cell, an unresolvable label column, or a single-class label column.
Dataset load_delimited(const std::filesystem::path& path,
                       const std::string& label_column, bool has_header);

/// Min/max per feature, computed from `train` only.
NormalizationStats fit_normalizer(const Dataset& train);

/// Map each value x to (x - min) / (max - min) using fitted stats. Constant
/// columns (max == min) map to 0. Values outside the fitted range are not
/// clipped, so unseen test data may fall outside [0, 1].
Dataset apply_normalizer(const Dataset& data, const NormalizationStats& stats);

/// Stratified k-fold plan, deterministic per seed. Each class's rows are
/// shuffled (Fisher-Yates on the seeded stream, classes in sorted order) and
/// dealt round-robin across folds, so per-fold class counts differ from an
/// even split by at most one sample. Requires k >= 2 and at least k samples
/// in every class.
FoldPlan stratified_kfold(const Dataset& data, int k, std::uint64_t seed);

/// Stratified holdout split, deterministic per seed. The test partition gets
/// round(test_fraction * n_samples) rows, allocated per class by largest
/// remainder. Throws DataError if either partition ends up empty or loses a
/// class entirely.
std::pair<Dataset, Dataset> stratified_holdout(const Dataset& data,
                                               double test_fraction,
                                               std::uint64_t seed);

/// Keep only the columns whose mask bit is 1 (order preserved).
/// The mask must have one 0/1 entry per feature and at least one bit set.
Dataset select_columns(const Dataset& data, const Mask& mask);

/// Dataset restricted to the given rows, in the given order.
Dataset take_rows(const Dataset& data, std::span<const Eigen::Index> rows);

} // namespace aapso
