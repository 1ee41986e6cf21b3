#include "aapso/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "aapso/rng.hpp"

namespace aapso {

namespace {

std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r";
    const auto begin = s.find_first_not_of(ws);
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(ws);
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        const auto piece = comma == std::string::npos
                               ? std::string_view(line).substr(start)
                               : std::string_view(line).substr(start, comma - start);
        cells.emplace_back(trim(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

bool parse_real(std::string_view cell, double& out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !cell.empty();
}

// Fisher-Yates with one uniform01 draw per step.
void shuffle_indices(std::vector<Eigen::Index>& idx, RngStream& rng) {
    for (std::size_t i = idx.size(); i > 1; --i) {
        const auto j = std::min<std::size_t>(i - 1, static_cast<std::size_t>(rng.uniform01() * static_cast<double>(i)));
        std::swap(idx[i - 1], idx[j]);
    }
}

std::map<std::string, std::vector<Eigen::Index>> group_by_class(const Dataset& data) {
    std::map<std::string, std::vector<Eigen::Index>> groups;
    for (Eigen::Index i = 0; i < data.n_samples(); ++i) {
        groups[data.labels()[i]].push_back(i);
    }
    return groups;
}

} // namespace

Dataset::Dataset(Matrix features, std::vector<std::string> labels,
                 std::vector<std::string> feature_names)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      feature_names_(std::move(feature_names)) {
    if (features_.rows() < 2) throw DataError("dataset needs at least 2 samples");
    if (features_.cols() < 1) throw DataError("dataset needs at least 1 feature");
    if (static_cast<Eigen::Index>(labels_.size()) != features_.rows()) {
        throw DataError("label count does not match sample count");
    }
    if (static_cast<Eigen::Index>(feature_names_.size()) != features_.cols()) {
        throw DataError("feature name count does not match feature count");
    }
    const std::set<std::string> distinct(labels_.begin(), labels_.end());
    if (distinct.size() < 2) throw DataError("labels contain fewer than 2 distinct classes");
    if (!features_.allFinite()) throw DataError("dataset contains non-finite feature values");
}

std::vector<std::string> Dataset::classes() const {
    std::set<std::string> distinct(labels_.begin(), labels_.end());
    return {distinct.begin(), distinct.end()};
}

Dataset load_delimited(const std::filesystem::path& path,
                       const std::string& label_column, bool has_header) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file: " + path.string());

    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3); // UTF-8 BOM
        if (trim(line).empty()) continue; // blank lines (incl. trailing) are skipped
        auto cells = split_row(line);
        if (width == 0) {
            width = cells.size();
        } else if (cells.size() != width) {
            std::ostringstream msg;
            msg << path.string() << ": line " << line_no << " has " << cells.size()
                << " columns, expected " << width;
            throw DataError(msg.str());
        }
        rows.push_back(std::move(cells));
    }
    if (rows.empty()) throw DataError(path.string() + ": file has no rows");
    if (width < 2) throw DataError(path.string() + ": need at least one feature column and a label column");

    std::vector<std::string> header;
    if (has_header) {
        header = rows.front();
        rows.erase(rows.begin());
        if (rows.empty()) throw DataError(path.string() + ": no data rows after header");
    }

    // Resolve the label column: header name first, then 0-based index.
    std::size_t label_idx = width;
    if (has_header) {
        const auto it = std::find(header.begin(), header.end(), label_column);
        if (it != header.end()) label_idx = static_cast<std::size_t>(it - header.begin());
    }
    if (label_idx == width) {
        std::size_t parsed = 0;
        const auto [ptr, ec] =
            std::from_chars(label_column.data(), label_column.data() + label_column.size(), parsed);
        if (ec == std::errc() && ptr == label_column.data() + label_column.size() && parsed < width) {
            label_idx = parsed;
        } else {
            throw DataError(path.string() + ": label column '" + label_column +
                            "' is neither a header name nor a valid column index");
        }
    }

    const auto n_samples = static_cast<Eigen::Index>(rows.size());
    const auto n_features = static_cast<Eigen::Index>(width - 1);
    Matrix features(n_samples, n_features);
    std::vector<std::string> labels;
    labels.reserve(rows.size());

    for (std::size_t r = 0; r < rows.size(); ++r) {
        Eigen::Index col = 0;
        for (std::size_t c = 0; c < width; ++c) {
            if (c == label_idx) {
                if (rows[r][c].empty()) {
                    std::ostringstream msg;
                    msg << path.string() << ": empty label in data row " << r + 1;
                    throw DataError(msg.str());
                }
                labels.push_back(rows[r][c]);
                continue;
            }
            double value = 0.0;
            if (!parse_real(rows[r][c], value)) {
                std::ostringstream msg;
                msg << path.string() << ": data row " << r + 1 << ", column " << c + 1 << ": '"
                    << rows[r][c] << "' is not numeric";
                throw DataError(msg.str());
            }
            features(static_cast<Eigen::Index>(r), col++) = value;
        }
    }

    std::vector<std::string> names;
    names.reserve(width - 1);
    for (std::size_t c = 0; c < width; ++c) {
        if (c == label_idx) continue;
        names.push_back(has_header ? header[c] : "f" + std::to_string(c));
    }

    return Dataset(std::move(features), std::move(labels), std::move(names));
}

NormalizationStats fit_normalizer(const Dataset& train) {
    return NormalizationStats{train.features().colwise().minCoeff(),
                              train.features().colwise().maxCoeff()};
}

Dataset apply_normalizer(const Dataset& data, const NormalizationStats& stats) {
    if (stats.per_feature_min.size() != data.n_features() ||
        stats.per_feature_max.size() != data.n_features()) {
        throw std::invalid_argument("normalizer dimension does not match dataset");
    }
    Matrix scaled(data.n_samples(), data.n_features());
    for (Eigen::Index j = 0; j < data.n_features(); ++j) {
        const double lo = stats.per_feature_min[j];
        const double hi = stats.per_feature_max[j];
        if (hi == lo) {
            scaled.col(j).setZero();
        } else {
            scaled.col(j) = (data.features().col(j).array() - lo) / (hi - lo);
        }
    }
    return Dataset(std::move(scaled), data.labels(), data.feature_names());
}

FoldPlan stratified_kfold(const Dataset& data, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("stratified_kfold needs k >= 2");
    auto groups = group_by_class(data);
    for (const auto& [label, idx] : groups) {
        if (static_cast<int>(idx.size()) < k) {
            throw DataError("class '" + label + "' has " + std::to_string(idx.size()) +
                            " samples, fewer than k = " + std::to_string(k));
        }
    }

    RngStream rng(seed);
    std::vector<std::vector<Eigen::Index>> test_of(static_cast<std::size_t>(k));
    int class_rank = 0;
    for (auto& [label, idx] : groups) {
        shuffle_indices(idx, rng);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            test_of[(static_cast<std::size_t>(class_rank) + i) % static_cast<std::size_t>(k)]
                .push_back(idx[i]);
        }
        ++class_rank;
    }

    FoldPlan plan;
    plan.folds.reserve(static_cast<std::size_t>(k));
    for (auto& test : test_of) {
        std::sort(test.begin(), test.end());
        FoldSplit split;
        split.test_indices = std::move(test);
        split.train_indices.reserve(static_cast<std::size_t>(data.n_samples()) - split.test_indices.size());
        std::size_t cursor = 0;
        for (Eigen::Index i = 0; i < data.n_samples(); ++i) {
            if (cursor < split.test_indices.size() && split.test_indices[cursor] == i) {
                ++cursor;
            } else {
                split.train_indices.push_back(i);
            }
        }
        plan.folds.push_back(std::move(split));
    }
    return plan;
}

std::pair<Dataset, Dataset> stratified_holdout(const Dataset& data, double test_fraction,
                                               std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw std::invalid_argument("test_fraction must lie in (0, 1)");
    }
    const auto n = data.n_samples();
    const auto total_test = static_cast<Eigen::Index>(std::lround(test_fraction * static_cast<double>(n)));
    if (total_test <= 0) throw DataError("holdout produces an empty test partition");
    if (total_test >= n) throw DataError("holdout produces an empty train partition");

    auto groups = group_by_class(data);

    // Largest-remainder allocation of the test quota across classes.
    std::vector<std::pair<std::string, Eigen::Index>> quotas;
    std::vector<std::pair<double, std::size_t>> remainders;
    Eigen::Index assigned = 0;
    for (const auto& [label, idx] : groups) {
        const double exact = test_fraction * static_cast<double>(idx.size());
        const auto base = static_cast<Eigen::Index>(std::floor(exact));
        quotas.emplace_back(label, base);
        remainders.emplace_back(exact - std::floor(exact), quotas.size() - 1);
        assigned += base;
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; assigned < total_test && i < remainders.size(); ++i) {
        ++quotas[remainders[i].second].second;
        ++assigned;
    }

    RngStream rng(seed);
    std::vector<Eigen::Index> test_rows;
    std::vector<Eigen::Index> train_rows;
    std::size_t q = 0;
    for (auto& [label, idx] : groups) {
        const auto quota = quotas[q++].second;
        if (quota == 0) {
            throw DataError("class '" + label + "' would have no samples in the test partition");
        }
        if (quota >= static_cast<Eigen::Index>(idx.size())) {
            throw DataError("class '" + label + "' would have no samples in the train partition");
        }
        shuffle_indices(idx, rng);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            (static_cast<Eigen::Index>(i) < quota ? test_rows : train_rows).push_back(idx[i]);
        }
    }
    std::sort(test_rows.begin(), test_rows.end());
    std::sort(train_rows.begin(), train_rows.end());
    return {take_rows(data, train_rows), take_rows(data, test_rows)};
}

Dataset select_columns(const Dataset& data, const Mask& mask) {
    if (mask.size() != data.n_features()) {
        throw std::invalid_argument("mask length does not match feature count");
    }
    for (Eigen::Index j = 0; j < mask.size(); ++j) {
        if (mask[j] != 0 && mask[j] != 1) {
            throw std::invalid_argument("mask entries must be 0 or 1");
        }
    }
    const Eigen::Index kept = mask.sum();
    if (kept == 0) throw std::invalid_argument("mask selects no features");

    Matrix features(data.n_samples(), kept);
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(kept));
    Eigen::Index out = 0;
    for (Eigen::Index j = 0; j < mask.size(); ++j) {
        if (mask[j] == 1) {
            features.col(out++) = data.features().col(j);
            names.push_back(data.feature_names()[static_cast<std::size_t>(j)]);
        }
    }
    return Dataset(std::move(features), data.labels(), std::move(names));
}

Dataset take_rows(const Dataset& data, std::span<const Eigen::Index> rows) {
    Matrix features(static_cast<Eigen::Index>(rows.size()), data.n_features());
    std::vector<std::string> labels;
    labels.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        features.row(static_cast<Eigen::Index>(i)) = data.features().row(rows[i]);
        labels.push_back(data.labels()[static_cast<std::size_t>(rows[i])]);
    }
    return Dataset(std::move(features), std::move(labels), data.feature_names());
}

} // namespace aapso
