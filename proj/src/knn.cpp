#include "aapso/knn.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "aapso/errors.hpp"

namespace aapso {

void KnnConfig::validate() const {
    if (k < 1) throw ConfigError("knn_k: must be a positive integer");
    if (k % 2 == 0) throw ConfigError("knn_k: must be odd to limit vote ties");
}

std::vector<std::string> knn_classify(const Dataset& train, const Dataset& queries,
                                      const KnnConfig& config) {
    if (train.n_features() != queries.n_features()) {
        throw std::invalid_argument("train and query feature counts differ");
    }
    if (config.k < 1 || config.k % 2 == 0) {
        throw std::invalid_argument("neighbor count must be positive and odd");
    }
    const auto n_train = train.n_samples();
    if (config.k > n_train) {
        throw std::invalid_argument("neighbor count exceeds training set size");
    }

    // Intern labels once; votes are counted per code.
    std::map<std::string, int> code_of;
    std::vector<int> codes(static_cast<std::size_t>(n_train));
    std::vector<const std::string*> label_of_code;
    for (Eigen::Index i = 0; i < n_train; ++i) {
        const auto& label = train.labels()[static_cast<std::size_t>(i)];
        auto [it, inserted] = code_of.try_emplace(label, static_cast<int>(label_of_code.size()));
        if (inserted) label_of_code.push_back(&it->first);
        codes[static_cast<std::size_t>(i)] = it->second;
    }
    const auto n_classes = label_of_code.size();

    std::vector<std::string> predictions;
    predictions.reserve(static_cast<std::size_t>(queries.n_samples()));
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n_train));
    std::vector<int> votes(n_classes);
    Eigen::VectorXd dist(n_train);

    for (Eigen::Index q = 0; q < queries.n_samples(); ++q) {
        dist = (train.features().rowwise() - queries.features().row(q)).rowwise().squaredNorm();
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        // Squared distances preserve the Euclidean ranking; ties go to the
        // lower training-row index.
        std::partial_sort(order.begin(), order.begin() + config.k, order.end(),
                          [&dist](Eigen::Index a, Eigen::Index b) {
                              if (dist[a] != dist[b]) return dist[a] < dist[b];
                              return a < b;
                          });

        std::fill(votes.begin(), votes.end(), 0);
        for (int i = 0; i < config.k; ++i) {
            ++votes[static_cast<std::size_t>(codes[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])])];
        }
        const int top = *std::max_element(votes.begin(), votes.end());
        int winner = -1;
        bool tied = false;
        for (std::size_t c = 0; c < n_classes; ++c) {
            if (votes[c] == top) {
                tied = winner >= 0;
                if (winner < 0) winner = static_cast<int>(c);
            }
        }
        if (tied) winner = codes[static_cast<std::size_t>(order[0])]; // fall back to 1-NN
        predictions.push_back(*label_of_code[static_cast<std::size_t>(winner)]);
    }
    return predictions;
}

namespace {

struct BinaryCounts {
    long tp = 0;
    long fp = 0;
    long fn = 0;
};

BinaryCounts counts_for(const Eigen::MatrixXi& confusion, Eigen::Index cls) {
    BinaryCounts c;
    c.tp = confusion(cls, cls);
    for (Eigen::Index i = 0; i < confusion.rows(); ++i) {
        if (i == cls) continue;
        c.fp += confusion(i, cls);
        c.fn += confusion(cls, i);
    }
    return c;
}

double ratio(long num, long den) { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

double f1_of(double precision, double recall) {
    return precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
}

} // namespace

Metrics score(const std::vector<std::string>& predicted,
              const std::vector<std::string>& truth,
              const std::string& positive_class) {
    if (predicted.size() != truth.size()) {
        throw std::invalid_argument("predicted and truth lengths differ");
    }
    if (truth.empty()) throw std::invalid_argument("cannot score empty label vectors");

    std::map<std::string, Eigen::Index> index_of;
    for (const auto& label : truth) index_of.try_emplace(label, 0);
    for (const auto& label : predicted) index_of.try_emplace(label, 0);
    Metrics m;
    for (auto& [label, idx] : index_of) {
        idx = static_cast<Eigen::Index>(m.classes.size());
        m.classes.push_back(label);
    }

    const auto n_classes = static_cast<Eigen::Index>(m.classes.size());
    m.confusion = Eigen::MatrixXi::Zero(n_classes, n_classes);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++m.confusion(index_of[truth[i]], index_of[predicted[i]]);
    }
    m.accuracy = static_cast<double>(m.confusion.trace()) / static_cast<double>(truth.size());

    std::size_t truth_classes = 0;
    for (Eigen::Index c = 0; c < n_classes; ++c) {
        if (m.confusion.row(c).sum() > 0) ++truth_classes;
    }

    if (truth_classes == 2) {
        const auto pos = index_of.find(positive_class);
        if (pos == index_of.end() || m.confusion.row(pos->second).sum() == 0) {
            throw std::invalid_argument("positive class '" + positive_class +
                                        "' does not appear in the ground truth");
        }
        const auto c = counts_for(m.confusion, pos->second);
        m.precision = ratio(c.tp, c.tp + c.fp);
        m.recall = ratio(c.tp, c.tp + c.fn);
        m.f1 = f1_of(m.precision, m.recall);
    } else {
        // Macro average over classes.
        double p_sum = 0.0, r_sum = 0.0, f_sum = 0.0;
        for (Eigen::Index cls = 0; cls < n_classes; ++cls) {
            const auto c = counts_for(m.confusion, cls);
            const double p = ratio(c.tp, c.tp + c.fp);
            const double r = ratio(c.tp, c.tp + c.fn);
            p_sum += p;
            r_sum += r;
            f_sum += f1_of(p, r);
        }
        m.precision = p_sum / static_cast<double>(n_classes);
        m.recall = r_sum / static_cast<double>(n_classes);
        m.f1 = f_sum / static_cast<double>(n_classes);
    }
    return m;
}

} // namespace aapso
