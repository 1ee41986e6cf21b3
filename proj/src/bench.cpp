#include "aapso/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "aapso/errors.hpp"

namespace aapso {

namespace {

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (const unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string canon(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string format_number(const char* fmt, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, value);
    return buf;
}

std::string mask_to_string(const Mask& mask) {
    std::string bits(static_cast<std::size_t>(mask.size()), '0');
    for (Eigen::Index j = 0; j < mask.size(); ++j) {
        if (mask[j] == 1) bits[static_cast<std::size_t>(j)] = '1';
    }
    return bits;
}

Mask mask_from_string(const std::string& bits) {
    Mask mask(static_cast<Eigen::Index>(bits.size()));
    for (std::size_t j = 0; j < bits.size(); ++j) {
        if (bits[j] != '0' && bits[j] != '1') throw DataError("mask string must be 0/1 only");
        mask[static_cast<Eigen::Index>(j)] = bits[j] == '1' ? 1 : 0;
    }
    return mask;
}

const char* method_name(TestMethod method) {
    return method == TestMethod::exact ? "exact" : "normal_approx";
}

template <typename T>
void read_key(const nlohmann::json& doc, const char* key, T& out) {
    if (!doc.contains(key)) return;
    try {
        doc.at(key).get_to(out);
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string(key) + ": unexpected value type");
    }
}

} // namespace

void ExperimentConfig::validate() const {
    if (dataset_path.empty()) throw ConfigError("dataset: a dataset path is required");
    if (label_column.empty()) throw ConfigError("label_column: a label column is required");
    if (protocol.kind == Protocol::Kind::kfold && protocol.folds < 2) {
        throw ConfigError("folds: k-fold protocol needs at least 2 folds");
    }
    if (protocol.kind == Protocol::Kind::holdout &&
        !(protocol.holdout_fraction > 0.0 && protocol.holdout_fraction < 1.0)) {
        throw ConfigError("holdout_fraction: must lie in (0, 1)");
    }
    if (variants.empty()) throw ConfigError("variants: at least one optimizer variant is required");
    if (seeds.empty()) throw ConfigError("seeds: at least one seed is required");
    swarm.validate();
    knn.validate();
    for (const auto& format : formats) {
        if (format != "table" && format != "json" && format != "csv") {
            throw ConfigError("format: '" + format + "' is not one of table, json, csv");
        }
    }
    if (jobs < 1) throw ConfigError("jobs: must be at least 1");
}

ExperimentConfig config_from_json(const nlohmann::json& doc) {
    static const std::set<std::string> known = {
        "dataset",      "label_column",     "has_header",  "protocol",
        "folds",        "holdout_fraction", "variants",    "seeds",
        "population",   "iterations",       "alpha",       "k_frac",
        "alpha_v",      "beta_v",           "adaptive_c",  "adaptive_schedule",
        "r_per_dimension", "val_fraction",  "knn_k",       "positive_class",
        "out",          "format",           "jobs"};
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    for (const auto& item : doc.items()) {
        if (!known.contains(item.key())) throw ConfigError("unknown config key: " + item.key());
    }

    ExperimentConfig config;
    read_key(doc, "dataset", config.dataset_path);
    read_key(doc, "label_column", config.label_column);
    read_key(doc, "has_header", config.has_header);
    if (doc.contains("protocol")) {
        std::string kind;
        read_key(doc, "protocol", kind);
        if (kind == "kfold") {
            config.protocol.kind = Protocol::Kind::kfold;
        } else if (kind == "holdout") {
            config.protocol.kind = Protocol::Kind::holdout;
        } else {
            throw ConfigError("protocol: '" + kind + "' is not one of kfold, holdout");
        }
    }
    read_key(doc, "folds", config.protocol.folds);
    read_key(doc, "holdout_fraction", config.protocol.holdout_fraction);
    if (doc.contains("variants")) {
        std::vector<std::string> names;
        read_key(doc, "variants", names);
        config.variants.clear();
        for (const auto& name : names) config.variants.push_back(variant_from_string(name));
    }
    read_key(doc, "seeds", config.seeds);
    read_key(doc, "population", config.swarm.population);
    read_key(doc, "iterations", config.swarm.iterations);
    read_key(doc, "alpha", config.swarm.accuracy_weight);
    read_key(doc, "k_frac", config.swarm.altruism.elite_fraction);
    read_key(doc, "alpha_v", config.swarm.altruism.velocity_low);
    read_key(doc, "beta_v", config.swarm.altruism.velocity_high);
    read_key(doc, "adaptive_c", config.swarm.adaptive.time_constant);
    if (doc.contains("adaptive_schedule")) {
        std::string schedule;
        read_key(doc, "adaptive_schedule", schedule);
        if (schedule == "elapsed_time") {
            config.swarm.adaptive.schedule = InertiaSchedule::elapsed_time;
        } else if (schedule == "remaining_time") {
            config.swarm.adaptive.schedule = InertiaSchedule::remaining_time;
        } else {
            throw ConfigError("adaptive_schedule: '" + schedule +
                              "' is not one of elapsed_time, remaining_time");
        }
    }
    read_key(doc, "r_per_dimension", config.swarm.per_dimension_draws);
    read_key(doc, "val_fraction", config.swarm.val_fraction);
    read_key(doc, "knn_k", config.knn.k);
    read_key(doc, "positive_class", config.positive_class);
    read_key(doc, "out", config.out_dir);
    read_key(doc, "format", config.formats);
    read_key(doc, "jobs", config.jobs);
    return config;
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
    nlohmann::json doc;
    doc["dataset"] = config.dataset_path;
    doc["label_column"] = config.label_column;
    doc["has_header"] = config.has_header;
    doc["protocol"] = config.protocol.kind == Protocol::Kind::kfold ? "kfold" : "holdout";
    doc["folds"] = config.protocol.folds;
    doc["holdout_fraction"] = config.protocol.holdout_fraction;
    std::vector<std::string> names;
    for (const auto variant : config.variants) names.push_back(to_string(variant));
    doc["variants"] = names;
    doc["seeds"] = config.seeds;
    doc["population"] = config.swarm.population;
    doc["iterations"] = config.swarm.iterations;
    doc["alpha"] = config.swarm.accuracy_weight;
    doc["k_frac"] = config.swarm.altruism.elite_fraction;
    doc["alpha_v"] = config.swarm.altruism.velocity_low;
    doc["beta_v"] = config.swarm.altruism.velocity_high;
    doc["adaptive_c"] = config.swarm.adaptive.time_constant;
    doc["adaptive_schedule"] = config.swarm.adaptive.schedule == InertiaSchedule::elapsed_time
                                   ? "elapsed_time"
                                   : "remaining_time";
    doc["r_per_dimension"] = config.swarm.per_dimension_draws;
    doc["val_fraction"] = config.swarm.val_fraction;
    doc["knn_k"] = config.knn.k;
    doc["positive_class"] = config.positive_class;
    doc["out"] = config.out_dir;
    doc["format"] = config.formats;
    doc["jobs"] = config.jobs;
    return doc;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file " + path.string() + ": " + e.what());
    }
    return config_from_json(doc);
}

std::string config_fingerprint(const ExperimentConfig& config) {
    std::ostringstream canonical;
    canonical << "dataset=" << config.dataset_path
              << "|label=" << config.label_column
              << "|header=" << (config.has_header ? 1 : 0)
              << "|protocol=" << (config.protocol.kind == Protocol::Kind::kfold ? "kfold" : "holdout")
              << "|folds=" << config.protocol.folds
              << "|fraction=" << canon(config.protocol.holdout_fraction)
              << "|population=" << config.swarm.population
              << "|iterations=" << config.swarm.iterations
              << "|alpha=" << canon(config.swarm.accuracy_weight)
              << "|val_fraction=" << canon(config.swarm.val_fraction)
              << "|per_dimension=" << (config.swarm.per_dimension_draws ? 1 : 0)
              << "|elite=" << canon(config.swarm.altruism.elite_fraction)
              << "|vlow=" << canon(config.swarm.altruism.velocity_low)
              << "|vhigh=" << canon(config.swarm.altruism.velocity_high)
              << "|time_constant=" << canon(config.swarm.adaptive.time_constant)
              << "|schedule="
              << (config.swarm.adaptive.schedule == InertiaSchedule::elapsed_time ? "elapsed"
                                                                                  : "remaining")
              << "|knn_k=" << config.knn.k
              << "|positive=" << config.positive_class;
    return hex64(fnv1a(canonical.str()));
}

std::uint64_t cell_seed(const std::string& fingerprint, Variant variant,
                        std::uint64_t seed, int fold) {
    std::ostringstream key;
    key << fingerprint << '|' << to_string(variant) << '|' << seed << '|' << fold;
    return fnv1a(key.str());
}

nlohmann::json record_to_json(const RunRecord& record) {
    nlohmann::json metrics;
    metrics["accuracy"] = record.result.test_metrics.accuracy;
    metrics["precision"] = record.result.test_metrics.precision;
    metrics["recall"] = record.result.test_metrics.recall;
    metrics["f1"] = record.result.test_metrics.f1;
    metrics["classes"] = record.result.test_metrics.classes;
    std::vector<std::vector<int>> confusion;
    for (Eigen::Index i = 0; i < record.result.test_metrics.confusion.rows(); ++i) {
        std::vector<int> row;
        for (Eigen::Index j = 0; j < record.result.test_metrics.confusion.cols(); ++j) {
            row.push_back(record.result.test_metrics.confusion(i, j));
        }
        confusion.push_back(std::move(row));
    }
    metrics["confusion"] = confusion;

    nlohmann::json result;
    result["best_fitness"] = record.result.best_fitness;
    result["best_mask"] = mask_to_string(record.result.best_mask);
    result["selected_count"] = record.result.selected_count;
    result["fitness_trace"] = record.result.fitness_trace;
    result["metrics"] = metrics;

    nlohmann::json doc;
    doc["fingerprint"] = record.fingerprint;
    doc["variant"] = to_string(record.variant);
    doc["seed"] = record.seed;
    doc["fold"] = record.fold;
    doc["result"] = result;
    return doc;
}

RunRecord record_from_json(const nlohmann::json& doc) {
    RunRecord record;
    try {
        record.fingerprint = doc.at("fingerprint").get<std::string>();
        record.variant = variant_from_string(doc.at("variant").get<std::string>());
        record.seed = doc.at("seed").get<std::uint64_t>();
        record.fold = doc.at("fold").get<int>();
        const auto& result = doc.at("result");
        record.result.best_fitness = result.at("best_fitness").get<double>();
        record.result.best_mask = mask_from_string(result.at("best_mask").get<std::string>());
        record.result.selected_count = result.at("selected_count").get<int>();
        record.result.fitness_trace = result.at("fitness_trace").get<std::vector<double>>();
        const auto& metrics = result.at("metrics");
        record.result.test_metrics.accuracy = metrics.at("accuracy").get<double>();
        record.result.test_metrics.precision = metrics.at("precision").get<double>();
        record.result.test_metrics.recall = metrics.at("recall").get<double>();
        record.result.test_metrics.f1 = metrics.at("f1").get<double>();
        record.result.test_metrics.classes = metrics.at("classes").get<std::vector<std::string>>();
        const auto confusion = metrics.at("confusion").get<std::vector<std::vector<int>>>();
        const auto rows = static_cast<Eigen::Index>(confusion.size());
        record.result.test_metrics.confusion = Eigen::MatrixXi::Zero(rows, rows);
        for (Eigen::Index i = 0; i < rows; ++i) {
            for (Eigen::Index j = 0; j < rows; ++j) {
                record.result.test_metrics.confusion(i, j) =
                    confusion[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed run record: ") + e.what());
    }
    record.result.variant = record.variant;
    record.result.seed = record.seed;
    return record;
}

std::vector<RunRecord> load_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open records file: " + path.string());
    std::vector<RunRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            records.push_back(record_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ": line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

namespace {

struct CellKey {
    std::string variant;
    std::uint64_t seed;
    int fold;

    auto operator<=>(const CellKey&) const = default;
};

// train/test partitions for one (seed, fold), normalized on train stats.
std::pair<Dataset, Dataset> prepare_cell_data(const Dataset& data, const ExperimentConfig& config,
                                              std::uint64_t seed, int fold) {
    if (config.protocol.kind == Protocol::Kind::holdout) {
        auto [train, test] = stratified_holdout(data, config.protocol.holdout_fraction, seed);
        const auto stats = fit_normalizer(train);
        return {apply_normalizer(train, stats), apply_normalizer(test, stats)};
    }
    const auto plan = stratified_kfold(data, config.protocol.folds, seed);
    const auto& split = plan.folds[static_cast<std::size_t>(fold)];
    auto train = take_rows(data, split.train_indices);
    auto test = take_rows(data, split.test_indices);
    const auto stats = fit_normalizer(train);
    return {apply_normalizer(train, stats), apply_normalizer(test, stats)};
}

} // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
    config.validate();
    const auto fingerprint = config_fingerprint(config);
    const auto data = load_delimited(config.dataset_path, config.label_column, config.has_header);

    const int n_folds = config.protocol.kind == Protocol::Kind::kfold ? config.protocol.folds : 1;

    struct Cell {
        Variant variant;
        std::uint64_t seed;
        int fold;
    };
    std::vector<Cell> cells;
    for (const auto variant : config.variants) {
        for (const auto seed : config.seeds) {
            for (int fold = 0; fold < n_folds; ++fold) cells.push_back({variant, seed, fold});
        }
    }

    // Resume: reuse any cell of this experiment already present on disk. A
    // run killed mid-write can leave a partial final line; that tail is
    // dropped (its cell just recomputes) and the file truncated so the
    // records stay parseable.
    std::filesystem::create_directories(config.out_dir);
    const auto records_path = std::filesystem::path(config.out_dir) / "records.jsonl";
    std::map<CellKey, RunRecord> existing;
    if (std::filesystem::exists(records_path)) {
        std::ifstream in(records_path);
        std::string line;
        std::uintmax_t valid_bytes = 0;
        bool corrupt_tail = false;
        while (std::getline(in, line)) {
            if (!line.empty()) {
                try {
                    auto record = record_from_json(nlohmann::json::parse(line));
                    if (record.fingerprint == fingerprint) {
                        existing.emplace(
                            CellKey{to_string(record.variant), record.seed, record.fold},
                            std::move(record));
                    }
                } catch (const std::exception&) {
                    corrupt_tail = true;
                    break; // keep only the valid prefix
                }
            }
            valid_bytes += line.size() + 1;
        }
        if (corrupt_tail) {
            std::filesystem::resize_file(records_path, valid_bytes);
        }
    }

    // With a single cell, the worker budget moves inside the run and fans
    // out the per-agent fitness evaluations instead.
    const int eval_workers = cells.size() == 1 ? config.jobs : 1;
    const auto execute = [&](const Cell& cell) {
        const auto start = std::chrono::steady_clock::now();
        auto [train, test] = prepare_cell_data(data, config, cell.seed, cell.fold);
        RunRecord record;
        record.fingerprint = fingerprint;
        record.variant = cell.variant;
        record.seed = cell.seed;
        record.fold = cell.fold;
        record.result = run_optimizer(cell.variant, train, test, config.swarm, config.knn,
                                      cell_seed(fingerprint, cell.variant, cell.seed, cell.fold),
                                      config.positive_class, {}, eval_workers);
        // Report the experiment seed, not the derived per-cell rng seed.
        record.result.seed = cell.seed;
        record.duration_ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
        return record;
    };

    std::ofstream records_out(records_path, std::ios::app);
    if (!records_out) throw DataError("cannot write records file: " + records_path.string());
    const auto timings_path = std::filesystem::path(config.out_dir) / "timings.csv";
    const bool timings_fresh = !std::filesystem::exists(timings_path);
    std::ofstream timings_out(timings_path, std::ios::app);
    if (timings_fresh) timings_out << "variant,seed,fold,duration_ms\n";

    std::vector<RunRecord> records;
    records.reserve(cells.size());
    const auto finish = [&](RunRecord record, bool computed) {
        if (computed) {
            records_out << record_to_json(record).dump() << '\n';
            records_out.flush();
            timings_out << to_string(record.variant) << ',' << record.seed << ','
                        << record.fold << ',' << format_number("%.3f", record.duration_ms) << '\n';
            timings_out.flush();
        }
        records.push_back(std::move(record));
    };

    // Cells are independent; results never depend on the worker count
    // because each cell owns an rng seeded from its own key. Completed
    // records land in canonical variant x seed x fold order.
    struct Slot {
        bool computed = false;
        std::optional<RunRecord> ready;
        std::future<RunRecord> pending;
    };
    const auto wave = static_cast<std::size_t>(std::max(config.jobs, 1));
    std::size_t next = 0;
    while (next < cells.size()) {
        std::vector<Slot> batch;
        while (next < cells.size() && batch.size() < wave) {
            const auto& cell = cells[next];
            const CellKey key{to_string(cell.variant), cell.seed, cell.fold};
            Slot slot;
            if (const auto it = existing.find(key); it != existing.end()) {
                slot.ready = it->second;
            } else if (wave == 1) {
                slot.computed = true;
                slot.ready = execute(cell);
            } else {
                slot.computed = true;
                slot.pending = std::async(std::launch::async, execute, cell);
            }
            batch.push_back(std::move(slot));
            ++next;
        }
        for (auto& slot : batch) {
            finish(slot.ready ? std::move(*slot.ready) : slot.pending.get(), slot.computed);
        }
    }
    return records;
}

namespace {

double mean_of(const std::vector<double>& values) {
    double sum = 0.0;
    for (const double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double sample_sd(const std::vector<double>& values, double mean) {
    if (values.size() < 2) return 0.0;
    double squares = 0.0;
    for (const double v : values) squares += (v - mean) * (v - mean);
    return std::sqrt(squares / static_cast<double>(values.size() - 1));
}

constexpr Variant kVariantOrder[] = {Variant::pso, Variant::alt_pso, Variant::aapso};

} // namespace

SummaryReport summarize(std::span<const RunRecord> records) {
    if (records.empty()) throw std::invalid_argument("summarize needs at least one record");

    std::vector<RunRecord> sorted(records.begin(), records.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const RunRecord& a, const RunRecord& b) {
        if (a.variant != b.variant) return static_cast<int>(a.variant) < static_cast<int>(b.variant);
        if (a.seed != b.seed) return a.seed < b.seed;
        return a.fold < b.fold;
    });

    SummaryReport report;
    std::map<Variant, std::vector<double>> accuracies;
    for (const auto variant : kVariantOrder) {
        std::vector<double> acc, feats, fitness;
        for (const auto& record : sorted) {
            if (record.variant != variant) continue;
            acc.push_back(record.result.test_metrics.accuracy);
            feats.push_back(static_cast<double>(record.result.selected_count));
            fitness.push_back(record.result.best_fitness);
        }
        if (acc.empty()) continue;

        VariantSummary summary;
        summary.variant = variant;
        summary.n_records = static_cast<int>(acc.size());
        summary.accuracy_mean = mean_of(acc);
        summary.accuracy_sd = sample_sd(acc, summary.accuracy_mean);
        summary.features_mean = mean_of(feats);
        summary.features_sd = sample_sd(feats, summary.features_mean);
        summary.fitness_mean = mean_of(fitness);
        summary.features_box = box_summary(feats);
        report.variants.push_back(std::move(summary));
        accuracies.emplace(variant, std::move(acc));
    }

    for (const auto& a : report.variants) {
        for (const auto& b : report.variants) {
            if (a.variant == b.variant) continue;
            const auto& xs = accuracies.at(a.variant);
            const auto& ys = accuracies.at(b.variant);
            if (xs.size() < 2 || ys.size() < 2) continue;
            PairwiseTest test;
            test.a = a.variant;
            test.b = b.variant;
            test.report = mann_whitney_u(xs, ys, Alternative::greater);
            report.tests.push_back(test);
        }
    }
    return report;
}

std::string format_table(const SummaryReport& report) {
    std::ostringstream out;
    char line[256];
    out << "variant    n   accuracy mean    sd        features mean    sd        fitness mean\n";
    for (const auto& v : report.variants) {
        std::snprintf(line, sizeof line, "%-9s %3d   %9.4f   %8.4f   %10.2f   %8.2f   %12.6f%s\n",
                      to_string(v.variant).c_str(), v.n_records, v.accuracy_mean, v.accuracy_sd,
                      v.features_mean, v.features_sd, v.fitness_mean,
                      v.n_records == 1 ? "   [n=1: sd undefined, reported as 0]" : "");
        out << line;
    }
    out << "\nselected-feature box summaries (min / q1 / median / q3 / max):\n";
    for (const auto& v : report.variants) {
        std::snprintf(line, sizeof line, "%-9s %8.1f %8.1f %8.1f %8.1f %8.1f\n",
                      to_string(v.variant).c_str(), v.features_box.min, v.features_box.q1,
                      v.features_box.median, v.features_box.q3, v.features_box.max);
        out << line;
    }
    if (!report.tests.empty()) {
        out << "\npairwise Mann-Whitney U on accuracies (alternative: a greater than b):\n";
        for (const auto& t : report.tests) {
            std::snprintf(line, sizeof line, "%-9s vs %-9s U=%8.2f  p=%.5f  (%s)\n",
                          to_string(t.a).c_str(), to_string(t.b).c_str(), t.report.u_statistic,
                          t.report.p_value, method_name(t.report.method));
            out << line;
        }
    }
    return out.str();
}

nlohmann::json summary_to_json(const SummaryReport& report) {
    nlohmann::json doc;
    doc["variants"] = nlohmann::json::array();
    for (const auto& v : report.variants) {
        nlohmann::json entry;
        entry["variant"] = to_string(v.variant);
        entry["n"] = v.n_records;
        entry["sd_defined"] = v.n_records > 1;
        entry["accuracy_mean"] = v.accuracy_mean;
        entry["accuracy_sd"] = v.accuracy_sd;
        entry["features_mean"] = v.features_mean;
        entry["features_sd"] = v.features_sd;
        entry["fitness_mean"] = v.fitness_mean;
        entry["features_box"] = {{"min", v.features_box.min},
                                 {"q1", v.features_box.q1},
                                 {"median", v.features_box.median},
                                 {"q3", v.features_box.q3},
                                 {"max", v.features_box.max}};
        doc["variants"].push_back(entry);
    }
    doc["pairwise_tests"] = nlohmann::json::array();
    for (const auto& t : report.tests) {
        nlohmann::json entry;
        entry["a"] = to_string(t.a);
        entry["b"] = to_string(t.b);
        entry["alternative"] = "greater";
        entry["u"] = t.report.u_statistic;
        entry["p"] = t.report.p_value;
        entry["method"] = method_name(t.report.method);
        doc["pairwise_tests"].push_back(entry);
    }
    return doc;
}

std::string summary_csv(const SummaryReport& report) {
    std::ostringstream out;
    out << "variant,n,accuracy_mean,accuracy_sd,features_mean,features_sd,fitness_mean,"
           "features_min,features_q1,features_median,features_q3,features_max\n";
    for (const auto& v : report.variants) {
        out << to_string(v.variant) << ',' << v.n_records << ','
            << format_number("%.10g", v.accuracy_mean) << ','
            << format_number("%.10g", v.accuracy_sd) << ','
            << format_number("%.10g", v.features_mean) << ','
            << format_number("%.10g", v.features_sd) << ','
            << format_number("%.10g", v.fitness_mean) << ','
            << format_number("%.10g", v.features_box.min) << ','
            << format_number("%.10g", v.features_box.q1) << ','
            << format_number("%.10g", v.features_box.median) << ','
            << format_number("%.10g", v.features_box.q3) << ','
            << format_number("%.10g", v.features_box.max) << '\n';
    }
    return out.str();
}

std::string stat_tests_csv(const SummaryReport& report) {
    std::ostringstream out;
    out << "a,b,alternative,u,p,method\n";
    for (const auto& t : report.tests) {
        out << to_string(t.a) << ',' << to_string(t.b) << ",greater,"
            << format_number("%.10g", t.report.u_statistic) << ','
            << format_number("%.10g", t.report.p_value) << ',' << method_name(t.report.method)
            << '\n';
    }
    return out.str();
}

std::string convergence_csv(std::span<const RunRecord> records) {
    std::ostringstream out;
    out << "variant,seed,fold,iteration,gbest_fitness\n";
    for (const auto& record : records) {
        for (std::size_t i = 0; i < record.result.fitness_trace.size(); ++i) {
            out << to_string(record.variant) << ',' << record.seed << ',' << record.fold << ','
                << i + 1 << ',' << format_number("%.10g", record.result.fitness_trace[i]) << '\n';
        }
    }
    return out.str();
}

} // namespace aapso
