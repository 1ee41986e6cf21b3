#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "aapso/knn.hpp"
#include "aapso/optimizer.hpp"
#include "aapso/stats.hpp"

namespace aapso {

/// Evaluation protocol: stratified k-fold cross-validation or a single
/// stratified holdout split per seed.
struct Protocol {
    enum class Kind { kfold, holdout };

    Kind kind = Kind::holdout;
    int folds = 5;
    double holdout_fraction = 0.2;
};

/// One experiment: dataset x protocol x variants x seeds plus all algorithm
/// hyperparameters. Defaults: population 20, 30 iterations, accuracy weight
/// 0.98, elite fraction 0.40, velocity band (0, ln 4), time constant 1,
/// k-NN k 5, holdout fraction 0.2.
struct ExperimentConfig {
    std::string dataset_path;
    std::string label_column;
    bool has_header = true;
    Protocol protocol;
    std::vector<Variant> variants{Variant::aapso};
    std::vector<std::uint64_t> seeds{1};
    SwarmConfig swarm;
    KnnConfig knn;
    std::string positive_class; // empty = lexicographically greatest class
    std::string out_dir = "out";
    std::vector<std::string> formats{"table"};
    int jobs = 1;

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

/// Parse a config from JSON. Unknown keys are rejected so typos surface
/// immediately; missing keys keep their defaults. Key grammar is documented
/// in the README.
ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// 16-hex-digit FNV-1a hash over the semantically meaningful config fields
/// (dataset, label column, protocol, every algorithm hyperparameter).
/// Variant/seed lists, output options and job count are excluded: they name
/// *which* cells run, not what any single cell computes, so completed cells
/// stay addressable when the experiment is extended. Stable across
/// platforms.
std::string config_fingerprint(const ExperimentConfig& config);

/// Per-cell rng seed derived from (fingerprint, variant, seed, fold).
std::uint64_t cell_seed(const std::string& fingerprint, Variant variant,
                        std::uint64_t seed, int fold);

/// Result of one (variant, seed, fold) cell. duration_ms is informational
/// only and is persisted separately (timings.csv) so the records file stays
/// byte-identical across reruns.
struct RunRecord {
    std::string fingerprint;
    Variant variant = Variant::pso;
    std::uint64_t seed = 0;
    int fold = 0;
    RunResult result;
    double duration_ms = 0.0;
};

nlohmann::json record_to_json(const RunRecord& record);
RunRecord record_from_json(const nlohmann::json& doc);

/// All records found in a line-delimited records file.
std::vector<RunRecord> load_records(const std::filesystem::path& path);

/// Execute every (variant, seed, fold) cell of the experiment.
///
/// Per cell: load -> fit normalizer on the training partition -> normalize
/// both partitions -> optimize (the optimizer carves its own internal
/// validation split) -> score the best mask on the held-out partition. Each
/// cell's rng is seeded by cell_seed(...), so results do not depend on the
/// worker count (`jobs`); a single-cell experiment spends its workers on
/// parallel per-agent fitness evaluations instead. Records append to
/// <out_dir>/records.jsonl in the canonical variant x seed x fold order as
/// cells complete; cells already present in that file (matched by
/// fingerprint/variant/seed/fold) are reused, which makes interrupted
/// experiments resumable.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

/// Per-variant aggregate over records.
struct VariantSummary {
    Variant variant = Variant::pso;
    int n_records = 0;
    double accuracy_mean = 0.0;
    double accuracy_sd = 0.0; // sample SD; 0 when n_records == 1
    double features_mean = 0.0;
    double features_sd = 0.0;
    double fitness_mean = 0.0;
    BoxSummary features_box;
};

/// One-sided (greater) Mann-Whitney comparison of variant a's accuracies
/// against variant b's.
struct PairwiseTest {
    Variant a = Variant::pso;
    Variant b = Variant::pso;
    StatReport report;
};

struct SummaryReport {
    std::vector<VariantSummary> variants;
    std::vector<PairwiseTest> tests;
};

/// Aggregate records: per-variant mean/SD of accuracy and feature count,
/// feature-count box summaries, and pairwise Mann-Whitney tests between all
/// variants with at least two records. Deterministic for identical input.
SummaryReport summarize(std::span<const RunRecord> records);

std::string format_table(const SummaryReport& report);
nlohmann::json summary_to_json(const SummaryReport& report);
std::string summary_csv(const SummaryReport& report);
std::string stat_tests_csv(const SummaryReport& report);

/// Per-iteration gbest fitness of every record, long format:
/// variant,seed,fold,iteration,gbest_fitness.
std::string convergence_csv(std::span<const RunRecord> records);

} // namespace aapso
