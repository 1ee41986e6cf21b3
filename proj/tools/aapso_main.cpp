#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "aapso/bench.hpp"
#include "aapso/errors.hpp"
#include "aapso/stats.hpp"

namespace {

std::vector<double> read_values(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw aapso::DataError("cannot open sample file: " + path.string());
    std::vector<double> values;
    double v = 0.0;
    while (in >> v) values.push_back(v);
    if (!in.eof()) throw aapso::DataError(path.string() + ": expected whitespace-separated numbers");
    return values;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw aapso::DataError("cannot write " + path.string());
    out << content;
}

void emit_reports(const aapso::SummaryReport& report,
                  const std::vector<aapso::RunRecord>& records,
                  const std::vector<std::string>& formats,
                  const std::filesystem::path& out_dir, bool echo_table) {
    std::filesystem::create_directories(out_dir);
    for (const auto& format : formats) {
        if (format == "table") {
            const auto table = aapso::format_table(report);
            write_file(out_dir / "summary.txt", table);
            if (echo_table) std::cout << table;
        } else if (format == "json") {
            write_file(out_dir / "summary.json", aapso::summary_to_json(report).dump(2) + "\n");
        } else if (format == "csv") {
            write_file(out_dir / "summary.csv", aapso::summary_csv(report));
            write_file(out_dir / "stat_tests.csv", aapso::stat_tests_csv(report));
            write_file(out_dir / "convergence.csv", aapso::convergence_csv(records));
        }
    }
}

int run_command(const aapso::ExperimentConfig& config) {
    const auto records = aapso::run_experiment(config);
    std::cout << "experiment " << aapso::config_fingerprint(config) << ": " << records.size()
              << " records -> " << (std::filesystem::path(config.out_dir) / "records.jsonl").string()
              << "\n\n";
    emit_reports(aapso::summarize(records), records, config.formats, config.out_dir, true);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wrapper feature selection with binary particle swarm optimizers"};
    app.require_subcommand(1);

    // --- run ---------------------------------------------------------------
    auto* run = app.add_subcommand("run", "Run a feature-selection experiment");
    std::string config_path, dataset, label_column, protocol, positive_class, out_dir;
    std::vector<std::string> variants, formats;
    std::vector<std::uint64_t> seeds;
    int folds = 0, population = 0, iterations = 0, knn_k = 0, jobs = 0;
    double holdout_fraction = 0.0, alpha = 0.0, k_frac = 0.0, alpha_v = 0.0, beta_v = 0.0;
    double adaptive_c = 0.0, val_fraction = 0.0;
    bool no_header = false;

    run->add_option("--config", config_path, "JSON config file (flags override it)");
    run->add_option("--dataset", dataset, "delimited dataset file");
    run->add_option("--label-column", label_column, "label column name or 0-based index");
    run->add_flag("--no-header", no_header, "treat the first row as data, not a header");
    run->add_option("--protocol", protocol, "evaluation protocol")
        ->check(CLI::IsMember({"kfold", "holdout"}));
    run->add_option("--folds", folds, "fold count for kfold");
    run->add_option("--holdout-fraction", holdout_fraction, "test share for holdout");
    run->add_option("--variant", variants, "optimizer variant (repeatable)")
        ->check(CLI::IsMember({"pso", "alt_pso", "aapso"}));
    run->add_option("--seed", seeds, "rng seed (repeatable)");
    run->add_option("--population", population, "swarm size");
    run->add_option("--iterations", iterations, "iteration count");
    run->add_option("--alpha", alpha, "fitness weight on accuracy");
    run->add_option("--k-frac", k_frac, "elite fraction preserved from altruism");
    run->add_option("--alpha-v", alpha_v, "lower velocity threshold of the transfer band");
    run->add_option("--beta-v", beta_v, "upper velocity threshold of the transfer band");
    run->add_option("--adaptive-c", adaptive_c, "time constant of the inertia schedule");
    std::string adaptive_schedule;
    run->add_option("--adaptive-schedule", adaptive_schedule,
                    "inertia schedule direction")
        ->check(CLI::IsMember({"elapsed_time", "remaining_time"}));
    run->add_option("--val-fraction", val_fraction, "internal validation share of train");
    run->add_option("--knn-k", knn_k, "k-NN neighbor count (odd)");
    run->add_option("--positive-class", positive_class, "positive label for binary metrics");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--format", formats, "report format (repeatable)")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    run->add_option("--jobs", jobs, "parallel worker count");

    // --- summarize -----------------------------------------------------------
    auto* summarize_cmd = app.add_subcommand("summarize", "Aggregate persisted run records");
    std::string records_path, sum_out = ".";
    std::vector<std::string> sum_formats{"table"};
    summarize_cmd->add_option("--records", records_path, "records.jsonl file")->required();
    summarize_cmd->add_option("--format", sum_formats, "report format (repeatable)")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    summarize_cmd->add_option("--out", sum_out, "directory for report files");

    // --- stat-test -----------------------------------------------------------
    auto* stat_cmd = app.add_subcommand("stat-test", "Mann-Whitney U test on two sample files");
    std::string file_a, file_b, alternative = "greater";
    stat_cmd->add_option("--a", file_a, "first sample (whitespace-separated numbers)")->required();
    stat_cmd->add_option("--b", file_b, "second sample")->required();
    stat_cmd->add_option("--alternative", alternative, "test sidedness")
        ->check(CLI::IsMember({"greater", "less", "two_sided"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            aapso::ExperimentConfig config;
            if (!config_path.empty()) config = aapso::load_config_file(config_path);
            if (run->count("--dataset")) config.dataset_path = dataset;
            if (run->count("--label-column")) config.label_column = label_column;
            if (run->count("--no-header")) config.has_header = false;
            if (run->count("--protocol")) {
                config.protocol.kind = protocol == "kfold" ? aapso::Protocol::Kind::kfold
                                                           : aapso::Protocol::Kind::holdout;
            }
            if (run->count("--folds")) config.protocol.folds = folds;
            if (run->count("--holdout-fraction")) config.protocol.holdout_fraction = holdout_fraction;
            if (run->count("--variant")) {
                config.variants.clear();
                for (const auto& name : variants) {
                    config.variants.push_back(aapso::variant_from_string(name));
                }
            }
            if (run->count("--seed")) config.seeds = seeds;
            if (run->count("--population")) config.swarm.population = population;
            if (run->count("--iterations")) config.swarm.iterations = iterations;
            if (run->count("--alpha")) config.swarm.accuracy_weight = alpha;
            if (run->count("--k-frac")) config.swarm.altruism.elite_fraction = k_frac;
            if (run->count("--alpha-v")) config.swarm.altruism.velocity_low = alpha_v;
            if (run->count("--beta-v")) config.swarm.altruism.velocity_high = beta_v;
            if (run->count("--adaptive-c")) config.swarm.adaptive.time_constant = adaptive_c;
            if (run->count("--adaptive-schedule")) {
                config.swarm.adaptive.schedule = adaptive_schedule == "elapsed_time"
                                                     ? aapso::InertiaSchedule::elapsed_time
                                                     : aapso::InertiaSchedule::remaining_time;
            }
            if (run->count("--val-fraction")) config.swarm.val_fraction = val_fraction;
            if (run->count("--knn-k")) config.knn.k = knn_k;
            if (run->count("--positive-class")) config.positive_class = positive_class;
            if (run->count("--out")) config.out_dir = out_dir;
            if (run->count("--format")) config.formats = formats;
            if (run->count("--jobs")) config.jobs = jobs;
            return run_command(config);
        }
        if (summarize_cmd->parsed()) {
            const auto records = aapso::load_records(records_path);
            if (records.empty()) throw aapso::DataError(records_path + ": no records found");
            const auto report = aapso::summarize(records);
            for (const auto& format : sum_formats) {
                if (format == "table") std::cout << aapso::format_table(report);
                if (format == "json") std::cout << aapso::summary_to_json(report).dump(2) << "\n";
            }
            if (std::find(sum_formats.begin(), sum_formats.end(), "csv") != sum_formats.end()) {
                std::filesystem::create_directories(sum_out);
                write_file(std::filesystem::path(sum_out) / "summary.csv", aapso::summary_csv(report));
                write_file(std::filesystem::path(sum_out) / "stat_tests.csv",
                           aapso::stat_tests_csv(report));
                write_file(std::filesystem::path(sum_out) / "convergence.csv",
                           aapso::convergence_csv(records));
            }
            return 0;
        }
        if (stat_cmd->parsed()) {
            const auto x = read_values(file_a);
            const auto y = read_values(file_b);
            aapso::Alternative alt = aapso::Alternative::greater;
            if (alternative == "less") alt = aapso::Alternative::less;
            if (alternative == "two_sided") alt = aapso::Alternative::two_sided;
            const auto report = aapso::mann_whitney_u(x, y, alt);
            std::cout << "U=" << report.u_statistic << "\n"
                      << "p=" << report.p_value << "\n"
                      << "method="
                      << (report.method == aapso::TestMethod::exact ? "exact" : "normal_approx")
                      << "\n"
                      << "alternative=" << alternative << "\n";
            return 0;
        }
    } catch (const aapso::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const aapso::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
