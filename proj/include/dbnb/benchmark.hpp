#pragma once

#include "dbnb/evaluation.hpp"
#include "dbnb/model.hpp"
#include "dbnb/topology.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dbnb {

/// Bounds on one reported metric. `reference` is an expected value, shown but never checked.
struct MetricCheck {
    std::string metric;
    std::optional<double> min;
    std::optional<double> max;
    std::optional<double> reference;
};

/// One train/evaluate run. Either `test` names a separate file or `train_count`
/// splits `data` (file order, or seeded shuffle).
struct Experiment {
    std::string name;
    std::filesystem::path schema;
    std::filesystem::path data;
    std::optional<std::filesystem::path> test;
    std::optional<std::size_t> train_count;
    std::optional<std::uint64_t> seed;
    TrainConfig config;
    std::vector<MetricCheck> checks;
};

struct Suite {
    std::vector<Experiment> experiments;
};

/// Environment variable that overrides the suite's data directory.
inline constexpr const char* data_dir_env = "DBNB_DATA_DIR";

/// JSON suite document. Schema paths resolve against `base_dir`; data paths against
/// $DBNB_DATA_DIR when set, otherwise against base_dir / "data_dir".
Suite parse_suite(std::string_view json_text, const std::filesystem::path& base_dir);
Suite load_suite(const std::filesystem::path& path);

struct CheckResult {
    MetricCheck check;
    std::optional<double> value;
    bool passed = false;
};

struct ExperimentResult {
    std::string name;
    /// Empty when the experiment ran; otherwise why it could not.
    std::string error;
    std::map<std::string, double> metrics;
    std::optional<Report> train_report;
    std::optional<Report> test_report;
    std::vector<CheckResult> checks;

    bool passed() const;
};

struct SuiteReport {
    std::vector<ExperimentResult> results;
    bool passed() const;
};

/// Metrics: train_accuracy, test_accuracy, epochs, converged, wall_seconds,
/// train_examples, test_examples, dropped_rows.
ExperimentResult run_experiment(const Experiment& experiment);
SuiteReport run_benchmark(const Suite& suite, std::size_t parallelism = 1);

std::string render_suite_text(const SuiteReport& report);
std::string render_suite_json(const SuiteReport& report);

/// A topology search described by a JSON file: the data, how it splits into
/// train and validation parts, candidate bin counts and the training config.
struct SearchJob {
    Dataset train;
    Dataset validation;
    SearchSpec spec;
    TrainConfig config;
};

/// Keys: schema, data_dir, data, validation | train_count (+ seed), range [lo, hi],
/// candidates {attribute: [counts]}, budget, max_passes, exhaustive, config.
/// Path resolution follows parse_suite.
SearchJob parse_search_job(std::string_view json_text, const std::filesystem::path& base_dir);
SearchJob load_search_job(const std::filesystem::path& path);

std::string render_search_json(const SearchResult& result);

}  // namespace dbnb
