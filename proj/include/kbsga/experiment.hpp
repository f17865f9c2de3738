#pragma once

/// @file experiment.hpp
/// @brief Batch runner: config-driven sweeps, CSV output and pairwise rank tests.
///
/// Output files written by write_results():
///   runs.csv     problem,dim,recomb,mutation,run_index,seed,first_hit,final_value
///   summary.csv  problem,dim,recomb,mutation,runs,success_rate,mean_runtime_eq4,
///                mean_runtime_successful,mean_final,std_final
///   lloyd.csv    problem,dim,restarts,best_objective,mean_objective   (k-means problems only)
///   dataset_d<d>.txt                                                (k-means problems only)
///
/// Reals use the shortest decimal form that reads back to the same double.
/// A missing first_hit or undefined mean is an empty field.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kbsga/engine.hpp"
#include "kbsga/objectives.hpp"
#include "kbsga/operators.hpp"
#include "kbsga/stats.hpp"

namespace kbsga {

struct OperatorPair {
    Recombination recombination = Recombination::AlphaKbs;
    Mutation mutation = Mutation::Simple;

    friend bool operator==(const OperatorPair&, const OperatorPair&) = default;
};

/// "akbs+gm" style label and its parser.
std::string to_string(const OperatorPair& op);
OperatorPair parse_operator_pair(std::string_view label);

/// The eight KBS/BLX/SBX x SM/GM combinations in table order.
std::vector<OperatorPair> standard_operator_pairs();

struct DatasetSpec {
    std::size_t points = 100;
    double low = 0.0;
    double high = 10.0;
    std::uint64_t seed = 20140101;
};

struct ExperimentConfig {
    std::vector<std::string> problems;
    std::vector<std::size_t> dims;
    std::vector<OperatorPair> operators;
    std::size_t runs = 20;
    std::size_t generations = 5000;
    std::size_t population_size = 400;
    std::size_t pool_size = 400;
    std::size_t tournament_size = 2;
    std::optional<double> epsilon;       ///< unset: 0.01 for n = 2, else 0.1
    std::optional<double> mutation_rate; ///< unset: 1/n
    RecombinationParams recombination{};
    std::uint64_t master_seed = 1;
    std::filesystem::path output_dir = "results";
    DatasetSpec dataset{};
    std::size_t lloyd_restarts = 10;
    std::size_t lloyd_max_iter = 300;

    GaConfig ga_config(const OperatorPair& op) const;
    /// Throws ConfigError on unknown problems, empty sweeps or invalid GA settings.
    void validate() const;
};

/// JSON config text -> config. Unknown keys are rejected. Throws ConfigError.
ExperimentConfig parse_config(std::string_view json_text);
/// Reads and parses a config file. Throws IoError if unreadable, ConfigError if invalid.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Number of clusters if `problem` names a k-means problem ("kmeans4"), else nullopt.
std::optional<std::size_t> kmeans_clusters(std::string_view problem);

struct CellKey {
    std::string problem;
    std::size_t dim = 0;
    OperatorPair op;

    friend auto operator<=>(const CellKey& a, const CellKey& b) {
        if (auto c = a.problem <=> b.problem; c != 0) return c;
        if (auto c = a.dim <=> b.dim; c != 0) return c;
        if (auto c = a.op.recombination <=> b.op.recombination; c != 0) return c;
        return a.op.mutation <=> b.op.mutation;
    }
    friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct RunRow {
    CellKey cell;
    std::size_t run_index = 0;
    std::uint64_t seed = 0;
    std::optional<std::size_t> first_hit;
    double final_value = 0.0;
};

struct CellResult {
    CellKey key;
    std::vector<RunRow> runs; ///< ordered by run_index
    ExperimentSummary summary;
};

struct LloydBaseline {
    std::string problem;
    std::size_t dim = 0;
    std::size_t restarts = 0;
    double best_objective = 0.0;
    double mean_objective = 0.0;
    std::vector<double> objectives;
    bool sse_monotone = true; ///< every restart's SSE trace was non-increasing
};

struct ExperimentResult {
    std::vector<CellResult> cells;
    std::vector<LloydBaseline> lloyd;
    std::vector<Dataset> datasets;
};

/// Every (problem, dim, operator pair) cell, `runs` replications each, spread over
/// `threads` workers. Output is independent of the thread count.
ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t threads = 1);

/// The dataset used for k-means at data dimension d (seed derived from the dataset seed and d).
Dataset experiment_dataset(const DatasetSpec& spec, std::size_t d, std::size_t k);

std::string format_double(double v);

void write_runs_csv(std::ostream& out, const ExperimentResult& result);
void write_summary_csv(std::ostream& out, const ExperimentResult& result);
void write_summary_row(std::ostream& out, const CellKey& key, const ExperimentSummary& s);
void write_lloyd_csv(std::ostream& out, const ExperimentResult& result);
/// Writes all result files into `dir` (created if missing). Throws IoError.
void write_results(const ExperimentResult& result, const std::filesystem::path& dir);

/// Parses runs.csv (or `<dir>/runs.csv` when given a directory). Throws IoError / ConfigError.
std::vector<RunRow> read_runs_csv(const std::filesystem::path& path);
std::vector<RunRow> parse_runs_csv(std::istream& in);

/// Groups rows into cells and recomputes their summaries.
std::vector<CellResult> cells_from_rows(std::vector<RunRow> rows);

// ---- pairwise comparison ----------------------------------------------------------

enum class CompareMetric { FinalValue, FirstHit };
CompareMetric parse_metric(std::string_view name);
std::string_view to_string(CompareMetric m) noexcept;

struct ComparisonRow {
    CellKey a;
    CellKey b;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
    RankTestResult test;
    bool significant = false;
};

struct ComparisonReport {
    CompareMetric metric = CompareMetric::FinalValue;
    double alpha = 0.05;
    std::vector<ComparisonRow> rows;
    std::vector<std::string> skipped; ///< cells present on one side only
};

/// Mann-Whitney test per shared cell. Cells match on (problem, dim, operator pair);
/// when `op_a`/`op_b` are given, each side is restricted to that pair and cells match
/// on (problem, dim). Failed runs count as +inf for the first_hit metric.
/// Throws ConfigError when the two sides share no cell.
ComparisonReport compare_runs(const std::vector<RunRow>& a, const std::vector<RunRow>& b,
                              CompareMetric metric, std::optional<OperatorPair> op_a = std::nullopt,
                              std::optional<OperatorPair> op_b = std::nullopt, double alpha = 0.05);

void write_comparison_csv(std::ostream& out, const ComparisonReport& report);
void write_comparison_table(std::ostream& out, const ComparisonReport& report);

} // namespace kbsga
