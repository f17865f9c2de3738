#pragma once

/// @file stats.hpp
/// @brief Success rate / runtime summaries and the Mann-Whitney U rank test.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "kbsga/engine.hpp"

namespace kbsga {

struct ExperimentSummary {
    std::size_t run_count = 0;
    std::size_t successes = 0;
    double success_rate = 0.0;
    /// Sum of first-hit generations over successful runs, divided by all runs.
    double mean_runtime_all = 0.0;
    /// Mean first-hit generation over successful runs; unset without successes.
    std::optional<double> mean_runtime_successful;
    double mean_final_value = 0.0;
    /// Sample standard deviation (n-1) of the final values; 0 for a single run.
    double std_final_value = 0.0;
};

/// Per-run facts the summary is computed from (the columns of runs.csv).
struct RunOutcome {
    std::optional<std::size_t> first_hit;
    double final_value = 0.0;
};

ExperimentSummary summarize(std::span<const RunOutcome> runs);
/// Success is taken from each record's first_hit_generation, which the engine
/// computed with the run's epsilon. `epsilon` re-derives it from the trace when set.
ExperimentSummary summarize(std::span<const RunRecord> records, std::optional<double> epsilon = std::nullopt);

struct RankTestResult {
    double u = 0.0;  ///< min(u1, u2)
    double u1 = 0.0;
    double u2 = 0.0;
    double r1 = 0.0; ///< rank sum of the first sample
    double r2 = 0.0;
    double z = 0.0;  ///< negative when the first sample tends to be smaller
    double p = 0.5;  ///< one-sided normal tail probability of |z|
    bool degenerate = false; ///< zero rank variance (every value identical)

    bool significant(double alpha = 0.05) const noexcept { return !degenerate && p < alpha; }
};

/// Midranks (1-based) of the concatenation a ++ b.
std::vector<double> midranks(std::span<const double> values);

/// Normal approximation with tie-corrected variance and no continuity correction.
RankTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

/// Standard normal upper tail P(Z > x).
double normal_upper_tail(double x) noexcept;

} // namespace kbsga
