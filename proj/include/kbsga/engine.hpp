#pragma once

/// @file engine.hpp
/// @brief Generational GA with a single elite and tournament-selected mating pool.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "kbsga/core.hpp"
#include "kbsga/objectives.hpp"
#include "kbsga/operators.hpp"

namespace kbsga {

/// Success tolerance: 0.01 for two-variable problems, 0.1 otherwise.
double default_epsilon(std::size_t n) noexcept;

struct GaConfig {
    std::size_t population_size = 400;
    std::size_t pool_size = 400;
    std::size_t generations = 5000;
    std::size_t tournament_size = 2;
    Recombination recombination = Recombination::AlphaKbs;
    RecombinationParams recombination_params{};
    Mutation mutation = Mutation::Simple;
    /// Per-gene mutation probability; unset means 1/n.
    std::optional<double> mutation_rate;
    /// Success tolerance; unset means default_epsilon(n).
    std::optional<double> epsilon;

    double epsilon_for(std::size_t n) const noexcept { return epsilon.value_or(default_epsilon(n)); }
    MutationParams mutation_params_for(std::size_t n) const noexcept {
        return mutation_rate ? MutationParams{*mutation_rate} : MutationParams::one_per_string(n);
    }

    /// Throws ConfigError when the configuration cannot run on an n-variable problem.
    void validate(std::size_t n) const;
};

struct RunRecord {
    std::vector<double> best_per_generation;
    std::optional<std::size_t> first_hit_generation; ///< 1-based
    double final_best_value = 0.0;
    Genome final_best_genome;
    std::uint64_t seed = 0;
    std::uint64_t evaluations = 0;
};

/// Smallest 1-based g with trace[g] < epsilon.
std::optional<std::size_t> first_hit(std::span<const double> trace, double epsilon) noexcept;

/// Hook called once per generation (1-based) after evaluation; used by tests to observe the population.
using GenerationObserver = std::function<void(std::size_t generation, const Population&)>;

/// One independent run of `config.generations` generations. Deterministic in (config, problem, seed).
RunRecord run_ga(const GaConfig& config, const Problem& problem, std::uint64_t seed,
                 const GenerationObserver& observer = {});

} // namespace kbsga
