#include "kbsga/engine.hpp"

#include <utility>

namespace kbsga {

double default_epsilon(std::size_t n) noexcept { return n == 2 ? 0.01 : 0.1; }

void GaConfig::validate(std::size_t n) const {
    if (n < 1) {
        throw ConfigError("problem dimension must be at least 1");
    }
    if (population_size < 2) {
        throw ConfigError("population size must be at least 2");
    }
    if (generations < 1) {
        throw ConfigError("generations must be at least 1");
    }
    if (pool_size % 2 != 0) {
        throw ConfigError("pool size must be even");
    }
    if (pool_size != population_size) {
        throw ConfigError("pool size must equal population size so the population stays constant");
    }
    if (tournament_size < 1) {
        throw ConfigError("tournament size must be at least 1");
    }
    if (mutation_rate && !(*mutation_rate >= 0.0 && *mutation_rate <= 1.0)) {
        throw ConfigError("mutation rate must lie in [0, 1]");
    }
    if (epsilon && !(*epsilon > 0.0)) {
        throw ConfigError("epsilon must be positive");
    }
    kbsga::validate(recombination, recombination_params, n);
}

std::optional<std::size_t> first_hit(std::span<const double> trace, double epsilon) noexcept {
    for (std::size_t g = 0; g < trace.size(); ++g) {
        if (trace[g] < epsilon) {
            return g + 1;
        }
    }
    return std::nullopt;
}

RunRecord run_ga(const GaConfig& config, const Problem& problem, std::uint64_t seed,
                 const GenerationObserver& observer) {
    const std::size_t n = problem.dimension;
    config.validate(n);
    if (!problem.evaluate) {
        throw ConfigError("problem '" + problem.name + "' has no objective");
    }

    const double epsilon = config.epsilon_for(n);
    const MutationParams mutation = config.mutation_params_for(n);
    const Bounds& bounds = problem.bounds;

    RngStream rng(seed);
    Population pop = init_population(n, config.population_size, bounds, rng);
    std::vector<Genome> offspring(config.pool_size, Genome(n));
    Genome elite(n);

    RunRecord record;
    record.seed = seed;
    record.best_per_generation.reserve(config.generations);

    for (std::size_t gen = 1; gen <= config.generations; ++gen) {
        for (std::size_t i = 0; i < pop.size(); ++i) {
            pop.fitness[i] = problem.evaluate(pop.members[i]);
        }
        pop.fitness_valid = true;
        record.evaluations += pop.size();

        const std::size_t best = argmin(pop.fitness);
        record.best_per_generation.push_back(pop.fitness[best]);
        if (!record.first_hit_generation && pop.fitness[best] < epsilon) {
            record.first_hit_generation = gen;
        }
        if (observer) {
            observer(gen, pop);
        }
        if (gen == config.generations) {
            record.final_best_value = pop.fitness[best];
            record.final_best_genome = pop.members[best];
            break;
        }

        elite = pop.members[best];
        const auto pool = tournament_select_indices(pop.fitness, config.pool_size,
                                                    config.tournament_size, rng);
        for (std::size_t p = 0; p + 1 < pool.size(); p += 2) {
            Genome& a = offspring[p];
            Genome& b = offspring[p + 1];
            a = pop.members[pool[p]];
            b = pop.members[pool[p + 1]];
            recombine_in_place(config.recombination, a, b, config.recombination_params, rng);
            mutate_in_place(config.mutation, a, bounds, mutation, rng);
            mutate_in_place(config.mutation, b, bounds, mutation, rng);
            clamp_in_place(a, bounds);
            clamp_in_place(b, bounds);
        }
        replace_random_with_elite(offspring, elite, rng);
        std::swap(pop.members, offspring);
        pop.fitness_valid = false;
    }
    return record;
}

} // namespace kbsga
