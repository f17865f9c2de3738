#include "kbsga/core.hpp"

#include <algorithm>
#include <cmath>

namespace kbsga {

Bounds::Bounds(double lower, double upper) : lower_(lower), upper_(upper) {
    if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
        throw ConfigError("bounds must satisfy lower < upper (got [" + std::to_string(lower) + ", " +
                          std::to_string(upper) + "])");
    }
}

bool Bounds::contains(std::span<const double> g) const noexcept {
    return std::all_of(g.begin(), g.end(), [this](double x) { return contains(x); });
}

Population init_population(std::size_t dim, std::size_t size, const Bounds& bounds, RngStream& rng) {
    if (dim < 1) {
        throw ConfigError("population dimension must be at least 1");
    }
    if (size < 2) {
        throw ConfigError("population size must be at least 2");
    }
    Population pop;
    pop.members.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        Genome g(dim);
        for (double& x : g) {
            // uniform01 < 1, so clamping only matters for rounding at the top edge
            x = bounds.clamp(rng.uniform(bounds.lower(), bounds.upper()));
        }
        pop.members.push_back(std::move(g));
    }
    pop.fitness.assign(size, 0.0);
    pop.fitness_valid = false;
    return pop;
}

void clamp_in_place(std::span<double> g, const Bounds& bounds) noexcept {
    for (double& x : g) {
        x = bounds.clamp(x);
    }
}

Genome clamp_to_bounds(Genome g, const Bounds& bounds) {
    clamp_in_place(g, bounds);
    return g;
}

std::size_t argmin(std::span<const double> values) {
    if (values.empty()) {
        throw UsageError("argmin of an empty sequence");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[best]) {
            best = i;
        }
    }
    return best;
}

BestMember best_of(const Population& pop) {
    if (pop.members.empty()) {
        throw UsageError("best_of: empty population");
    }
    if (!pop.fitness_valid || pop.fitness.size() != pop.members.size()) {
        throw UsageError("best_of: population fitness is not valid");
    }
    const std::size_t i = argmin(pop.fitness);
    return {i, pop.members[i], pop.fitness[i]};
}

} // namespace kbsga
