#pragma once

/// @file core.hpp
/// @brief Genome, bounds and population types used by every other module.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kbsga/rng.hpp"

namespace kbsga {

/// Caller broke a precondition (mismatched lengths, empty input, ...).
class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid user-supplied configuration (sizes, bounds, names).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Chromosome: one real value per decision variable. All objectives minimize.
using Genome = std::vector<double>;

/// Box constraint applied uniformly to every gene of a problem.
class Bounds {
  public:
    Bounds(double lower, double upper);

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    double width() const noexcept { return upper_ - lower_; }
    double midpoint() const noexcept { return 0.5 * (lower_ + upper_); }
    bool contains(double x) const noexcept { return x >= lower_ && x <= upper_; }
    bool contains(std::span<const double> g) const noexcept;

    /// Clamp one value into [lower, upper].
    double clamp(double x) const noexcept { return x < lower_ ? lower_ : (x > upper_ ? upper_ : x); }

    friend bool operator==(const Bounds&, const Bounds&) = default;

  private:
    double lower_;
    double upper_;
};

struct Population {
    std::vector<Genome> members;
    std::vector<double> fitness;
    bool fitness_valid = false;

    std::size_t size() const noexcept { return members.size(); }
    std::size_t dimension() const noexcept { return members.empty() ? 0 : members.front().size(); }
};

struct BestMember {
    std::size_t index;
    Genome genome;
    double fitness;
};

/// Uniform i.i.d. genes in [bounds.lower, bounds.upper]. Fitness is left invalid.
Population init_population(std::size_t dim, std::size_t size, const Bounds& bounds, RngStream& rng);

Genome clamp_to_bounds(Genome g, const Bounds& bounds);
void clamp_in_place(std::span<double> g, const Bounds& bounds) noexcept;

/// Index of the lowest value; ties go to the lowest index.
std::size_t argmin(std::span<const double> values);

/// Fittest member of an evaluated population (lowest objective, lowest index on ties).
BestMember best_of(const Population& pop);

} // namespace kbsga
