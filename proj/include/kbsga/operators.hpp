#pragma once

/// @file operators.hpp
/// @brief Recombination, mutation and selection operators for real-coded GAs.
///
/// Every operator comes in two forms: a value form taking parents by const
/// reference and returning a fresh offspring pair, and an in-place form on
/// spans used by the engine to avoid per-generation allocation. Both forms
/// consume random deviates in the same order, so they are interchangeable
/// for a given stream state.
///
/// Scalar building blocks (spread factor, blend, partner position, mutation
/// value) are exposed so their formulas can be checked with chosen deviates.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kbsga/core.hpp"
#include "kbsga/rng.hpp"

namespace kbsga {

enum class Recombination {
    AlphaKbs,   ///< K swaps between uniformly chosen loci, blended with weight alpha
    BetaKbs,    ///< as AlphaKbs, partner locus drawn from N(locus, sigma^2)
    BlxAlpha,   ///< uniform sample from the parents' interval extended by blx_alpha
    Sbx,        ///< simulated binary crossover with distribution index eta
    Arithmetic, ///< AX: per-locus convex blend with weight alpha
    None,       ///< offspring are copies of the parents
};

enum class Mutation {
    Simple,   ///< SM: uniform resample in the bounds
    Gaussian, ///< GM: midpoint + sqrt(width) * N(0,1), clamped
    None,
};

/// How SBX draws its spread factor.
enum class SbxMode {
    PerLocus, ///< fresh u (hence beta) at every locus
    PerPair,  ///< one u shared by all loci of a parent pair
};

struct RecombinationParams {
    double alpha = 0.4;     ///< KBS blend weight, also AX lambda
    double blx_alpha = 0.5; ///< BLX interval extension
    double eta = 2.0;       ///< SBX distribution index
    std::size_t k_swaps = 0; ///< KBS swap count; 0 means floor(n/2), at least 1
    double sigma_sq = 4.0;  ///< variance of the beta-KBS partner position
    SbxMode sbx_mode = SbxMode::PerLocus;

    /// Swap count actually used for genomes of length n.
    std::size_t swaps_for(std::size_t n) const noexcept;
};

struct MutationParams {
    double per_gene_rate = 0.0;

    /// One mutation per string on average.
    static MutationParams one_per_string(std::size_t n) { return {1.0 / static_cast<double>(n)}; }
};

using Offspring = std::pair<Genome, Genome>;

std::string_view to_string(Recombination r) noexcept;
std::string_view to_string(Mutation m) noexcept;
/// Accepts the short CSV names ("akbs", "bkbs", "blx", "sbx", "ax", "none").
Recombination parse_recombination(std::string_view name);
/// Accepts "sm", "gm", "none".
Mutation parse_mutation(std::string_view name);

// ---- scalar building blocks -------------------------------------------------

/// v1' = a v1 + (1-a) v2, v2' = (1-a) v1 + a v2; results held in [min, max] of the inputs.
void blend_pair(double& v1, double& v2, double a) noexcept;

/// SBX spread factor for a uniform deviate u in [0, 1).
double sbx_spread_factor(double u, double eta);

/// SBX update of one locus with spread factor beta.
void sbx_blend(double& x, double& y, double beta) noexcept;

/// Beta-KBS partner index: round(mu + sigma * deviate), clamped to [0, n-1].
std::size_t kbs_partner_position(std::size_t mu, double sigma, double deviate, std::size_t n) noexcept;

double gaussian_mutation_value(const Bounds& bounds, double z) noexcept;
double simple_mutation_value(const Bounds& bounds, double u) noexcept;

// ---- recombination ------------------------------------------------------------

Offspring ax_crossover(const Genome& p1, const Genome& p2, double lambda);
Offspring blx_alpha(const Genome& p1, const Genome& p2, double alpha, RngStream& rng);
Offspring sbx(const Genome& p1, const Genome& p2, double eta, RngStream& rng,
              SbxMode mode = SbxMode::PerLocus);
Offspring alpha_kbs(const Genome& p1, const Genome& p2, double alpha, std::size_t k_swaps,
                    RngStream& rng);
Offspring beta_kbs(const Genome& p1, const Genome& p2, double alpha, double sigma_sq,
                   std::size_t k_swaps, RngStream& rng);

void ax_in_place(std::span<double> a, std::span<double> b, double lambda);
void blx_alpha_in_place(std::span<double> a, std::span<double> b, double alpha, RngStream& rng);
void sbx_in_place(std::span<double> a, std::span<double> b, double eta, RngStream& rng,
                  SbxMode mode = SbxMode::PerLocus);
void alpha_kbs_in_place(std::span<double> a, std::span<double> b, double alpha,
                        std::size_t k_swaps, RngStream& rng);
void beta_kbs_in_place(std::span<double> a, std::span<double> b, double alpha, double sigma_sq,
                       std::size_t k_swaps, RngStream& rng);

/// Dispatch on the operator id; the pair is overwritten with the offspring.
void recombine_in_place(Recombination op, std::span<double> a, std::span<double> b,
                        const RecombinationParams& params, RngStream& rng);

/// Checks the parameter ranges the operator uses for genomes of length n.
void validate(Recombination op, const RecombinationParams& params, std::size_t n);

// ---- mutation -----------------------------------------------------------------

Genome gaussian_mutation(Genome g, const Bounds& bounds, const MutationParams& params, RngStream& rng);
Genome simple_mutation(Genome g, const Bounds& bounds, const MutationParams& params, RngStream& rng);
void mutate_in_place(Mutation op, std::span<double> g, const Bounds& bounds,
                     const MutationParams& params, RngStream& rng);

// ---- selection and replacement ------------------------------------------------

/// Indices of pool_size tournament winners (draws with replacement, fitter always wins).
std::vector<std::size_t> tournament_select_indices(std::span<const double> fitness,
                                                   std::size_t pool_size,
                                                   std::size_t tournament_size, RngStream& rng);

std::vector<Genome> tournament_select(const Population& pop, std::size_t pool_size,
                                      std::size_t tournament_size, RngStream& rng);

/// Overwrites one uniformly chosen offspring with the elite; returns the slot used.
std::size_t replace_random_with_elite(std::span<Genome> offspring, const Genome& elite, RngStream& rng);

/// Offspring become a population (fitness invalid) with one random slot taken by the elite.
Population elitist_replacement(std::vector<Genome> offspring, const Genome& elite, RngStream& rng);

} // namespace kbsga
