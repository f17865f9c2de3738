#include "kbsga/operators.hpp"

#include <algorithm>
#include <cmath>

namespace kbsga {

namespace {

void require_same_length(std::size_t a, std::size_t b) {
    if (a != b) {
        throw UsageError("parent genomes differ in length (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
    }
}

void require_unit_weight(double a, const char* what) {
    if (!(a >= 0.0 && a <= 1.0)) {
        throw UsageError(std::string(what) + " must lie in [0, 1]");
    }
}

void require_swaps(std::size_t k, std::size_t n) {
    if (k < 1) {
        throw UsageError("k_swaps must be at least 1");
    }
    if (k > n) {
        throw UsageError("k_swaps (" + std::to_string(k) + ") exceeds genome length (" +
                         std::to_string(n) + ")");
    }
}

Offspring copy_pair(const Genome& p1, const Genome& p2) {
    require_same_length(p1.size(), p2.size());
    return {p1, p2};
}

} // namespace

std::size_t RecombinationParams::swaps_for(std::size_t n) const noexcept {
    if (k_swaps != 0) {
        return k_swaps;
    }
    return std::max<std::size_t>(1, n / 2);
}

std::string_view to_string(Recombination r) noexcept {
    switch (r) {
    case Recombination::AlphaKbs: return "akbs";
    case Recombination::BetaKbs: return "bkbs";
    case Recombination::BlxAlpha: return "blx";
    case Recombination::Sbx: return "sbx";
    case Recombination::Arithmetic: return "ax";
    case Recombination::None: return "none";
    }
    return "?";
}

std::string_view to_string(Mutation m) noexcept {
    switch (m) {
    case Mutation::Simple: return "sm";
    case Mutation::Gaussian: return "gm";
    case Mutation::None: return "none";
    }
    return "?";
}

Recombination parse_recombination(std::string_view name) {
    for (auto r : {Recombination::AlphaKbs, Recombination::BetaKbs, Recombination::BlxAlpha,
                   Recombination::Sbx, Recombination::Arithmetic, Recombination::None}) {
        if (name == to_string(r)) {
            return r;
        }
    }
    throw ConfigError("unknown recombination operator '" + std::string(name) +
                      "' (expected akbs, bkbs, blx, sbx, ax or none)");
}

Mutation parse_mutation(std::string_view name) {
    for (auto m : {Mutation::Simple, Mutation::Gaussian, Mutation::None}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw ConfigError("unknown mutation operator '" + std::string(name) +
                      "' (expected sm, gm or none)");
}

// ---- scalar building blocks -------------------------------------------------

void blend_pair(double& v1, double& v2, double a) noexcept {
    const double lo = std::min(v1, v2);
    const double hi = std::max(v1, v2);
    const double n1 = a * v1 + (1.0 - a) * v2;
    const double n2 = (1.0 - a) * v1 + a * v2;
    v1 = std::clamp(n1, lo, hi);
    v2 = std::clamp(n2, lo, hi);
}

double sbx_spread_factor(double u, double eta) {
    if (!(eta > 0.0)) {
        throw UsageError("SBX distribution index eta must be positive");
    }
    const double e = 1.0 / (eta + 1.0);
    if (u < 0.5) {
        return std::pow(2.0 * u, e);
    }
    return std::pow(2.0 * (1.0 - u), -e);
}

void sbx_blend(double& x, double& y, double beta) noexcept {
    const double nx = 0.5 * (x * (1.0 - beta) + y * (1.0 + beta));
    const double ny = 0.5 * (x * (1.0 + beta) + y * (1.0 - beta));
    x = nx;
    y = ny;
}

std::size_t kbs_partner_position(std::size_t mu, double sigma, double deviate, std::size_t n) noexcept {
    const double u = std::floor(static_cast<double>(mu) + sigma * deviate + 0.5);
    if (!(u > 0.0)) {
        return 0;
    }
    const double last = static_cast<double>(n - 1);
    return u >= last ? n - 1 : static_cast<std::size_t>(u);
}

double gaussian_mutation_value(const Bounds& bounds, double z) noexcept {
    return bounds.midpoint() + std::sqrt(bounds.width()) * z;
}

double simple_mutation_value(const Bounds& bounds, double u) noexcept {
    return bounds.width() * u + bounds.lower();
}

// ---- recombination ------------------------------------------------------------

void ax_in_place(std::span<double> a, std::span<double> b, double lambda) {
    require_same_length(a.size(), b.size());
    require_unit_weight(lambda, "AX lambda");
    for (std::size_t i = 0; i < a.size(); ++i) {
        blend_pair(a[i], b[i], lambda);
    }
}

void blx_alpha_in_place(std::span<double> a, std::span<double> b, double alpha, RngStream& rng) {
    require_same_length(a.size(), b.size());
    if (!(alpha >= 0.0)) {
        throw UsageError("BLX alpha must be non-negative");
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double cmin = std::min(a[i], b[i]);
        const double cmax = std::max(a[i], b[i]);
        const double ext = (cmax - cmin) * alpha;
        const double lo = cmin - ext;
        const double hi = cmax + ext;
        a[i] = std::min(hi, lo + (hi - lo) * rng.uniform01());
        b[i] = std::min(hi, lo + (hi - lo) * rng.uniform01());
    }
}

void sbx_in_place(std::span<double> a, std::span<double> b, double eta, RngStream& rng, SbxMode mode) {
    require_same_length(a.size(), b.size());
    if (mode == SbxMode::PerPair) {
        const double beta = sbx_spread_factor(rng.uniform01(), eta);
        for (std::size_t i = 0; i < a.size(); ++i) {
            sbx_blend(a[i], b[i], beta);
        }
        return;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        sbx_blend(a[i], b[i], sbx_spread_factor(rng.uniform01(), eta));
    }
}

void alpha_kbs_in_place(std::span<double> a, std::span<double> b, double alpha,
                        std::size_t k_swaps, RngStream& rng) {
    require_same_length(a.size(), b.size());
    require_unit_weight(alpha, "KBS alpha");
    const std::size_t n = a.size();
    require_swaps(k_swaps, n);
    for (std::size_t swap = 0; swap < k_swaps; ++swap) {
        const auto i = static_cast<std::size_t>(rng.uniform_index(n));
        const auto j = static_cast<std::size_t>(rng.uniform_index(n));
        blend_pair(a[i], b[j], alpha);
    }
}

void beta_kbs_in_place(std::span<double> a, std::span<double> b, double alpha, double sigma_sq,
                       std::size_t k_swaps, RngStream& rng) {
    require_same_length(a.size(), b.size());
    require_unit_weight(alpha, "KBS alpha");
    if (!(sigma_sq > 0.0)) {
        throw UsageError("beta-KBS sigma_sq must be positive");
    }
    const std::size_t n = a.size();
    require_swaps(k_swaps, n);
    const double sigma = std::sqrt(sigma_sq);
    for (std::size_t swap = 0; swap < k_swaps; ++swap) {
        const auto i = static_cast<std::size_t>(rng.uniform_index(n));
        const std::size_t j = kbs_partner_position(i, sigma, rng.normal(), n);
        blend_pair(a[i], b[j], alpha);
    }
}

Offspring ax_crossover(const Genome& p1, const Genome& p2, double lambda) {
    auto out = copy_pair(p1, p2);
    ax_in_place(out.first, out.second, lambda);
    return out;
}

Offspring blx_alpha(const Genome& p1, const Genome& p2, double alpha, RngStream& rng) {
    auto out = copy_pair(p1, p2);
    blx_alpha_in_place(out.first, out.second, alpha, rng);
    return out;
}

Offspring sbx(const Genome& p1, const Genome& p2, double eta, RngStream& rng, SbxMode mode) {
    auto out = copy_pair(p1, p2);
    sbx_in_place(out.first, out.second, eta, rng, mode);
    return out;
}

Offspring alpha_kbs(const Genome& p1, const Genome& p2, double alpha, std::size_t k_swaps,
                    RngStream& rng) {
    auto out = copy_pair(p1, p2);
    alpha_kbs_in_place(out.first, out.second, alpha, k_swaps, rng);
    return out;
}

Offspring beta_kbs(const Genome& p1, const Genome& p2, double alpha, double sigma_sq,
                   std::size_t k_swaps, RngStream& rng) {
    auto out = copy_pair(p1, p2);
    beta_kbs_in_place(out.first, out.second, alpha, sigma_sq, k_swaps, rng);
    return out;
}

void recombine_in_place(Recombination op, std::span<double> a, std::span<double> b,
                        const RecombinationParams& params, RngStream& rng) {
    switch (op) {
    case Recombination::AlphaKbs:
        alpha_kbs_in_place(a, b, params.alpha, params.swaps_for(a.size()), rng);
        return;
    case Recombination::BetaKbs:
        beta_kbs_in_place(a, b, params.alpha, params.sigma_sq, params.swaps_for(a.size()), rng);
        return;
    case Recombination::BlxAlpha:
        blx_alpha_in_place(a, b, params.blx_alpha, rng);
        return;
    case Recombination::Sbx:
        sbx_in_place(a, b, params.eta, rng, params.sbx_mode);
        return;
    case Recombination::Arithmetic:
        ax_in_place(a, b, params.alpha);
        return;
    case Recombination::None:
        require_same_length(a.size(), b.size());
        return;
    }
}

void validate(Recombination op, const RecombinationParams& params, std::size_t n) {
    try {
        switch (op) {
        case Recombination::AlphaKbs:
        case Recombination::BetaKbs:
            require_unit_weight(params.alpha, "KBS alpha");
            require_swaps(params.swaps_for(n), n);
            if (op == Recombination::BetaKbs && !(params.sigma_sq > 0.0)) {
                throw UsageError("beta-KBS sigma_sq must be positive");
            }
            break;
        case Recombination::BlxAlpha:
            if (!(params.blx_alpha >= 0.0)) {
                throw UsageError("BLX alpha must be non-negative");
            }
            break;
        case Recombination::Sbx:
            if (!(params.eta > 0.0)) {
                throw UsageError("SBX distribution index eta must be positive");
            }
            break;
        case Recombination::Arithmetic:
            require_unit_weight(params.alpha, "AX lambda");
            break;
        case Recombination::None:
            break;
        }
    } catch (const UsageError& e) {
        throw ConfigError(e.what());
    }
}

// ---- mutation -----------------------------------------------------------------

void mutate_in_place(Mutation op, std::span<double> g, const Bounds& bounds,
                     const MutationParams& params, RngStream& rng) {
    if (op == Mutation::None) {
        return;
    }
    const double rate = params.per_gene_rate;
    for (double& x : g) {
        if (rng.uniform01() >= rate) {
            continue;
        }
        if (op == Mutation::Gaussian) {
            x = bounds.clamp(gaussian_mutation_value(bounds, rng.normal()));
        } else {
            x = bounds.clamp(simple_mutation_value(bounds, rng.uniform01()));
        }
    }
}

Genome gaussian_mutation(Genome g, const Bounds& bounds, const MutationParams& params, RngStream& rng) {
    mutate_in_place(Mutation::Gaussian, g, bounds, params, rng);
    return g;
}

Genome simple_mutation(Genome g, const Bounds& bounds, const MutationParams& params, RngStream& rng) {
    mutate_in_place(Mutation::Simple, g, bounds, params, rng);
    return g;
}

// ---- selection and replacement ------------------------------------------------

std::vector<std::size_t> tournament_select_indices(std::span<const double> fitness,
                                                   std::size_t pool_size,
                                                   std::size_t tournament_size, RngStream& rng) {
    if (fitness.empty()) {
        throw UsageError("tournament selection from an empty population");
    }
    if (pool_size % 2 != 0) {
        throw ConfigError("pool size must be even so the pool splits into parent pairs");
    }
    if (tournament_size < 1) {
        throw ConfigError("tournament size must be at least 1");
    }
    std::vector<std::size_t> winners;
    winners.reserve(pool_size);
    for (std::size_t t = 0; t < pool_size; ++t) {
        auto best = static_cast<std::size_t>(rng.uniform_index(fitness.size()));
        for (std::size_t c = 1; c < tournament_size; ++c) {
            const auto other = static_cast<std::size_t>(rng.uniform_index(fitness.size()));
            if (fitness[other] < fitness[best]) {
                best = other;
            }
        }
        winners.push_back(best);
    }
    return winners;
}

std::vector<Genome> tournament_select(const Population& pop, std::size_t pool_size,
                                      std::size_t tournament_size, RngStream& rng) {
    if (!pop.fitness_valid || pop.fitness.size() != pop.members.size()) {
        throw UsageError("tournament selection requires evaluated fitness");
    }
    std::vector<Genome> pool;
    pool.reserve(pool_size);
    for (std::size_t i : tournament_select_indices(pop.fitness, pool_size, tournament_size, rng)) {
        pool.push_back(pop.members[i]);
    }
    return pool;
}

std::size_t replace_random_with_elite(std::span<Genome> offspring, const Genome& elite, RngStream& rng) {
    if (offspring.empty()) {
        throw UsageError("elitist replacement into an empty offspring set");
    }
    const auto slot = static_cast<std::size_t>(rng.uniform_index(offspring.size()));
    offspring[slot] = elite;
    return slot;
}

Population elitist_replacement(std::vector<Genome> offspring, const Genome& elite, RngStream& rng) {
    replace_random_with_elite(offspring, elite, rng);
    Population pop;
    pop.fitness.assign(offspring.size(), 0.0);
    pop.members = std::move(offspring);
    pop.fitness_valid = false;
    return pop;
}

} // namespace kbsga
