#pragma once

/// @file objectives.hpp
/// @brief Benchmark functions, the 4-means clustering objective and a Lloyd baseline.
///
/// Rastrigin and Rosenbrock use their standard forms:
///   rastrigin(x)  = |x|^2 + 10 n - 10 sum cos(2 pi x_k)
///   rosenbrock(x) = sum_{k<n} 100 (x_{k+1} - x_k^2)^2 + (x_k - 1)^2
/// Schwefel keeps the truncated constant 418.982, so its value at the
/// reference optimum 420.9687 is small but not exactly zero.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kbsga/core.hpp"
#include "kbsga/rng.hpp"

namespace kbsga {

double paraboloid(std::span<const double> x) noexcept;
double rastrigin(std::span<const double> x) noexcept;
/// Throws UsageError for n < 2.
double rosenbrock(std::span<const double> x);
double schwefel(std::span<const double> x) noexcept;
double ackley(std::span<const double> x);
double griewangk(std::span<const double> x);

enum class BenchmarkId { Paraboloid, Rastrigin, Rosenbrock, Schwefel, Ackley, Griewangk };

struct BenchmarkFunction {
    BenchmarkId id;
    std::string_view name;
    Bounds bounds;
    double optimum_coordinate; ///< every gene of the optimum equals this value
    double optimum_value = 0.0;
    std::size_t min_dimension = 1;

    Genome optimum_location(std::size_t n) const { return Genome(n, optimum_coordinate); }
    double evaluate(std::span<const double> x) const;
};

const BenchmarkFunction& benchmark(BenchmarkId id);
std::span<const BenchmarkFunction> all_benchmarks();
/// Lookup by lower-case name ("paraboloid", ..., "griewangk"); nullopt if unknown.
std::optional<BenchmarkId> find_benchmark(std::string_view name);

// ---- k-means --------------------------------------------------------------------

/// Point cloud stored row-major: point i occupies coords[i*dim, (i+1)*dim).
struct Dataset {
    std::size_t dim = 0;
    std::uint64_t seed = 0;
    std::vector<double> coords;

    std::size_t size() const noexcept { return dim == 0 ? 0 : coords.size() / dim; }
    std::span<const double> point(std::size_t i) const { return {coords.data() + i * dim, dim}; }

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// m points with coordinates i.i.d. uniform in [low, high). Requires m > k.
Dataset generate_dataset(std::size_t m, std::size_t d, std::uint64_t seed, std::size_t k = 4,
                         double low = 0.0, double high = 10.0);

/// Text form: header "m d seed", then one point per line, coordinates with 17 significant digits.
void write_dataset(std::ostream& out, const Dataset& data);
Dataset read_dataset(std::istream& in);
void save_dataset(const std::filesystem::path& path, const Dataset& data);
Dataset load_dataset(const std::filesystem::path& path);

/// k centroids of dimension d, concatenated into one genome of length k*d.
struct ClusteringSolution {
    std::size_t k = 0;
    std::size_t dim = 0;
    Genome centroids;

    std::span<const double> centroid(std::size_t j) const { return {centroids.data() + j * dim, dim}; }
};

/// Nearest centroid per point by Euclidean distance; ties go to the lowest centroid index.
std::vector<std::size_t> assign_points(std::span<const double> centroids, const Dataset& data,
                                       std::size_t k);

/// Sum over clusters of sqrt(within-cluster sum of squared deviations); empty clusters add 0.
double kmeans_objective(std::span<const double> genome, const Dataset& data, std::size_t k);

/// Classical within-cluster sum of squares for the nearest-centroid assignment.
double kmeans_sse(std::span<const double> genome, const Dataset& data, std::size_t k);

struct LloydResult {
    ClusteringSolution solution;
    double objective = 0.0;          ///< kmeans_objective of the final centroids
    std::size_t iterations = 0;
    std::vector<double> sse_trace;   ///< SSE after each assignment step
};

/// Lloyd's algorithm: k distinct data points as seeds, assign/update until the
/// assignment is stable or max_iter updates were made. Empty clusters are
/// re-seeded from a random data point.
LloydResult lloyd(const Dataset& data, std::size_t k, RngStream& rng, std::size_t max_iter = 300);

// ---- evaluation interface ---------------------------------------------------------

/// What the engine optimizes: a deterministic function of a genome over a box.
struct Problem {
    std::string name;
    std::size_t dimension = 0;
    Bounds bounds{0.0, 1.0};
    std::function<double(std::span<const double>)> evaluate;
};

Problem make_benchmark_problem(BenchmarkId id, std::size_t n);

/// Centroid search over a shared dataset; genome length k*d, genes bounded by [low, high].
Problem make_kmeans_problem(std::shared_ptr<const Dataset> data, std::size_t k, double low = 0.0,
                            double high = 10.0);

} // namespace kbsga
