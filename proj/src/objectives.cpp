#include "kbsga/objectives.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace kbsga {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double sum_squares(std::span<const double> x) noexcept {
    double s = 0.0;
    for (double v : x) {
        s += v * v;
    }
    return s;
}

void require_nonempty(std::span<const double> x, const char* fn) {
    if (x.empty()) {
        throw UsageError(std::string(fn) + " requires at least one variable");
    }
}

const std::array<BenchmarkFunction, 6> benchmark_table{{
    {BenchmarkId::Paraboloid, "paraboloid", Bounds(-10.0, 10.0), 0.0, 0.0, 1},
    {BenchmarkId::Rastrigin, "rastrigin", Bounds(-5.12, 5.12), 0.0, 0.0, 1},
    {BenchmarkId::Rosenbrock, "rosenbrock", Bounds(-5.12, 5.12), 1.0, 0.0, 2},
    {BenchmarkId::Schwefel, "schwefel", Bounds(-500.0, 500.0), 420.9687, 0.0, 1},
    {BenchmarkId::Ackley, "ackley", Bounds(-32.0, 32.0), 0.0, 0.0, 1},
    {BenchmarkId::Griewangk, "griewangk", Bounds(-600.0, 600.0), 0.0, 0.0, 1},
}};

} // namespace

double paraboloid(std::span<const double> x) noexcept { return sum_squares(x); }

double rastrigin(std::span<const double> x) noexcept {
    double s = 10.0 * static_cast<double>(x.size());
    for (double v : x) {
        s += v * v - 10.0 * std::cos(two_pi * v);
    }
    return s;
}

double rosenbrock(std::span<const double> x) {
    if (x.size() < 2) {
        throw UsageError("rosenbrock requires at least two variables");
    }
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
        const double a = x[k + 1] - x[k] * x[k];
        const double b = x[k] - 1.0;
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double schwefel(std::span<const double> x) noexcept {
    double s = 418.982 * static_cast<double>(x.size());
    for (double v : x) {
        s -= v * std::sin(std::sqrt(std::abs(v)));
    }
    return s;
}

double ackley(std::span<const double> x) {
    require_nonempty(x, "ackley");
    const double n = static_cast<double>(x.size());
    double cos_sum = 0.0;
    for (double v : x) {
        cos_sum += std::cos(two_pi * v);
    }
    const double value = 20.0 + std::numbers::e - 20.0 * std::exp(-0.2 * std::sqrt(sum_squares(x) / n)) -
                         std::exp(cos_sum / n);
    // 20 + e - 20 - e leaves a rounding residue of order 1e-15 at the optimum
    return std::max(0.0, value);
}

double griewangk(std::span<const double> x) {
    require_nonempty(x, "griewangk");
    double prod = 1.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        prod *= std::cos(x[k] / std::sqrt(static_cast<double>(k + 1)));
    }
    return 1.0 + sum_squares(x) / 4000.0 - prod;
}

double BenchmarkFunction::evaluate(std::span<const double> x) const {
    switch (id) {
    case BenchmarkId::Paraboloid: return paraboloid(x);
    case BenchmarkId::Rastrigin: return rastrigin(x);
    case BenchmarkId::Rosenbrock: return rosenbrock(x);
    case BenchmarkId::Schwefel: return schwefel(x);
    case BenchmarkId::Ackley: return ackley(x);
    case BenchmarkId::Griewangk: return griewangk(x);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

const BenchmarkFunction& benchmark(BenchmarkId id) {
    return benchmark_table[static_cast<std::size_t>(id)];
}

std::span<const BenchmarkFunction> all_benchmarks() { return benchmark_table; }

std::optional<BenchmarkId> find_benchmark(std::string_view name) {
    for (const auto& f : benchmark_table) {
        if (f.name == name) {
            return f.id;
        }
    }
    return std::nullopt;
}

// ---- k-means --------------------------------------------------------------------

Dataset generate_dataset(std::size_t m, std::size_t d, std::uint64_t seed, std::size_t k, double low,
                         double high) {
    if (d < 1) {
        throw ConfigError("dataset dimension must be at least 1");
    }
    if (m <= k) {
        throw ConfigError("dataset needs more points (" + std::to_string(m) + ") than clusters (" +
                          std::to_string(k) + ")");
    }
    const Bounds box(low, high);
    RngStream rng(seed);
    Dataset data;
    data.dim = d;
    data.seed = seed;
    data.coords.resize(m * d);
    for (double& c : data.coords) {
        c = rng.uniform(box.lower(), box.upper());
    }
    return data;
}

void write_dataset(std::ostream& out, const Dataset& data) {
    out << data.size() << ' ' << data.dim << ' ' << data.seed << '\n';
    char buf[32];
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto p = data.point(i);
        for (std::size_t j = 0; j < p.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", p[j]);
            if (j != 0) {
                out << ' ';
            }
            out << buf;
        }
        out << '\n';
    }
}

Dataset read_dataset(std::istream& in) {
    std::size_t m = 0;
    Dataset data;
    if (!(in >> m >> data.dim >> data.seed) || data.dim == 0) {
        throw ConfigError("dataset header must be 'm d seed' with d >= 1");
    }
    data.coords.resize(m * data.dim);
    std::string token;
    for (double& c : data.coords) {
        if (!(in >> token)) {
            throw ConfigError("dataset ends before " + std::to_string(m) + " points were read");
        }
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), c);
        if (ec != std::errc{} || ptr != token.data() + token.size()) {
            throw ConfigError("malformed dataset coordinate '" + token + "'");
        }
    }
    return data;
}

void save_dataset(const std::filesystem::path& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    write_dataset(out, data);
    if (!out.flush()) {
        throw IoError("failed writing " + path.string());
    }
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return read_dataset(in);
}

namespace {

void require_genome_shape(std::span<const double> genome, const Dataset& data, std::size_t k) {
    if (k < 1) {
        throw UsageError("k-means needs at least one centroid");
    }
    if (genome.size() != k * data.dim) {
        throw UsageError("centroid genome length " + std::to_string(genome.size()) + " != k*d = " +
                         std::to_string(k * data.dim));
    }
}

/// Squared distance from point p to centroid j, and the nearest centroid.
std::size_t nearest(std::span<const double> genome, std::span<const double> p, std::size_t k,
                    double& best_d2) noexcept {
    const std::size_t d = p.size();
    std::size_t best = 0;
    best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
        const double* c = genome.data() + j * d;
        double d2 = 0.0;
        for (std::size_t t = 0; t < d; ++t) {
            const double diff = p[t] - c[t];
            d2 += diff * diff;
        }
        if (d2 < best_d2) {
            best_d2 = d2;
            best = j;
        }
    }
    return best;
}

template <typename Fn>
void with_cluster_buffer(std::size_t k, Fn&& fn) {
    constexpr std::size_t inline_k = 16;
    if (k <= inline_k) {
        std::array<double, inline_k> buf{};
        fn(std::span<double>(buf.data(), k));
    } else {
        std::vector<double> buf(k, 0.0);
        fn(std::span<double>(buf));
    }
}

} // namespace

std::vector<std::size_t> assign_points(std::span<const double> centroids, const Dataset& data,
                                       std::size_t k) {
    require_genome_shape(centroids, data, k);
    std::vector<std::size_t> labels(data.size());
    double d2 = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        labels[i] = nearest(centroids, data.point(i), k, d2);
    }
    return labels;
}

double kmeans_objective(std::span<const double> genome, const Dataset& data, std::size_t k) {
    require_genome_shape(genome, data, k);
    double total = 0.0;
    with_cluster_buffer(k, [&](std::span<double> sse) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const std::size_t j = nearest(genome, data.point(i), k, d2);
            sse[j] += d2;
        }
        for (double s : sse) {
            total += std::sqrt(s);
        }
    });
    return total;
}

double kmeans_sse(std::span<const double> genome, const Dataset& data, std::size_t k) {
    require_genome_shape(genome, data, k);
    double total = 0.0;
    double d2 = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        nearest(genome, data.point(i), k, d2);
        total += d2;
    }
    return total;
}

LloydResult lloyd(const Dataset& data, std::size_t k, RngStream& rng, std::size_t max_iter) {
    const std::size_t m = data.size();
    const std::size_t d = data.dim;
    if (k < 1 || m <= k) {
        throw UsageError("lloyd needs 1 <= k < number of points");
    }
    if (max_iter < 1) {
        throw UsageError("lloyd needs max_iter >= 1");
    }

    // k distinct seed points via a partial Fisher-Yates shuffle
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) {
        order[i] = i;
    }
    for (std::size_t j = 0; j < k; ++j) {
        const auto r = j + static_cast<std::size_t>(rng.uniform_index(m - j));
        std::swap(order[j], order[r]);
    }

    LloydResult result;
    result.solution.k = k;
    result.solution.dim = d;
    Genome& centroids = result.solution.centroids;
    centroids.resize(k * d);
    for (std::size_t j = 0; j < k; ++j) {
        const auto p = data.point(order[j]);
        std::copy(p.begin(), p.end(), centroids.begin() + static_cast<std::ptrdiff_t>(j * d));
    }

    std::vector<std::size_t> labels(m, k); // k = "unassigned"
    std::vector<double> sums(k * d);
    std::vector<std::size_t> counts(k);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        double sse = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double d2 = 0.0;
            const std::size_t j = nearest(centroids, data.point(i), k, d2);
            sse += d2;
            if (j != labels[i]) {
                labels[i] = j;
                changed = true;
            }
        }
        result.sse_trace.push_back(sse);
        if (!changed) {
            break;
        }

        std::fill(sums.begin(), sums.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < m; ++i) {
            const auto p = data.point(i);
            ++counts[labels[i]];
            for (std::size_t t = 0; t < d; ++t) {
                sums[labels[i] * d + t] += p[t];
            }
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (counts[j] == 0) {
                const auto p = data.point(static_cast<std::size_t>(rng.uniform_index(m)));
                std::copy(p.begin(), p.end(), centroids.begin() + static_cast<std::ptrdiff_t>(j * d));
                continue;
            }
            for (std::size_t t = 0; t < d; ++t) {
                centroids[j * d + t] = sums[j * d + t] / static_cast<double>(counts[j]);
            }
        }
        result.iterations = iter + 1;
    }
    result.objective = kmeans_objective(centroids, data, k);
    return result;
}

// ---- evaluation interface ---------------------------------------------------------

Problem make_benchmark_problem(BenchmarkId id, std::size_t n) {
    const BenchmarkFunction& f = benchmark(id);
    if (n < f.min_dimension) {
        throw ConfigError(std::string(f.name) + " needs dimension >= " + std::to_string(f.min_dimension));
    }
    Problem p;
    p.name = std::string(f.name);
    p.dimension = n;
    p.bounds = f.bounds;
    p.evaluate = [&f](std::span<const double> x) { return f.evaluate(x); };
    return p;
}

Problem make_kmeans_problem(std::shared_ptr<const Dataset> data, std::size_t k, double low, double high) {
    if (!data || data->size() <= k) {
        throw ConfigError("k-means problem needs a dataset with more than k points");
    }
    Problem p;
    p.name = "kmeans" + std::to_string(k);
    p.dimension = k * data->dim;
    p.bounds = Bounds(low, high);
    p.evaluate = [data = std::move(data), k](std::span<const double> x) {
        return kmeans_objective(x, *data, k);
    };
    return p;
}

} // namespace kbsga
