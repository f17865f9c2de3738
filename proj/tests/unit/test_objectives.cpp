#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "kbsga/objectives.hpp"

using namespace kbsga;
using doctest::Approx;

TEST_CASE("paraboloid") {
    CHECK(paraboloid(Genome(5, 0.0)) == 0.0);
    CHECK(paraboloid(Genome{1, 2}) == 5.0);
    CHECK(paraboloid(Genome{-3}) == 9.0);
}

TEST_CASE("rastrigin") {
    CHECK(rastrigin(Genome(4, 0.0)) == 0.0);
    CHECK(rastrigin(Genome{1, 1}) == Approx(2.0).epsilon(1e-12));
    CHECK(rastrigin(Genome{0.5}) == Approx(20.25).epsilon(1e-12));
}

TEST_CASE("rosenbrock") {
    CHECK(rosenbrock(Genome(10, 1.0)) == 0.0);
    CHECK(rosenbrock(Genome{0, 0}) == 1.0);
    CHECK(rosenbrock(Genome{-1, 1}) == 4.0);
    CHECK_THROWS_AS(rosenbrock(Genome{1}), UsageError);
}

TEST_CASE("schwefel") {
    CHECK(std::abs(schwefel(Genome(2, 420.9687))) < 0.01);
    CHECK(schwefel(Genome(2, 420.9687)) == Approx(-0.0017745443249168602).epsilon(1e-6));
    CHECK(schwefel(Genome(3, 0.0)) == Approx(1256.946).epsilon(1e-14));
    CHECK(schwefel(Genome{-420.9687, 420.9687}) == Approx(837.964).epsilon(1e-9));
}

TEST_CASE("ackley") {
    for (std::size_t n : {1u, 2u, 5u, 50u}) {
        CHECK(ackley(Genome(n, 0.0)) < 1e-12);
    }
    CHECK(ackley(Genome{1, 1}) == Approx(3.625384938440362).epsilon(1e-12));
    CHECK(ackley(Genome(5, 32.0)) > 19.0);
    CHECK_THROWS_AS(ackley(Genome{}), UsageError);
}

TEST_CASE("griewangk") {
    CHECK(griewangk(Genome(5, 0.0)) == 0.0);
    // 1 + 600^2/4000 - cos(600), cos(600) ~ -0.99902
    CHECK(griewangk(Genome{600}) == Approx(91.99902347883291).epsilon(1e-12));
    CHECK(griewangk(Genome{std::numbers::pi, 0.0}) == Approx(2.0024674011002723).epsilon(1e-12));
}

TEST_CASE("benchmarks are symmetric where expected") {
    RngStream rng(5);
    for (BenchmarkId id : {BenchmarkId::Paraboloid, BenchmarkId::Rastrigin, BenchmarkId::Ackley,
                           BenchmarkId::Griewangk}) {
        const BenchmarkFunction& f = benchmark(id);
        for (int t = 0; t < 500; ++t) {
            Genome x(1 + rng.uniform_index(10));
            for (double& v : x) v = rng.uniform(f.bounds.lower(), f.bounds.upper());
            Genome neg = x;
            for (double& v : neg) v = -v;
            REQUIRE(f.evaluate(x) == Approx(f.evaluate(neg)).epsilon(1e-12));
        }
    }
}

TEST_CASE("benchmarks are finite over their domain") {
    RngStream rng(6);
    for (const BenchmarkFunction& f : all_benchmarks()) {
        for (int t = 0; t < 300; ++t) {
            Genome x(2 + rng.uniform_index(49));
            for (double& v : x) v = rng.uniform(f.bounds.lower(), f.bounds.upper());
            REQUIRE(std::isfinite(f.evaluate(x)));
        }
        // corners
        REQUIRE(std::isfinite(f.evaluate(Genome(7, f.bounds.lower()))));
        REQUIRE(std::isfinite(f.evaluate(Genome(7, f.bounds.upper()))));
    }
}

TEST_CASE("benchmark table lookup") {
    CHECK(find_benchmark("ackley") == BenchmarkId::Ackley);
    CHECK_FALSE(find_benchmark("sphere").has_value());
    CHECK(benchmark(BenchmarkId::Schwefel).bounds == Bounds(-500, 500));
    CHECK(benchmark(BenchmarkId::Rosenbrock).optimum_location(3) == Genome{1, 1, 1});
    CHECK_THROWS_AS(make_benchmark_problem(BenchmarkId::Rosenbrock, 1), ConfigError);
    const Problem p = make_benchmark_problem(BenchmarkId::Paraboloid, 3);
    CHECK(p.evaluate(Genome{1, 1, 1}) == 3.0);
    CHECK(p.bounds == Bounds(-10, 10));
}

// ---- k-means ---------------------------------------------------------------------

namespace {

Dataset make_dataset(std::size_t dim, std::vector<double> coords) {
    Dataset d;
    d.dim = dim;
    d.coords = std::move(coords);
    return d;
}

} // namespace

TEST_CASE("generate_dataset: determinism, containment, seed sensitivity") {
    const Dataset a = generate_dataset(100, 2, 99);
    const Dataset b = generate_dataset(100, 2, 99);
    const Dataset c = generate_dataset(100, 2, 100);
    CHECK(a.size() == 100);
    CHECK(a == b);
    CHECK(a.coords != c.coords);
    for (double v : a.coords) {
        REQUIRE(v >= 0.0);
        REQUIRE(v <= 10.0);
    }
    CHECK_THROWS_AS(generate_dataset(4, 2, 1, 4), ConfigError);
}

TEST_CASE("dataset text form round-trips bit-exactly") {
    const Dataset a = generate_dataset(37, 3, 12345);
    std::stringstream ss;
    write_dataset(ss, a);
    const std::string text = ss.str();
    CHECK(text.rfind("37 3 12345\n", 0) == 0);
    const Dataset b = read_dataset(ss);
    CHECK(a == b);

    std::stringstream bad("2 2 1\n1 2\n3\n");
    CHECK_THROWS_AS(read_dataset(bad), ConfigError);
}

TEST_CASE("kmeans objective examples") {
    // each point sits on a centroid
    const Dataset on = make_dataset(2, {0, 0, 5, 5, 9, 1, 2, 8});
    CHECK(kmeans_objective(Genome{0, 0, 5, 5, 9, 1, 2, 8}, on, 4) == 0.0);

    const Dataset pts = make_dataset(1, {0, 2});
    CHECK(kmeans_objective(Genome{1}, pts, 1) == Approx(std::sqrt(2.0)));
    CHECK(kmeans_objective(Genome{0, 2}, pts, 2) == 0.0);
    CHECK(kmeans_objective(Genome{1, 100}, pts, 2) == Approx(std::sqrt(2.0)));

    CHECK_THROWS_AS(kmeans_objective(Genome{1, 2, 3}, pts, 2), UsageError);
}

TEST_CASE("kmeans assignment ties go to the lowest centroid") {
    const Dataset pts = make_dataset(1, {1.0});
    CHECK(assign_points(Genome{0, 2}, pts, 2) == std::vector<std::size_t>{0});
    CHECK(assign_points(Genome{2, 0}, pts, 2) == std::vector<std::size_t>{0});
}

TEST_CASE("kmeans objective is invariant to centroid block order") {
    const Dataset data = generate_dataset(100, 3, 7);
    RngStream rng(8);
    for (int t = 0; t < 200; ++t) {
        Genome g(12);
        for (double& v : g) v = rng.uniform(0, 10);
        Genome perm(12);
        const std::size_t order[4] = {2, 0, 3, 1};
        for (std::size_t j = 0; j < 4; ++j) {
            std::copy_n(g.begin() + static_cast<std::ptrdiff_t>(order[j] * 3), 3,
                        perm.begin() + static_cast<std::ptrdiff_t>(j * 3));
        }
        REQUIRE(kmeans_objective(perm, data, 4) == Approx(kmeans_objective(g, data, 4)).epsilon(1e-12));
    }
}

TEST_CASE("kmeans objective against a brute-force evaluation") {
    const Dataset data = generate_dataset(30, 2, 3);
    RngStream rng(4);
    for (int t = 0; t < 100; ++t) {
        Genome g(8);
        for (double& v : g) v = rng.uniform(0, 10);
        double sse[4] = {0, 0, 0, 0};
        for (std::size_t i = 0; i < data.size(); ++i) {
            const auto p = data.point(i);
            std::size_t best = 0;
            double bd = 1e300;
            for (std::size_t j = 0; j < 4; ++j) {
                const double dx = p[0] - g[2 * j], dy = p[1] - g[2 * j + 1];
                if (dx * dx + dy * dy < bd) {
                    bd = dx * dx + dy * dy;
                    best = j;
                }
            }
            sse[best] += bd;
        }
        const double expected = std::sqrt(sse[0]) + std::sqrt(sse[1]) + std::sqrt(sse[2]) + std::sqrt(sse[3]);
        REQUIRE(kmeans_objective(g, data, 4) == Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("lloyd: k = 1 converges to the mean after one update") {
    const Dataset data = generate_dataset(50, 2, 11);
    RngStream rng(1);
    const LloydResult r = lloyd(data, 1, rng, 1);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        mx += data.point(i)[0];
        my += data.point(i)[1];
    }
    CHECK(r.solution.centroids[0] == Approx(mx / 50).epsilon(1e-12));
    CHECK(r.solution.centroids[1] == Approx(my / 50).epsilon(1e-12));
}

TEST_CASE("lloyd: separated blobs are recovered") {
    // four tight blobs around the corners of a square
    RngStream gen(2);
    const double centres[4][2] = {{1, 1}, {1, 9}, {9, 1}, {9, 9}};
    Dataset data;
    data.dim = 2;
    double sse_at_means = 0.0, objective_at_means = 0.0;
    for (const auto& c : centres) {
        std::vector<double> xs, ys;
        for (int i = 0; i < 25; ++i) {
            xs.push_back(c[0] + gen.uniform(-0.2, 0.2));
            ys.push_back(c[1] + gen.uniform(-0.2, 0.2));
            data.coords.push_back(xs.back());
            data.coords.push_back(ys.back());
        }
        double mx = 0, my = 0;
        for (int i = 0; i < 25; ++i) {
            mx += xs[i] / 25;
            my += ys[i] / 25;
        }
        double s = 0;
        for (int i = 0; i < 25; ++i) s += (xs[i] - mx) * (xs[i] - mx) + (ys[i] - my) * (ys[i] - my);
        sse_at_means += s;
        objective_at_means += std::sqrt(s);
    }
    // best of a few restarts; a single restart can merge two blobs
    double best = 1e300;
    for (std::uint64_t s = 0; s < 10; ++s) {
        RngStream rng(s);
        best = std::min(best, lloyd(data, 4, rng).objective);
    }
    CHECK(best == Approx(objective_at_means).epsilon(0.01));
    (void)sse_at_means;
}

TEST_CASE("lloyd: deterministic and SSE non-increasing") {
    const Dataset data = generate_dataset(100, 5, 21);
    for (std::uint64_t s = 0; s < 20; ++s) {
        RngStream r1(s), r2(s);
        const LloydResult a = lloyd(data, 4, r1);
        const LloydResult b = lloyd(data, 4, r2);
        REQUIRE(a.solution.centroids == b.solution.centroids);
        REQUIRE(a.objective == b.objective);
        for (std::size_t t = 1; t < a.sse_trace.size(); ++t) {
            REQUIRE(a.sse_trace[t] <= a.sse_trace[t - 1] * (1 + 1e-12));
        }
        REQUIRE(a.objective == Approx(kmeans_objective(a.solution.centroids, data, 4)));
    }
}

TEST_CASE("kmeans problem wraps the dataset") {
    auto data = std::make_shared<const Dataset>(generate_dataset(100, 2, 1));
    const Problem p = make_kmeans_problem(data, 4);
    CHECK(p.dimension == 8);
    CHECK(p.name == "kmeans4");
    CHECK(p.bounds == Bounds(0, 10));
    const Genome g{1, 1, 2, 2, 3, 3, 4, 4};
    CHECK(p.evaluate(g) == kmeans_objective(g, *data, 4));
}
