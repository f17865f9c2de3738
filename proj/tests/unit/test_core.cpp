#include <doctest.h>

#include <cstring>

#include "kbsga/core.hpp"
#include "kbsga/rng.hpp"
#include "test_helpers.hpp"

using namespace kbsga;

TEST_CASE("rng streams with equal seeds agree on the first 10^4 deviates") {
    RngStream a(123), b(123);
    for (int i = 0; i < 10000; ++i) {
        switch (i % 3) {
        case 0: REQUIRE(a.uniform01() == b.uniform01()); break;
        case 1: REQUIRE(a.normal() == b.normal()); break;
        default: REQUIRE(a.uniform_index(17) == b.uniform_index(17)); break;
        }
    }
}

TEST_CASE("rng deviates stay in range") {
    RngStream rng(9);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const auto k = rng.uniform_int(-3, 3);
        REQUIRE(k >= -3);
        REQUIRE(k <= 3);
    }
    CHECK_THROWS_AS(rng.uniform_index(0), std::invalid_argument);
}

TEST_CASE("child seeds differ across replications and masters") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
    RngStream a = RngStream::child(5, 0), b = RngStream::child(5, 1);
    CHECK(a.next_u64() != b.next_u64());
}

TEST_CASE("bounds reject inverted or empty intervals") {
    CHECK_THROWS_AS(Bounds(1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(Bounds(2.0, -2.0), ConfigError);
    const Bounds b(-10, 10);
    CHECK(b.midpoint() == 0.0);
    CHECK(b.width() == 20.0);
}

TEST_CASE("init_population samples inside the bounds") {
    RngStream rng(1);
    const Bounds b(-10, 10);
    const Population pop = init_population(2, 400, b, rng);
    CHECK(pop.size() == 400);
    CHECK_FALSE(pop.fitness_valid);
    for (const Genome& g : pop.members) {
        REQUIRE(g.size() == 2);
        REQUIRE(b.contains(g));
    }
}

TEST_CASE("init_population on a narrow interval stays inside it") {
    RngStream rng(2);
    const double c = 3.25;
    const Bounds b(c, c + 1e-9);
    const Population pop = init_population(4, 50, b, rng);
    for (const Genome& g : pop.members) {
        for (double x : g) {
            REQUIRE(x >= c);
            REQUIRE(x <= c + 1e-9);
        }
    }
}

TEST_CASE("init_population is reproducible byte for byte") {
    RngStream r1(42), r2(42);
    const Bounds b(-5, 5);
    const Population p1 = init_population(5, 3, b, r1);
    const Population p2 = init_population(5, 3, b, r2);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::memcmp(p1.members[i].data(), p2.members[i].data(), 5 * sizeof(double)) == 0);
    }
}

TEST_CASE("init_population rejects bad sizes") {
    RngStream rng(3);
    const Bounds b(0, 1);
    CHECK_THROWS_AS(init_population(0, 10, b, rng), ConfigError);
    CHECK_THROWS_AS(init_population(3, 1, b, rng), ConfigError);
}

TEST_CASE("init_population genes are uniform (mean and KS)") {
    RngStream rng(77);
    const Bounds b(-5.12, 5.12);
    const Population pop = init_population(5, 20000, b, rng); // 10^5 genes
    std::vector<double> genes;
    for (const Genome& g : pop.members) genes.insert(genes.end(), g.begin(), g.end());
    REQUIRE(genes.size() == 100000);

    const double se = b.width() / std::sqrt(12.0) / std::sqrt(static_cast<double>(genes.size()));
    CHECK(std::abs(testing::mean(genes) - b.midpoint()) < 3.0 * se);
    CHECK(testing::ks_uniform(genes, b.lower(), b.upper()) < testing::ks_critical_1pct(genes.size()));
}

TEST_CASE("clamp_to_bounds") {
    const Bounds b(-10, 10);
    CHECK(clamp_to_bounds({-12, 3}, b) == Genome{-10, 3});
    CHECK(clamp_to_bounds({1.5, -2.5}, b) == Genome{1.5, -2.5});
    CHECK(clamp_to_bounds({15, -15}, b) == Genome{10, -10});
}

TEST_CASE("clamp_to_bounds is idempotent") {
    RngStream rng(5);
    const Bounds b(-1, 1);
    for (int t = 0; t < 1000; ++t) {
        Genome g(6);
        for (double& x : g) x = rng.uniform(-3, 3);
        const Genome once = clamp_to_bounds(g, b);
        REQUIRE(clamp_to_bounds(once, b) == once);
        REQUIRE(b.contains(once));
    }
}

TEST_CASE("best_of picks the minimum with lowest-index ties") {
    Population pop;
    pop.members = {{0.0}, {1.0}, {2.0}};
    pop.fitness = {3.0, 1.0, 2.0};
    pop.fitness_valid = true;
    CHECK(best_of(pop).index == 1);
    CHECK(best_of(pop).genome == Genome{1.0});

    pop.members = {{5.0}, {6.0}};
    pop.fitness = {1.0, 1.0};
    CHECK(best_of(pop).index == 0);

    pop.members = {{4.0}};
    pop.fitness = {7.0};
    CHECK(best_of(pop).fitness == 7.0);
}

TEST_CASE("best_of rejects empty or unevaluated populations") {
    Population empty;
    empty.fitness_valid = true;
    CHECK_THROWS_AS(best_of(empty), UsageError);
    Population pop;
    pop.members = {{1.0}};
    pop.fitness = {0.0};
    CHECK_THROWS_AS(best_of(pop), UsageError);
}
