#include <doctest.h>

#include <cmath>

#include "kbsga/rng.hpp"
#include "kbsga/stats.hpp"

using namespace kbsga;
using doctest::Approx;

namespace {

std::vector<RunOutcome> outcomes(std::initializer_list<std::optional<std::size_t>> hits) {
    std::vector<RunOutcome> v;
    for (auto h : hits) v.push_back({h, h ? 0.0 : 1.0});
    return v;
}

// U1 as the number of (a, b) pairs with a < b, ties counted half.
double pairwise_u1(std::span<const double> a, std::span<const double> b) {
    double u = 0.0;
    for (double x : a) {
        for (double y : b) {
            if (x < y) u += 1.0;
            else if (y == x) u += 0.5;
        }
    }
    return u;
}

} // namespace

TEST_CASE("summarize: success rate and both runtime means") {
    std::vector<RunOutcome> runs(20);
    for (std::size_t i = 0; i < 13; ++i) runs[i].first_hit = 100;
    CHECK(summarize(runs).success_rate == Approx(0.65));
    CHECK(summarize(runs).successes == 13);

    auto two = outcomes({100, 200});
    CHECK(summarize(two).mean_runtime_all == 150.0);
    CHECK(summarize(two).mean_runtime_successful == 150.0);

    auto half = outcomes({100, std::nullopt});
    CHECK(summarize(half).mean_runtime_all == 50.0);
    CHECK(summarize(half).mean_runtime_successful == 100.0);
    CHECK(summarize(half).success_rate == 0.5);

    auto none = outcomes({std::nullopt, std::nullopt});
    CHECK(summarize(none).mean_runtime_all == 0.0);
    CHECK_FALSE(summarize(none).mean_runtime_successful.has_value());

    CHECK_THROWS_AS(summarize(std::span<const RunOutcome>{}), UsageError);
}

TEST_CASE("summarize: runtime over all runs equals P times the successful mean") {
    RngStream rng(4);
    for (int t = 0; t < 200; ++t) {
        std::vector<RunOutcome> runs(1 + rng.uniform_index(30));
        for (auto& r : runs) {
            if (rng.uniform01() < 0.6) r.first_hit = 1 + rng.uniform_index(5000);
            r.final_value = rng.uniform(0, 5);
        }
        const ExperimentSummary s = summarize(runs);
        if (s.mean_runtime_successful) {
            REQUIRE(s.mean_runtime_all == Approx(s.success_rate * *s.mean_runtime_successful).epsilon(1e-12));
        } else {
            REQUIRE(s.mean_runtime_all == 0.0);
        }
    }
}

TEST_CASE("summarize: final value mean and sample deviation") {
    std::vector<RunOutcome> runs{{std::nullopt, 1.0}, {std::nullopt, 2.0}, {std::nullopt, 3.0}};
    const ExperimentSummary s = summarize(runs);
    CHECK(s.mean_final_value == 2.0);
    CHECK(s.std_final_value == Approx(1.0));
    std::vector<RunOutcome> one{{5, 4.0}};
    CHECK(summarize(one).std_final_value == 0.0);
}

TEST_CASE("summarize records re-derives success from the trace") {
    RunRecord r;
    r.best_per_generation = {1.0, 0.5, 0.05};
    r.first_hit_generation = std::nullopt;
    r.final_best_value = 0.05;
    std::vector<RunRecord> rs{r};
    CHECK(summarize(rs).successes == 0);
    CHECK(summarize(rs, 0.1).successes == 1);
    CHECK(summarize(rs, 0.1).mean_runtime_successful == 3.0);
}

TEST_CASE("midranks") {
    const std::vector<double> v{3, 1, 2, 2};
    CHECK(midranks(v) == std::vector<double>{4, 1, 2.5, 2.5});
}

TEST_CASE("mann-whitney worked examples") {
    const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
    const RankTestResult r = mann_whitney_u(a, b);
    CHECK(r.r1 == 6.0);
    CHECK(r.r2 == 15.0);
    CHECK(r.u1 == 9.0);
    CHECK(r.u2 == 0.0);
    CHECK(r.u == 0.0);
    CHECK(r.z < 0.0);
    // mean 4.5, sd sqrt(9*7/12)
    CHECK(r.z == Approx(-4.5 / std::sqrt(63.0 / 12.0)));

    const std::vector<double> c{1, 1, 2}, d{1, 3, 3};
    const RankTestResult t = mann_whitney_u(c, d);
    CHECK(t.r1 == 8.0);
    CHECK(t.r2 == 13.0);
    CHECK(t.u1 == 7.0);
    CHECK(t.u2 == 2.0);

    const RankTestResult same = mann_whitney_u(a, a);
    CHECK(same.z == 0.0);
    CHECK(same.p == Approx(0.5));
    CHECK_FALSE(same.significant());
}

TEST_CASE("mann-whitney: all values tied is degenerate") {
    const std::vector<double> a{2, 2, 2}, b{2, 2};
    const RankTestResult r = mann_whitney_u(a, b);
    CHECK(r.degenerate);
    CHECK(r.z == 0.0);
    CHECK(r.p == 0.5);
    CHECK_FALSE(r.significant(0.99));
}

TEST_CASE("mann-whitney rejects empty or NaN samples") {
    const std::vector<double> a{1, 2}, empty;
    CHECK_THROWS_AS(mann_whitney_u(a, empty), UsageError);
    CHECK_THROWS_AS(mann_whitney_u(empty, a), UsageError);
    const std::vector<double> nan{std::nan("")};
    CHECK_THROWS_AS(mann_whitney_u(a, nan), UsageError);
}

TEST_CASE("mann-whitney properties on random samples") {
    RngStream rng(99);
    for (int t = 0; t < 2000; ++t) {
        std::vector<double> a(1 + rng.uniform_index(12)), b(1 + rng.uniform_index(12));
        // coarse values so ties are common
        for (double& x : a) x = static_cast<double>(rng.uniform_index(6));
        for (double& x : b) x = static_cast<double>(rng.uniform_index(6));
        const RankTestResult ab = mann_whitney_u(a, b);
        const RankTestResult ba = mann_whitney_u(b, a);
        const double s1s2 = static_cast<double>(a.size() * b.size());
        REQUIRE(ab.u1 + ab.u2 == Approx(s1s2));
        REQUIRE(ab.u1 == Approx(pairwise_u1(a, b)));
        const double n = static_cast<double>(a.size() + b.size());
        REQUIRE(ab.r1 + ab.r2 == Approx(n * (n + 1) / 2.0));
        REQUIRE(ab.u1 == Approx(ba.u2));
        REQUIRE(ab.z == Approx(-ba.z));
        REQUIRE(ab.p == Approx(ba.p));
        REQUIRE(ab.p >= 0.0);
        REQUIRE(ab.p <= 0.5);
    }
}

TEST_CASE("mann-whitney: a shifted-down sample gives a negative z") {
    std::vector<double> lo, hi;
    for (int i = 1; i <= 20; ++i) {
        lo.push_back(i);
        hi.push_back(i + 20);
    }
    const RankTestResult r = mann_whitney_u(lo, hi);
    CHECK(r.z < 0.0);
    CHECK(r.significant(0.05));
    CHECK(r.p < 1e-6);
}

TEST_CASE("normal tail") {
    CHECK(normal_upper_tail(0.0) == Approx(0.5));
    CHECK(normal_upper_tail(1.6448536269514722) == Approx(0.05).epsilon(1e-9));
    CHECK(normal_upper_tail(-1.0) == Approx(1.0 - normal_upper_tail(1.0)));
}
