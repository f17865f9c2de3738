#include "kbsga/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kbsga {

ExperimentSummary summarize(std::span<const RunOutcome> runs) {
    if (runs.empty()) {
        throw UsageError("summarize: no runs");
    }
    ExperimentSummary s;
    s.run_count = runs.size();
    const auto r = static_cast<double>(runs.size());

    double hit_sum = 0.0;
    double final_sum = 0.0;
    for (const RunOutcome& run : runs) {
        if (run.first_hit) {
            ++s.successes;
            hit_sum += static_cast<double>(*run.first_hit);
        }
        final_sum += run.final_value;
    }
    s.success_rate = static_cast<double>(s.successes) / r;
    s.mean_runtime_all = hit_sum / r;
    if (s.successes > 0) {
        s.mean_runtime_successful = hit_sum / static_cast<double>(s.successes);
    }
    s.mean_final_value = final_sum / r;
    if (runs.size() > 1) {
        double ss = 0.0;
        for (const RunOutcome& run : runs) {
            const double d = run.final_value - s.mean_final_value;
            ss += d * d;
        }
        s.std_final_value = std::sqrt(ss / (r - 1.0));
    }
    return s;
}

ExperimentSummary summarize(std::span<const RunRecord> records, std::optional<double> epsilon) {
    std::vector<RunOutcome> runs;
    runs.reserve(records.size());
    for (const RunRecord& rec : records) {
        runs.push_back({epsilon ? first_hit(rec.best_per_generation, *epsilon) : rec.first_hit_generation,
                        rec.final_best_value});
    }
    return summarize(runs);
}

std::vector<double> midranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && values[order[j]] == values[order[i]]) {
            ++j;
        }
        // positions i..j-1 hold ranks i+1..j
        const double rank = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t t = i; t < j; ++t) {
            ranks[order[t]] = rank;
        }
        i = j;
    }
    return ranks;
}

double normal_upper_tail(double x) noexcept { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

RankTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw UsageError("mann_whitney_u: both samples must be non-empty");
    }
    const auto s1 = static_cast<double>(a.size());
    const auto s2 = static_cast<double>(b.size());
    const double total = s1 + s2;

    std::vector<double> joined(a.begin(), a.end());
    joined.insert(joined.end(), b.begin(), b.end());
    if (std::any_of(joined.begin(), joined.end(), [](double v) { return std::isnan(v); })) {
        throw UsageError("mann_whitney_u: NaN in sample");
    }
    const std::vector<double> ranks = midranks(joined);

    RankTestResult res;
    res.r1 = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(a.size()), 0.0);
    res.r2 = std::accumulate(ranks.begin() + static_cast<std::ptrdiff_t>(a.size()), ranks.end(), 0.0);
    res.u1 = s1 * s2 + s1 * (s1 + 1.0) / 2.0 - res.r1;
    res.u2 = s1 * s2 + s2 * (s2 + 1.0) / 2.0 - res.r2;
    res.u = std::min(res.u1, res.u2);

    // tie correction: sum over tie groups of (t^3 - t)
    std::vector<double> sorted = joined;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[i]) {
            ++j;
        }
        const auto t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }
    const double mean_u = s1 * s2 / 2.0;
    const double var_u = total > 1.0
                             ? s1 * s2 / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)))
                             : 0.0;
    if (!(var_u > 0.0)) {
        res.degenerate = true;
        res.z = 0.0;
        res.p = 0.5;
        return res;
    }
    // u1 counts pairs with a < b, so a large u1 means the first sample is smaller
    res.z = (mean_u - res.u1) / std::sqrt(var_u);
    res.p = normal_upper_tail(std::abs(res.z));
    return res;
}

} // namespace kbsga
