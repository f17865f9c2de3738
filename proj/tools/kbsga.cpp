// kbsga: batch runner for the real-coded GA operator experiments.
//
//   kbsga run <config.json> [--threads N] [--seed S] [--out DIR]
//   kbsga compare <a> <b> --metric final_value|first_hit [--a-op akbs+gm --b-op blx+gm] [--out DIR]
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "kbsga/experiment.hpp"

namespace {

constexpr int exit_config = 2;
constexpr int exit_io = 3;

int cmd_run(const std::string& config_path, std::size_t threads, std::optional<std::uint64_t> seed,
            const std::string& out_dir) {
    kbsga::ExperimentConfig config = kbsga::load_config(config_path);
    if (seed) {
        config.master_seed = *seed;
    }
    if (!out_dir.empty()) {
        config.output_dir = out_dir;
    }
    const kbsga::ExperimentResult result = kbsga::run_experiment(config, threads);
    kbsga::write_results(result, config.output_dir);

    std::cout << "wrote " << result.cells.size() << " cells x " << config.runs << " runs to "
              << config.output_dir.string() << '\n';
    kbsga::write_summary_csv(std::cout, result);
    if (!result.lloyd.empty()) {
        kbsga::write_lloyd_csv(std::cout, result);
    }
    return 0;
}

int cmd_compare(const std::string& a, const std::string& b, const std::string& metric,
                const std::string& a_op, const std::string& b_op, double alpha, const std::string& out_dir) {
    std::optional<kbsga::OperatorPair> op_a;
    std::optional<kbsga::OperatorPair> op_b;
    if (!a_op.empty()) op_a = kbsga::parse_operator_pair(a_op);
    if (!b_op.empty()) op_b = kbsga::parse_operator_pair(b_op);

    const auto report = kbsga::compare_runs(kbsga::read_runs_csv(a), kbsga::read_runs_csv(b),
                                            kbsga::parse_metric(metric), op_a, op_b, alpha);
    kbsga::write_comparison_table(std::cout, report);
    if (out_dir.empty()) {
        kbsga::write_comparison_csv(std::cout, report);
        return 0;
    }
    std::filesystem::create_directories(out_dir);
    const auto path = std::filesystem::path(out_dir) / ("compare_" + metric + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw kbsga::IoError("cannot open " + path.string() + " for writing");
    }
    kbsga::write_comparison_csv(out, report);
    if (!out.flush()) {
        throw kbsga::IoError("failed writing " + path.string());
    }
    std::cout << "wrote " << path.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Real-coded GA operator benchmark harness"};
    app.require_subcommand(1);

    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    auto* run = app.add_subcommand("run", "run every cell of an experiment config");
    std::string config_path;
    run->add_option("config", config_path, "JSON experiment config")->required();
    run->add_option("--seed", seed, "override the config master seed");
    run->add_option("--out", out_dir, "output directory (overrides the config)");
    run->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    auto* compare = app.add_subcommand("compare", "Mann-Whitney U test between two result sets");
    std::string path_a, path_b, metric = "final_value", a_op, b_op;
    double alpha = 0.05;
    compare->add_option("a", path_a, "runs.csv or result directory")->required();
    compare->add_option("b", path_b, "runs.csv or result directory")->required();
    compare->add_option("--metric", metric, "final_value or first_hit")
        ->check(CLI::IsMember({"final_value", "first_hit"}));
    compare->add_option("--a-op", a_op, "restrict side a to one operator pair, e.g. akbs+gm");
    compare->add_option("--b-op", b_op, "restrict side b to one operator pair, e.g. blx+gm");
    compare->add_option("--alpha", alpha, "significance level");
    compare->add_option("--out", out_dir, "write compare_<metric>.csv here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try {
        if (*run) {
            return cmd_run(config_path, threads, seed, out_dir);
        }
        return cmd_compare(path_a, path_b, metric, a_op, b_op, alpha, out_dir);
    } catch (const kbsga::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const kbsga::UsageError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const kbsga::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return exit_io;
    }
}
