#include "kbsga/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace kbsga {

using nlohmann::json;

namespace {

constexpr std::uint64_t lloyd_stream_tag = 0x4C6C6F7964ULL; // "Lloyd"

template <typename T>
T get_as(const json& j, std::string_view key) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config key '" + std::string(key) + "' has the wrong type");
    }
}

std::size_t get_count(const json& j, std::string_view key) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw ConfigError("config key '" + std::string(key) + "' must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

double get_real(const json& j, std::string_view key) {
    if (!j.is_number()) {
        throw ConfigError("config key '" + std::string(key) + "' must be a number");
    }
    return j.get<double>();
}

/// "auto" (or null) -> nullopt, number -> value.
std::optional<double> get_auto_real(const json& j, std::string_view key) {
    if (j.is_null() || (j.is_string() && j.get<std::string>() == "auto")) {
        return std::nullopt;
    }
    return get_real(j, key);
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known, std::string_view where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("unknown config key '" + key + "' in " + std::string(where));
        }
    }
}

void parse_recombination_params(const json& j, RecombinationParams& p) {
    if (!j.is_object()) {
        throw ConfigError("'recombination' must be an object");
    }
    reject_unknown(j, {"alpha", "blx_alpha", "eta", "sigma_sq", "k_swaps", "sbx_mode"}, "recombination");
    if (j.contains("alpha")) p.alpha = get_real(j["alpha"], "alpha");
    if (j.contains("blx_alpha")) p.blx_alpha = get_real(j["blx_alpha"], "blx_alpha");
    if (j.contains("eta")) p.eta = get_real(j["eta"], "eta");
    if (j.contains("sigma_sq")) p.sigma_sq = get_real(j["sigma_sq"], "sigma_sq");
    if (j.contains("k_swaps")) {
        const json& k = j["k_swaps"];
        if (k.is_null() || (k.is_string() && k.get<std::string>() == "auto")) {
            p.k_swaps = 0;
        } else {
            p.k_swaps = get_count(k, "k_swaps");
            if (p.k_swaps == 0) {
                throw ConfigError("k_swaps must be at least 1 (or \"auto\")");
            }
        }
    }
    if (j.contains("sbx_mode")) {
        const auto mode = get_as<std::string>(j["sbx_mode"], "sbx_mode");
        if (mode == "per_locus") {
            p.sbx_mode = SbxMode::PerLocus;
        } else if (mode == "per_pair") {
            p.sbx_mode = SbxMode::PerPair;
        } else {
            throw ConfigError("sbx_mode must be \"per_locus\" or \"per_pair\"");
        }
    }
}

OperatorPair parse_operator_entry(const json& j) {
    if (j.is_string()) {
        return parse_operator_pair(j.get<std::string>());
    }
    if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string()) {
        return {parse_recombination(j[0].get<std::string>()), parse_mutation(j[1].get<std::string>())};
    }
    if (j.is_object()) {
        reject_unknown(j, {"recombination", "mutation"}, "operators entry");
        if (!j.contains("recombination") || !j.contains("mutation")) {
            throw ConfigError("operator entry needs 'recombination' and 'mutation'");
        }
        return {parse_recombination(get_as<std::string>(j["recombination"], "recombination")),
                parse_mutation(get_as<std::string>(j["mutation"], "mutation"))};
    }
    throw ConfigError("operator entry must be \"recomb+mutation\", [recomb, mutation] or an object");
}

} // namespace

// ---- operator pairs ---------------------------------------------------------------

std::string to_string(const OperatorPair& op) {
    return std::string(to_string(op.recombination)) + "+" + std::string(to_string(op.mutation));
}

OperatorPair parse_operator_pair(std::string_view label) {
    const auto plus = label.find('+');
    if (plus == std::string_view::npos) {
        throw ConfigError("operator pair '" + std::string(label) + "' must look like akbs+gm");
    }
    return {parse_recombination(label.substr(0, plus)), parse_mutation(label.substr(plus + 1))};
}

std::vector<OperatorPair> standard_operator_pairs() {
    std::vector<OperatorPair> ops;
    for (auto r : {Recombination::AlphaKbs, Recombination::BetaKbs, Recombination::BlxAlpha, Recombination::Sbx}) {
        for (auto m : {Mutation::Simple, Mutation::Gaussian}) {
            ops.push_back({r, m});
        }
    }
    return ops;
}

std::optional<std::size_t> kmeans_clusters(std::string_view problem) {
    constexpr std::string_view prefix = "kmeans";
    if (!problem.starts_with(prefix) || problem.size() == prefix.size()) {
        return std::nullopt;
    }
    std::size_t k = 0;
    const auto digits = problem.substr(prefix.size());
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || k < 1) {
        return std::nullopt;
    }
    return k;
}

// ---- config -------------------------------------------------------------------------

GaConfig ExperimentConfig::ga_config(const OperatorPair& op) const {
    GaConfig ga;
    ga.population_size = population_size;
    ga.pool_size = pool_size;
    ga.generations = generations;
    ga.tournament_size = tournament_size;
    ga.recombination = op.recombination;
    ga.recombination_params = recombination;
    ga.mutation = op.mutation;
    ga.mutation_rate = mutation_rate;
    ga.epsilon = epsilon;
    return ga;
}

void ExperimentConfig::validate() const {
    if (problems.empty()) throw ConfigError("config lists no problem");
    if (dims.empty()) throw ConfigError("config lists no dimension");
    if (operators.empty()) throw ConfigError("config lists no operator pair");
    if (runs < 1) throw ConfigError("runs must be at least 1");
    if (lloyd_restarts < 1) throw ConfigError("lloyd restarts must be at least 1");
    if (lloyd_max_iter < 1) throw ConfigError("lloyd max_iter must be at least 1");
    for (const std::string& name : problems) {
        const auto k = kmeans_clusters(name);
        if (!k && !find_benchmark(name)) {
            throw ConfigError("unknown problem '" + name + "'");
        }
        for (std::size_t d : dims) {
            if (d < 1) throw ConfigError("dimensions must be positive");
            const std::size_t n = k ? *k * d : d;
            if (!k && n < benchmark(*find_benchmark(name)).min_dimension) {
                throw ConfigError(name + " is undefined for dimension " + std::to_string(d));
            }
            if (k && dataset.points <= *k) {
                throw ConfigError("dataset needs more points than clusters");
            }
            for (const OperatorPair& op : operators) {
                ga_config(op).validate(n);
            }
        }
        if (k) {
            (void)Bounds(dataset.low, dataset.high);
        }
    }
}

ExperimentConfig parse_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text.begin(), json_text.end(), nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    reject_unknown(j,
                   {"problem", "problems", "dims", "operators", "runs", "generations", "population_size",
                    "pool_size", "tournament_size", "epsilon", "mutation_rate", "recombination",
                    "master_seed", "output_dir", "dataset", "lloyd"},
                   "top level");

    ExperimentConfig c;
    for (const char* key : {"problem", "problems"}) {
        if (!j.contains(key)) continue;
        const json& p = j[key];
        if (p.is_string()) {
            c.problems.push_back(p.get<std::string>());
        } else if (p.is_array()) {
            for (const json& e : p) c.problems.push_back(get_as<std::string>(e, key));
        } else {
            throw ConfigError("'problem' must be a string or a list of strings");
        }
    }
    if (j.contains("dims")) {
        const json& d = j["dims"];
        if (d.is_number_integer()) {
            c.dims.push_back(get_count(d, "dims"));
        } else if (d.is_array()) {
            for (const json& e : d) c.dims.push_back(get_count(e, "dims"));
        } else {
            throw ConfigError("'dims' must be an integer or a list of integers");
        }
    }
    if (j.contains("operators")) {
        const json& ops = j["operators"];
        if (ops.is_string() && ops.get<std::string>() == "all") {
            c.operators = standard_operator_pairs();
        } else if (ops.is_array()) {
            for (const json& e : ops) c.operators.push_back(parse_operator_entry(e));
        } else {
            throw ConfigError("'operators' must be \"all\" or a list");
        }
    }
    if (j.contains("runs")) c.runs = get_count(j["runs"], "runs");
    if (j.contains("generations")) c.generations = get_count(j["generations"], "generations");
    if (j.contains("population_size")) c.population_size = get_count(j["population_size"], "population_size");
    if (j.contains("pool_size")) c.pool_size = get_count(j["pool_size"], "pool_size");
    if (j.contains("tournament_size")) c.tournament_size = get_count(j["tournament_size"], "tournament_size");
    if (j.contains("epsilon")) c.epsilon = get_auto_real(j["epsilon"], "epsilon");
    if (j.contains("mutation_rate")) c.mutation_rate = get_auto_real(j["mutation_rate"], "mutation_rate");
    if (j.contains("recombination")) parse_recombination_params(j["recombination"], c.recombination);
    if (j.contains("master_seed")) {
        if (!j["master_seed"].is_number_unsigned()) {
            throw ConfigError("'master_seed' must be a non-negative integer");
        }
        c.master_seed = j["master_seed"].get<std::uint64_t>();
    }
    if (j.contains("output_dir")) c.output_dir = get_as<std::string>(j["output_dir"], "output_dir");
    if (j.contains("dataset")) {
        const json& d = j["dataset"];
        if (!d.is_object()) throw ConfigError("'dataset' must be an object");
        reject_unknown(d, {"points", "low", "high", "seed"}, "dataset");
        if (d.contains("points")) c.dataset.points = get_count(d["points"], "dataset.points");
        if (d.contains("low")) c.dataset.low = get_real(d["low"], "dataset.low");
        if (d.contains("high")) c.dataset.high = get_real(d["high"], "dataset.high");
        if (d.contains("seed")) {
            if (!d["seed"].is_number_unsigned()) throw ConfigError("'dataset.seed' must be a non-negative integer");
            c.dataset.seed = d["seed"].get<std::uint64_t>();
        }
    }
    if (j.contains("lloyd")) {
        const json& l = j["lloyd"];
        if (!l.is_object()) throw ConfigError("'lloyd' must be an object");
        reject_unknown(l, {"restarts", "max_iter"}, "lloyd");
        if (l.contains("restarts")) c.lloyd_restarts = get_count(l["restarts"], "lloyd.restarts");
        if (l.contains("max_iter")) c.lloyd_max_iter = get_count(l["max_iter"], "lloyd.max_iter");
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

// ---- running ---------------------------------------------------------------------------

Dataset experiment_dataset(const DatasetSpec& spec, std::size_t d, std::size_t k) {
    return generate_dataset(spec.points, d, derive_seed(spec.seed, d), k, spec.low, spec.high);
}

namespace {

struct CellPlan {
    CellKey key;
    GaConfig ga;
    std::shared_ptr<const Problem> problem;
};

/// Runs `count` independent jobs on up to `threads` workers. job(i) must only touch slot i.
template <typename Job>
void run_parallel(std::size_t count, std::size_t threads, Job&& job) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (std::size_t w = 0; w < threads; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                    try {
                        job(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        next.store(count);
                    }
                }
            });
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t threads) {
    config.validate();
    ExperimentResult result;

    std::vector<CellPlan> plans;
    for (const std::string& name : config.problems) {
        const auto k = kmeans_clusters(name);
        for (std::size_t d : config.dims) {
            std::shared_ptr<const Problem> problem;
            if (k) {
                auto data = std::make_shared<const Dataset>(experiment_dataset(config.dataset, d, *k));
                result.datasets.push_back(*data);
                problem = std::make_shared<const Problem>(
                    make_kmeans_problem(data, *k, config.dataset.low, config.dataset.high));

                LloydBaseline base;
                base.problem = name;
                base.dim = d;
                base.restarts = config.lloyd_restarts;
                const std::uint64_t lloyd_master = config.master_seed ^ mix64(lloyd_stream_tag + d);
                for (std::size_t r = 0; r < config.lloyd_restarts; ++r) {
                    RngStream rng = RngStream::child(lloyd_master, r);
                    const LloydResult lr = lloyd(*data, *k, rng, config.lloyd_max_iter);
                    base.objectives.push_back(lr.objective);
                    for (std::size_t t = 1; t < lr.sse_trace.size(); ++t) {
                        if (lr.sse_trace[t] > lr.sse_trace[t - 1] * (1.0 + 1e-12)) {
                            base.sse_monotone = false;
                        }
                    }
                }
                base.best_objective = *std::min_element(base.objectives.begin(), base.objectives.end());
                double sum = 0.0;
                for (double v : base.objectives) sum += v;
                base.mean_objective = sum / static_cast<double>(base.objectives.size());
                result.lloyd.push_back(std::move(base));
            } else {
                problem = std::make_shared<const Problem>(make_benchmark_problem(*find_benchmark(name), d));
            }
            for (const OperatorPair& op : config.operators) {
                plans.push_back({CellKey{name, d, op}, config.ga_config(op), problem});
            }
        }
    }

    const std::size_t runs = config.runs;
    std::vector<RunRow> rows(plans.size() * runs);
    run_parallel(rows.size(), threads, [&](std::size_t job) {
        const CellPlan& plan = plans[job / runs];
        const std::size_t run_index = job % runs;
        const std::uint64_t seed = derive_seed(config.master_seed, run_index);
        const RunRecord rec = run_ga(plan.ga, *plan.problem, seed);
        rows[job] = RunRow{plan.key, run_index, seed, rec.first_hit_generation, rec.final_best_value};
    });

    result.cells = cells_from_rows(std::move(rows));
    return result;
}

// ---- CSV ---------------------------------------------------------------------------------

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ec == std::errc{} ? ptr : buf);
}

void write_runs_csv(std::ostream& out, const ExperimentResult& result) {
    out << "problem,dim,recomb,mutation,run_index,seed,first_hit,final_value\n";
    for (const CellResult& cell : result.cells) {
        for (const RunRow& r : cell.runs) {
            out << r.cell.problem << ',' << r.cell.dim << ',' << to_string(r.cell.op.recombination) << ','
                << to_string(r.cell.op.mutation) << ',' << r.run_index << ',' << r.seed << ',';
            if (r.first_hit) out << *r.first_hit;
            out << ',' << format_double(r.final_value) << '\n';
        }
    }
}

void write_summary_row(std::ostream& out, const CellKey& key, const ExperimentSummary& s) {
    out << key.problem << ',' << key.dim << ',' << to_string(key.op.recombination) << ','
        << to_string(key.op.mutation) << ',' << s.run_count << ',' << format_double(s.success_rate) << ','
        << format_double(s.mean_runtime_all) << ',';
    if (s.mean_runtime_successful) out << format_double(*s.mean_runtime_successful);
    out << ',' << format_double(s.mean_final_value) << ',' << format_double(s.std_final_value) << '\n';
}

void write_summary_csv(std::ostream& out, const ExperimentResult& result) {
    out << "problem,dim,recomb,mutation,runs,success_rate,mean_runtime_eq4,mean_runtime_successful,"
           "mean_final,std_final\n";
    for (const CellResult& cell : result.cells) {
        write_summary_row(out, cell.key, cell.summary);
    }
}

void write_lloyd_csv(std::ostream& out, const ExperimentResult& result) {
    out << "problem,dim,restarts,best_objective,mean_objective\n";
    for (const LloydBaseline& b : result.lloyd) {
        out << b.problem << ',' << b.dim << ',' << b.restarts << ',' << format_double(b.best_objective) << ','
            << format_double(b.mean_objective) << '\n';
    }
}

namespace {

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    writer(out);
    if (!out.flush()) {
        throw IoError("failed writing " + path.string());
    }
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

template <typename T>
T parse_number(const std::string& s, std::string_view what) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError("runs.csv: bad " + std::string(what) + " '" + s + "'");
    }
    return v;
}

} // namespace

void write_results(const ExperimentResult& result, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    write_file(dir / "runs.csv", [&](std::ostream& o) { write_runs_csv(o, result); });
    write_file(dir / "summary.csv", [&](std::ostream& o) { write_summary_csv(o, result); });
    if (!result.lloyd.empty()) {
        write_file(dir / "lloyd.csv", [&](std::ostream& o) { write_lloyd_csv(o, result); });
    }
    for (const Dataset& d : result.datasets) {
        save_dataset(dir / ("dataset_d" + std::to_string(d.dim) + ".txt"), d);
    }
}

std::vector<RunRow> parse_runs_csv(std::istream& in) {
    static const std::string header = "problem,dim,recomb,mutation,run_index,seed,first_hit,final_value";
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw ConfigError("runs.csv: unexpected header");
    }
    std::vector<RunRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 8) {
            throw ConfigError("runs.csv: expected 8 fields in '" + line + "'");
        }
        RunRow r;
        r.cell.problem = f[0];
        r.cell.dim = parse_number<std::size_t>(f[1], "dim");
        r.cell.op = {parse_recombination(f[2]), parse_mutation(f[3])};
        r.run_index = parse_number<std::size_t>(f[4], "run_index");
        r.seed = parse_number<std::uint64_t>(f[5], "seed");
        if (!f[6].empty()) r.first_hit = parse_number<std::size_t>(f[6], "first_hit");
        r.final_value = parse_number<double>(f[7], "final_value");
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<RunRow> read_runs_csv(const std::filesystem::path& path) {
    auto file = path;
    if (std::filesystem::is_directory(file)) {
        file /= "runs.csv";
    }
    std::ifstream in(file);
    if (!in) {
        throw IoError("cannot read " + file.string());
    }
    return parse_runs_csv(in);
}

std::vector<CellResult> cells_from_rows(std::vector<RunRow> rows) {
    std::vector<CellResult> cells;
    std::map<CellKey, std::size_t> index;
    for (RunRow& r : rows) {
        auto [it, inserted] = index.try_emplace(r.cell, cells.size());
        if (inserted) {
            cells.push_back(CellResult{r.cell, {}, {}});
        }
        cells[it->second].runs.push_back(std::move(r));
    }
    for (CellResult& c : cells) {
        std::stable_sort(c.runs.begin(), c.runs.end(),
                         [](const RunRow& x, const RunRow& y) { return x.run_index < y.run_index; });
        std::vector<RunOutcome> outcomes;
        outcomes.reserve(c.runs.size());
        for (const RunRow& r : c.runs) outcomes.push_back({r.first_hit, r.final_value});
        c.summary = summarize(outcomes);
    }
    return cells;
}

// ---- comparison ----------------------------------------------------------------------------

CompareMetric parse_metric(std::string_view name) {
    if (name == "final_value") return CompareMetric::FinalValue;
    if (name == "first_hit") return CompareMetric::FirstHit;
    throw ConfigError("metric must be final_value or first_hit");
}

std::string_view to_string(CompareMetric m) noexcept {
    return m == CompareMetric::FinalValue ? "final_value" : "first_hit";
}

namespace {

std::string cell_label(const CellKey& k) {
    return k.problem + "/" + std::to_string(k.dim) + "/" + to_string(k.op);
}

struct Side {
    std::map<CellKey, std::vector<double>> samples; // keyed by match key
    std::map<CellKey, CellKey> original;            // match key -> full key
};

Side group(const std::vector<RunRow>& rows, CompareMetric metric, const std::optional<OperatorPair>& op) {
    std::vector<RunRow> sorted = rows;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const RunRow& x, const RunRow& y) { return x.run_index < y.run_index; });
    Side side;
    for (const RunRow& r : sorted) {
        if (op && r.cell.op != *op) continue;
        CellKey match = r.cell;
        if (op) match.op = OperatorPair{};
        const double v = metric == CompareMetric::FinalValue
                             ? r.final_value
                             : (r.first_hit ? static_cast<double>(*r.first_hit)
                                            : std::numeric_limits<double>::infinity());
        side.samples[match].push_back(v);
        side.original.emplace(match, r.cell);
    }
    return side;
}

} // namespace

ComparisonReport compare_runs(const std::vector<RunRow>& a, const std::vector<RunRow>& b, CompareMetric metric,
                              std::optional<OperatorPair> op_a, std::optional<OperatorPair> op_b,
                              double alpha) {
    if (op_a.has_value() != op_b.has_value()) {
        throw ConfigError("operator filters must be given for both sides or neither");
    }
    const Side sa = group(a, metric, op_a);
    const Side sb = group(b, metric, op_b);

    ComparisonReport report;
    report.metric = metric;
    report.alpha = alpha;
    for (const auto& [key, xs] : sa.samples) {
        const auto it = sb.samples.find(key);
        if (it == sb.samples.end()) {
            report.skipped.push_back("a:" + cell_label(sa.original.at(key)));
            continue;
        }
        ComparisonRow row;
        row.a = sa.original.at(key);
        row.b = sb.original.at(key);
        row.n_a = xs.size();
        row.n_b = it->second.size();
        row.test = mann_whitney_u(xs, it->second);
        row.significant = row.test.significant(alpha);
        report.rows.push_back(std::move(row));
    }
    for (const auto& [key, ys] : sb.samples) {
        if (!sa.samples.contains(key)) {
            report.skipped.push_back("b:" + cell_label(sb.original.at(key)));
        }
    }
    if (report.rows.empty()) {
        throw ConfigError("the two result sets share no cell");
    }
    return report;
}

void write_comparison_csv(std::ostream& out, const ComparisonReport& report) {
    out << "problem,dim,recomb_a,mutation_a,recomb_b,mutation_b,metric,n_a,n_b,u,u1,u2,z,p,significant\n";
    for (const ComparisonRow& r : report.rows) {
        out << r.a.problem << ',' << r.a.dim << ',' << to_string(r.a.op.recombination) << ','
            << to_string(r.a.op.mutation) << ',' << to_string(r.b.op.recombination) << ','
            << to_string(r.b.op.mutation) << ',' << to_string(report.metric) << ',' << r.n_a << ',' << r.n_b
            << ',' << format_double(r.test.u) << ',' << format_double(r.test.u1) << ','
            << format_double(r.test.u2) << ',' << format_double(r.test.z) << ',' << format_double(r.test.p)
            << ',' << (r.significant ? 1 : 0) << '\n';
    }
}

void write_comparison_table(std::ostream& out, const ComparisonReport& report) {
    char line[256];
    std::snprintf(line, sizeof line, "%-12s %4s  %-10s %-10s %8s %8s %8s  %s\n", "problem", "dim", "a", "b",
                  "U", "z", "p", "verdict");
    out << "Mann-Whitney U on " << to_string(report.metric) << " (alpha = " << format_double(report.alpha)
        << ")\n"
        << line;
    for (const ComparisonRow& r : report.rows) {
        const char* verdict = !r.significant ? "n.s." : (r.test.z < 0 ? "a smaller" : "b smaller");
        std::snprintf(line, sizeof line, "%-12s %4zu  %-10s %-10s %8.1f %8.3f %8.4f  %s\n", r.a.problem.c_str(),
                      r.a.dim, to_string(r.a.op).c_str(), to_string(r.b.op).c_str(), r.test.u, r.test.z,
                      r.test.p, verdict);
        out << line;
    }
    for (const std::string& s : report.skipped) {
        out << "skipped (no counterpart): " << s << '\n';
    }
}

} // namespace kbsga
