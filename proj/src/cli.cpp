#include "cvrg/cli.hpp"

#include "cvrg/errors.hpp"
#include "cvrg/format.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

namespace cvrg::cli {

namespace {

std::string fixed(double x, const char* fmt)
{
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), fmt, x);
    return buf.data();
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

template <class T, class ParseFn>
std::vector<T> parse_names(const std::string& text, ParseFn parse, const char* what)
{
    std::vector<T> out;
    for (const std::string& name : split(text, ',')) {
        const auto v = parse(lower(name));
        if (!v) throw CLI::ValidationError(std::string("unknown ") + what + " '" + name + "'");
        out.push_back(*v);
    }
    return out;
}

std::optional<SolverKind> parse_algo(const std::string& name)
{
    if (name == "dp") return SolverKind::DP;
    if (name == "fh") return SolverKind::FH;
    if (name == "gd") return SolverKind::GD;
    if (name == "centroid") return SolverKind::CENTROID;
    return std::nullopt;
}

Solution solve_with(const Instance& instance, SolverKind kind, CentroidInner inner, const SolverOptions& options)
{
    switch (kind) {
    case SolverKind::DP: return solve_dp(instance, options);
    case SolverKind::FH: return solve_fh(instance, options);
    case SolverKind::GD: return solve_greedy(instance, options);
    case SolverKind::CENTROID: return solve_centroid(instance, inner, options);
    case SolverKind::ORACLE: break;
    }
    throw std::invalid_argument("solver not available in this context");
}

void emit(const std::string& path, const std::string& doc, std::ostream& out)
{
    if (path.empty())
        out << doc;
    else
        write_file(path, doc);
}

std::string summary(const Solution& s)
{
    return "solver=" + std::string(to_string(s.solver)) + " cost=" + fixed(s.total_cost, "%.10f") +
           " runtime_seconds=" + fixed(s.stats.runtime_seconds, "%.6f") + " tours=" + std::to_string(s.tours.size());
}

std::string instance_id(Placement p, WeightRegime w, RegionKind r, int n, std::uint64_t seed)
{
    return std::string(to_string(p)) + "-" + std::string(to_string(w)) + "-" + std::string(to_string(r)) + "-n" +
           std::to_string(n) + "-s" + std::to_string(seed);
}

int default_jobs()
{
    if (const char* env = std::getenv("CVRG_JOBS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

}  // namespace

std::vector<long long> parse_int_list(const std::string& text)
{
    std::vector<long long> out;
    for (const std::string& item : split(text, ',')) {
        const auto dots = item.find("..");
        try {
            if (dots == std::string::npos) {
                out.push_back(std::stoll(item));
                continue;
            }
            const long long lo = std::stoll(item.substr(0, dots));
            const long long hi = std::stoll(item.substr(dots + 2));
            if (hi < lo) throw std::invalid_argument("empty range");
            for (long long v = lo; v <= hi; ++v) out.push_back(v);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("bad integer list item '" + item + "'");
        }
    }
    return out;
}

std::vector<BenchRow> run_bench(const BenchSuite& suite, int jobs)
{
    if (suite.solvers.empty()) throw std::invalid_argument("bench needs at least one solver");
    struct Cell {
        std::size_t instance;
        SolverKind solver;
    };
    std::vector<Instance> instances;
    std::vector<BenchRow> rows;
    std::vector<Cell> cells;
    for (int n : suite.sizes)
        for (Placement p : suite.placements)
            for (WeightRegime w : suite.regimes)
                for (std::uint64_t seed : suite.seeds) {
                    GenSpec spec{n, p, w, suite.k, suite.region, suite.side, seed};
                    instances.push_back(generate(spec));
                    for (SolverKind s : suite.solvers) {
                        BenchRow row;
                        row.instance_id = instance_id(p, w, suite.region, n, seed);
                        row.n = n;
                        row.placement = p;
                        row.regime = w;
                        row.solver = s;
                        if (s == SolverKind::FH || (s == SolverKind::CENTROID && suite.centroid_inner == CentroidInner::FH))
                            row.h = suite.options.h;
                        row.seed = seed;
                        rows.push_back(row);
                        cells.push_back({instances.size() - 1, s});
                    }
                }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                SolverOptions options = suite.options;
                options.seed = rows[i].seed;
                const Solution sol = solve_with(instances[cells[i].instance], cells[i].solver, suite.centroid_inner, options);
                rows[i].cost = sol.total_cost;
                rows[i].runtime_seconds = sol.stats.runtime_seconds;
                rows[i].tours = sol.tours.size();
            } catch (const std::exception&) {
                // Recorded as an empty cell.
            }
        }
    };
    const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    return rows;
}

std::string bench_csv(std::span<const BenchRow> rows, bool timing)
{
    std::string out = std::string(kBenchHeader) + "\n";
    for (const BenchRow& r : rows) {
        out += r.instance_id + "," + std::to_string(r.n) + "," + std::string(to_string(r.placement)) + "," +
               std::string(to_string(r.regime)) + "," + std::string(to_string(r.solver)) + ",";
        if (r.h) out += std::to_string(*r.h);
        out += ",";
        if (r.cost) out += fixed(*r.cost, "%.17g");
        out += ",";
        if (r.runtime_seconds) out += timing ? fixed(*r.runtime_seconds, "%.6f") : "0";
        out += ",";
        if (r.tours) out += std::to_string(*r.tours);
        out += "," + std::to_string(r.seed) + "\n";
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Capacitated vehicle routing with polygonal regions: generate, solve, validate, benchmark"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate an instance file");
    int gen_n = 10;
    std::string gen_placement = "uniform";
    std::string gen_weights = "full";
    int gen_k = 7;
    std::string gen_region = "point";
    double gen_side = 10.0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    std::string gen_family;
    int gen_m = 1;
    double gen_eps = 1e-3;
    gen->add_option("--n", gen_n, "Number of customers");
    gen->add_option("--placement", gen_placement, "uniform | gaussian | inv-gaussian");
    gen->add_option("--weights", gen_weights, "full | lower | band");
    gen->add_option("--k", gen_k, "Weight regime parameter k (>= 2)");
    gen->add_option("--region", gen_region, "point | segment | convex | nonconvex");
    gen->add_option("--side", gen_side, "Workspace side length");
    gen->add_option("--seed", gen_seed, "Random seed");
    gen->add_option("--out", gen_out, "Output file (default stdout)");
    gen->add_option("--family", gen_family, "Special family: 3partition");
    gen->add_option("--m", gen_m, "3partition: number of triples");
    gen->add_option("--eps", gen_eps, "3partition: cluster radius");

    // solve
    auto* solve = app.add_subcommand("solve", "Solve an instance file");
    std::string solve_in;
    std::string solve_algo = "dp";
    std::string solve_inner = "dp";
    std::string solve_out;
    SolverOptions solve_options;
    solve->add_option("input", solve_in, "Instance file")->required();
    solve->add_option("--algo", solve_algo, "dp | fh | gd | centroid");
    solve->add_option("--inner", solve_inner, "centroid stage-1 solver: dp | fh");
    solve->add_option("--h", solve_options.h, "Finite-horizon window");
    solve->add_option("--restarts", solve_options.restarts, "Random elastic restarts for non-convex regions");
    solve->add_option("--seed", solve_options.seed, "Random seed");
    solve->add_option("--out", solve_out, "Solution file (default stdout)");

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "Check a solution against its instance");
    std::string val_instance;
    std::string val_solution;
    validate_cmd->add_option("instance", val_instance, "Instance file")->required();
    validate_cmd->add_option("solution", val_solution, "Solution file")->required();

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Exhaustive reference solution for small instances");
    std::string oracle_in;
    std::string oracle_out;
    int oracle_samples = 400;
    oracle->add_option("input", oracle_in, "Instance file")->required();
    oracle->add_option("--samples", oracle_samples, "Boundary samples per region (non-point regions)");
    oracle->add_option("--out", oracle_out, "Solution file (default stdout)");

    // bench
    auto* bench = app.add_subcommand("bench", "Run a benchmark grid and write CSV");
    std::string bench_n = "10";
    std::string bench_seeds = "0";
    std::string bench_placements = "uniform";
    std::string bench_weights = "full";
    std::string bench_region = "point";
    std::string bench_solvers = "dp,fh,gd";
    std::string bench_inner = "dp";
    std::string bench_out;
    int bench_k = 7;
    double bench_side = 10.0;
    int bench_jobs = default_jobs();
    bool bench_no_timing = false;
    SolverOptions bench_options;
    bench->add_option("--n", bench_n, "Sizes, e.g. 10..14 or 10,12");
    bench->add_option("--seeds", bench_seeds, "Seeds, e.g. 0..4");
    bench->add_option("--placements", bench_placements, "Comma list of placements");
    bench->add_option("--weights", bench_weights, "Comma list of weight regimes");
    bench->add_option("--region", bench_region, "Region kind");
    bench->add_option("--solvers", bench_solvers, "Comma list of dp, fh, gd, centroid");
    bench->add_option("--inner", bench_inner, "centroid stage-1 solver: dp | fh");
    bench->add_option("--h", bench_options.h, "Finite-horizon window");
    bench->add_option("--restarts", bench_options.restarts, "Random elastic restarts for non-convex regions");
    bench->add_option("--k", bench_k, "Weight regime parameter k (>= 2)");
    bench->add_option("--side", bench_side, "Workspace side length");
    bench->add_option("--jobs", bench_jobs, "Parallel cells (default $CVRG_JOBS or 1)");
    bench->add_flag("--no-timing", bench_no_timing, "Write runtime as 0 so the CSV is byte-reproducible");
    bench->add_option("--out", bench_out, "CSV file (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*gen) {
            Instance instance;
            if (!gen_family.empty()) {
                if (gen_family != "3partition") throw CLI::ValidationError("unknown family '" + gen_family + "'");
                instance = gen_3partition_family(gen_m, gen_eps, gen_seed);
            } else {
                GenSpec spec;
                spec.n = gen_n;
                spec.k = gen_k;
                spec.workspace_side = gen_side;
                spec.seed = gen_seed;
                const auto p = parse_placement(lower(gen_placement));
                const auto w = parse_weight_regime(lower(gen_weights));
                const auto r = parse_region_kind(lower(gen_region));
                if (!p) throw CLI::ValidationError("unknown placement '" + gen_placement + "'");
                if (!w) throw CLI::ValidationError("unknown weight regime '" + gen_weights + "'");
                if (!r) throw CLI::ValidationError("unknown region kind '" + gen_region + "'");
                spec.placement = *p;
                spec.weights = *w;
                spec.region = *r;
                try {
                    check_gen_spec(spec);
                } catch (const std::invalid_argument& e) {
                    throw CLI::ValidationError(e.what());
                }
                instance = generate(spec);
            }
            emit(gen_out, emit_instance(instance), out);
            return kOk;
        }

        if (*solve) {
            const auto kind = parse_algo(lower(solve_algo));
            if (!kind) throw CLI::ValidationError("unknown algorithm '" + solve_algo + "'");
            const std::string inner_name = lower(solve_inner);
            if (inner_name != "dp" && inner_name != "fh") throw CLI::ValidationError("--inner must be dp or fh");
            const Instance instance = parse_instance(read_file(solve_in));
            const Solution solution =
                solve_with(instance, *kind, inner_name == "fh" ? CentroidInner::FH : CentroidInner::DP, solve_options);
            const ValidationReport report = validate(instance, solution);
            emit(solve_out, emit_solution(solution), out);
            (solve_out.empty() ? err : out) << summary(solution) << "\n";
            if (!report.ok()) {
                err << "error: solver output failed validation: " << report.issues.front().message << "\n";
                return kValidation;
            }
            return kOk;
        }

        if (*validate_cmd) {
            const Instance instance = parse_instance(read_file(val_instance));
            const Solution solution = parse_solution(read_file(val_solution));
            const ValidationReport report = validate(instance, solution);
            if (report.ok()) {
                out << "PASS cost=" << fixed(solution.total_cost, "%.10f") << " tours=" << solution.tours.size() << "\n";
                return kOk;
            }
            out << "FAIL " << report.issues.size() << " issue(s)\n";
            for (const ValidationIssue& issue : report.issues) {
                out << "  ";
                if (issue.tour) out << "tour " << *issue.tour << " ";
                if (issue.customer) out << "customer " << *issue.customer << " ";
                out << issue.message << "\n";
            }
            return kValidation;
        }

        if (*oracle) {
            const Instance instance = parse_instance(read_file(oracle_in));
            const Solution solution =
                instance.all_points() ? oracle_cvrp(instance) : oracle_cvrg(instance, oracle_samples);
            emit(oracle_out, emit_solution(solution), out);
            (oracle_out.empty() ? err : out) << summary(solution) << "\n";
            return kOk;
        }

        if (*bench) {
            BenchSuite suite;
            try {
                for (long long n : parse_int_list(bench_n)) suite.sizes.push_back(static_cast<int>(n));
                for (long long s : parse_int_list(bench_seeds)) suite.seeds.push_back(static_cast<std::uint64_t>(s));
            } catch (const std::invalid_argument& e) {
                throw CLI::ValidationError(e.what());
            }
            suite.placements = parse_names<Placement>(bench_placements, parse_placement, "placement");
            suite.regimes = parse_names<WeightRegime>(bench_weights, parse_weight_regime, "weight regime");
            const auto region = parse_region_kind(lower(bench_region));
            if (!region) throw CLI::ValidationError("unknown region kind '" + bench_region + "'");
            suite.region = *region;
            suite.solvers = parse_names<SolverKind>(bench_solvers, parse_algo, "solver");
            if (suite.solvers.empty()) throw CLI::ValidationError("--solvers must name at least one solver");
            const std::string inner_name = lower(bench_inner);
            if (inner_name != "dp" && inner_name != "fh") throw CLI::ValidationError("--inner must be dp or fh");
            suite.centroid_inner = inner_name == "fh" ? CentroidInner::FH : CentroidInner::DP;
            suite.k = bench_k;
            suite.side = bench_side;
            suite.options = bench_options;
            suite.timing = !bench_no_timing;
            for (int n : suite.sizes) {
                try {
                    check_gen_spec({n, Placement::UNIFORM, WeightRegime::FULL, suite.k, suite.region, suite.side, 0});
                } catch (const std::invalid_argument& e) {
                    throw CLI::ValidationError(e.what());
                }
            }
            const std::vector<BenchRow> rows = run_bench(suite, bench_jobs);
            emit(bench_out, bench_csv(rows, suite.timing), out);
            return kOk;
        }
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const GuardViolation& e) {
        err << "guard violation: " << e.what() << "\n";
        return kGuard;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}

}  // namespace cvrg::cli
