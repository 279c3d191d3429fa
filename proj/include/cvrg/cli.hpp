#pragma once

#include "cvrg/instances.hpp"
#include "cvrg/problem.hpp"
#include "cvrg/solvers.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cvrg::cli {

/// Process exit codes of the cvrg tool.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,     // I/O error or infeasible input
    kUsage = 2,       // bad flags
    kParse = 3,       // malformed instance/solution document
    kGuard = 4,       // size guard of an exact routine
    kValidation = 5,  // solution failed validation
};

inline constexpr const char* kBenchHeader = "instance_id,n,placement,weight_regime,solver,h,cost,runtime_seconds,tours,seed";

struct BenchSuite {
    std::vector<int> sizes;
    std::vector<std::uint64_t> seeds;
    std::vector<Placement> placements{Placement::UNIFORM};
    std::vector<WeightRegime> regimes{WeightRegime::FULL};
    RegionKind region = RegionKind::POINT;
    int k = 7;
    double side = 10.0;
    std::vector<SolverKind> solvers;
    CentroidInner centroid_inner = CentroidInner::DP;
    SolverOptions options;
    bool timing = true;
};

struct BenchRow {
    std::string instance_id;
    int n = 0;
    Placement placement = Placement::UNIFORM;
    WeightRegime regime = WeightRegime::FULL;
    SolverKind solver = SolverKind::DP;
    std::optional<int> h;
    std::optional<double> cost;
    std::optional<double> runtime_seconds;
    std::optional<std::size_t> tours;
    std::uint64_t seed = 0;
};

/// One row per (instance, solver) in suite order. Cells run on up to `jobs`
/// threads; a failing cell leaves cost, runtime and tours empty.
std::vector<BenchRow> run_bench(const BenchSuite& suite, int jobs = 1);

/// CSV with kBenchHeader; runtime is written as 0 when timing is off.
std::string bench_csv(std::span<const BenchRow> rows, bool timing = true);

/// Parses "3,5,7" and "10..14" (inclusive) lists.
std::vector<long long> parse_int_list(const std::string& text);

/// Entry point of the cvrg tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvrg::cli
