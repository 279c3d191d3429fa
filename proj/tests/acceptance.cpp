// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include "cvrg/cli.hpp"
#include "cvrg/elastic.hpp"
#include "cvrg/format.hpp"
#include "cvrg/instances.hpp"
#include "cvrg/solvers.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace cvrg;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// 1. DP equals the exhaustive CVRP oracle on point instances.
Outcome oracle_equivalence()
{
    Outcome o;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        GenSpec spec;
        spec.n = 4 + i % 4;
        spec.weights = WeightRegime::LOWER;
        spec.k = 7;
        spec.seed = static_cast<std::uint64_t>(1000 + i);
        const Instance inst = generate(spec);
        const double dp = solve_dp(inst).total_cost;
        const double oracle = oracle_cvrp(inst).total_cost;
        const double rel = std::abs(dp - oracle) / oracle;
        worst = std::max(worst, rel);
        if (rel > 1e-9) o.pass = false;
    }
    o.detail = "100 instances, max relative gap " + fmt("%.2e", worst);
    return o;
}

struct ConvexRun {
    VisitSequence seq;
    BandTour tour;
};

// 2. Random starts on convex sequences converge to one tour.
Outcome convex_uniqueness(std::vector<ConvexRun>& runs)
{
    Outcome o;
    double worst_len = 0.0, worst_pt = 0.0;
    Rng rng(2);
    for (int s = 0; s < 50; ++s) {
        const VisitSequence seq = test::random_convex_sequence(rng, 2 + s % 3);
        std::vector<BandTour> tours;
        for (int r = 0; r < 20; ++r) {
            std::vector<Point> init;
            for (const Polygon& region : seq.regions) init.push_back(random_point_in(region, rng));
            tours.push_back(elastic_improv(seq, init));
            runs.push_back({seq, tours.back()});
        }
        for (const BandTour& t : tours) {
            worst_len = std::max(worst_len, std::abs(t.length - tours[0].length));
            for (std::size_t i = 0; i < t.points.size(); ++i)
                worst_pt = std::max(worst_pt, (t.points[i] - tours[0].points[i]).lpNorm<Eigen::Infinity>());
            if (!t.converged) o.pass = false;
        }
    }
    if (worst_len > 1e-6 || worst_pt > 1e-4) o.pass = false;
    o.detail = "50 sequences x 20 starts, max length spread " + fmt("%.2e", worst_len) + ", max point spread " +
               fmt("%.2e", worst_pt);
    return o;
}

// Feasible 0.05 displacement of touch point i; a crossing point is not slid
// along the straight line through its neighbors.
std::optional<Point> displaced(const BandTour& tour, const VisitSequence& seq, std::size_t i, bool crossing)
{
    const Point prev = i == 0 ? seq.depot : tour.points[i - 1];
    const Point next = i + 1 == tour.points.size() ? seq.depot : tour.points[i + 1];
    Point chord = next - prev;
    chord = chord.norm() > 1e-12 ? Point(chord.normalized()) : Point(1, 0);
    const Point normal(-chord.y(), chord.x());
    std::vector<Point> dirs;
    for (int k = 0; k < 32; ++k) {
        const double angle = (k % 2 ? -1.0 : 1.0) * (k / 2) * std::numbers::pi / 16.0;
        dirs.push_back(std::cos(angle) * normal + std::sin(angle) * chord);
    }
    // Sharp corners: head along an edge or towards the interior.
    std::vector<Point> targets(seq.regions[i].vertices().begin(), seq.regions[i].vertices().end());
    targets.push_back(centroid(seq.regions[i]));
    for (const Point& t : targets)
        if (distance(t, tour.points[i]) > 0.05) dirs.push_back((t - tour.points[i]).normalized());
    for (const Point& dir : dirs) {
        if (crossing && std::abs(dir.dot(chord)) > 0.9) continue;
        const Point q = tour.points[i] + 0.05 * dir;
        if (contains(seq.regions[i], q, 0.0)) return q;
    }
    return std::nullopt;
}

// 3. Converged tours satisfy the band conditions; displaced ones do not.
Outcome band_necessity(const std::vector<ConvexRun>& runs)
{
    Outcome o;
    std::size_t passed = 0, perturbed = 0, caught = 0, skipped = 0;
    for (const ConvexRun& run : runs) {
        const BandReport converged = check_band_conditions(run.tour, run.seq, 1e-5);
        if (converged.pass())
            ++passed;
        else
            o.pass = false;
        for (std::size_t i = 0; i < run.tour.points.size(); ++i) {
            const bool crossing = converged.kinds[i] == TouchKind::Crossing;
            const std::optional<Point> q = displaced(run.tour, run.seq, i, crossing);
            if (!q) {
                ++skipped;
                continue;
            }
            BandTour bad = run.tour;
            bad.points[i] = *q;
            bad.length = tour_length(run.seq.depot, bad.points);
            const BandReport report = check_band_conditions(bad, run.seq, 1e-5);
            ++perturbed;
            if (std::find(report.failures.begin(), report.failures.end(), i) != report.failures.end()) ++caught;
        }
    }
    if (caught != perturbed || skipped > 0) o.pass = false;
    o.detail = std::to_string(passed) + "/" + std::to_string(runs.size()) + " converged tours pass, " +
               std::to_string(caught) + "/" + std::to_string(perturbed) + " perturbations fail at the moved point";
    if (skipped) o.detail += ", " + std::to_string(skipped) + " points could not be displaced";
    return o;
}

// 4. A non-convex pair has two distinct elastic bands.
Outcome nonconvex_counterexample()
{
    Outcome o;
    const VisitSequence seq = test::two_band_sequence();
    std::vector<BandTour> distinct;
    bool all_pass = true;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        std::vector<Point> init;
        for (const Polygon& region : seq.regions) init.push_back(random_point_in(region, rng));
        const BandTour t = elastic_improv(seq, init);
        if (!check_band_conditions(t, seq, 1e-5).pass()) all_pass = false;
        bool seen = false;
        for (const BandTour& d : distinct)
            seen = seen || (std::abs(d.length - t.length) <= 1e-6 && test::near(d.points[1], t.points[1], 1e-4));
        if (!seen) distinct.push_back(t);
    }
    double spread = 0.0;
    for (const BandTour& a : distinct)
        for (const BandTour& b : distinct) spread = std::max(spread, std::abs(a.length - b.length));
    o.pass = all_pass && distinct.size() >= 2 && spread > 1e-3;
    o.detail = "20 seeds, " + std::to_string(distinct.size()) + " distinct fixed points, cost difference " +
               fmt("%.4f", spread) + (all_pass ? ", all pass the band check" : ", band check failed");
    return o;
}

// 5. 3-Partition family: m tours of three, cost in [2m, 2m + 6 m eps].
Outcome hardness_family()
{
    Outcome o;
    const double eps = 1e-3;
    std::string costs;
    for (int m : {1, 2}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const Solution sol = solve_dp(gen_3partition_family(m, eps, seed));
            bool triples = static_cast<int>(sol.tours.size()) == m;
            for (const Tour& t : sol.tours) triples = triples && t.customer_ids.size() == 3;
            const bool bounded = sol.total_cost >= 2.0 * m - 1e-12 && sol.total_cost <= 2.0 * m + 6.0 * m * eps;
            if (!triples || !bounded) o.pass = false;
            if (seed == 0) costs += (costs.empty() ? "" : ", ") + std::string("m=") + std::to_string(m) + " cost " +
                                    fmt("%.6f", sol.total_cost);
        }
    }
    o.detail = "5 seeds per m, " + costs;
    return o;
}

struct SuiteCosts {
    std::vector<double> dp, fh, gd, centroid, unrefined;
};

// 6. DP dominates the heuristics; FH beats GD on average.
Outcome dominance(SuiteCosts& c)
{
    Outcome o;
    for (int i = 0; i < 50; ++i) {
        GenSpec spec;
        spec.n = 12;
        spec.region = RegionKind::SEGMENT;
        spec.weights = WeightRegime::LOWER;
        spec.seed = static_cast<std::uint64_t>(500 + i);
        const Instance inst = generate(spec);
        c.dp.push_back(solve_dp(inst).total_cost);
        c.fh.push_back(solve_fh(inst).total_cost);
        c.gd.push_back(solve_greedy(inst).total_cost);
        const Solution centroid = solve_centroid(inst, CentroidInner::DP);
        c.centroid.push_back(centroid.total_cost);
        c.unrefined.push_back(centroid.stats.unrefined_cost.value_or(INFINITY));
        const double dp = c.dp.back();
        if (dp > c.fh.back() + 1e-9 || dp > c.gd.back() + 1e-9 || dp > c.centroid.back() + 1e-9) o.pass = false;
    }
    auto mean = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); };
    const double dp = mean(c.dp), fh = mean(c.fh), gd = mean(c.gd), ce = mean(c.centroid);
    if (fh > gd) o.pass = false;
    o.detail = "50 instances, mean cost DP " + fmt("%.4f", dp) + ", FH " + fmt("%.4f", fh) + " (+" +
               fmt("%.1f", 100 * (fh / dp - 1)) + "%), GD " + fmt("%.4f", gd) + " (+" + fmt("%.1f", 100 * (gd / dp - 1)) +
               "%), CENTROID " + fmt("%.4f", ce) + " (+" + fmt("%.1f", 100 * (ce / dp - 1)) + "%)";
    return o;
}

// 7. Elastic refinement of centroid tours never increases cost.
Outcome centroid_monotonicity(const SuiteCosts& c)
{
    Outcome o;
    double saved = 0.0;
    for (std::size_t i = 0; i < c.centroid.size(); ++i) {
        if (c.centroid[i] > c.unrefined[i] + 1e-9) o.pass = false;
        saved += c.unrefined[i] - c.centroid[i];
    }
    o.detail = std::to_string(c.centroid.size()) + " instances, mean refinement saving " +
               fmt("%.4f", saved / static_cast<double>(c.centroid.size()));
    return o;
}

// 8. Elastic tours are never worse than the sampled oracle plus its gap.
Outcome sampling_bound()
{
    Outcome o;
    Rng rng(8);
    double worst = -INFINITY;
    for (int s = 0; s < 25; ++s) {
        const VisitSequence seq = test::random_convex_sequence(rng, 1 + s % 4);
        const double elastic = elastic_improv(seq).length;
        const double oracle = sampled_sequence_length(seq.depot, seq.regions, 2000);
        double gap = 0.0;
        for (const Polygon& r : seq.regions) gap += perimeter(r) / 2000.0;
        worst = std::max(worst, elastic - oracle - gap);
        if (elastic > oracle + gap) o.pass = false;
    }
    o.detail = "25 sequences, max (elastic - oracle - gap) " + fmt("%.2e", worst);
    return o;
}

int run_cli(const std::vector<std::string>& args, std::string& out)
{
    std::ostringstream o, e;
    const int code = cli::run(args, o, e);
    out = o.str();
    return code;
}

// 9. Byte-identical regeneration and bench output; exact round trip.
Outcome determinism()
{
    Outcome o;
    std::size_t identical = 0, round_trips = 0;
    for (int i = 0; i < 10; ++i) {
        const std::vector<std::string> args{"gen", "--n", "15", "--region", std::string(to_string(static_cast<RegionKind>(i % 4))),
                                            "--placement", std::string(to_string(static_cast<Placement>(i % 3))),
                                            "--seed", std::to_string(i)};
        std::string a, b;
        if (run_cli(args, a) == 0 && run_cli(args, b) == 0 && a == b) ++identical;
    }
    const std::vector<std::string> bench{"bench", "--n", "8..10", "--seeds", "0..2", "--weights", "lower,band",
                                         "--solvers", "dp,fh,gd,centroid", "--h", "5", "--no-timing", "--jobs", "3"};
    std::string csv_a, csv_b;
    const bool bench_same = run_cli(bench, csv_a) == 0 && run_cli(bench, csv_b) == 0 && csv_a == csv_b;
    for (int i = 0; i < 100; ++i) {
        GenSpec spec;
        spec.n = 1 + i % 20;
        spec.region = static_cast<RegionKind>(i % 4);
        spec.placement = static_cast<Placement>(i % 3);
        spec.weights = static_cast<WeightRegime>((i / 3) % 3);
        spec.seed = static_cast<std::uint64_t>(i);
        const Instance inst = generate(spec);
        const std::string doc = emit_instance(inst);
        const Instance back = parse_instance(doc);
        if (back == inst && emit_instance(back) == doc) ++round_trips;
    }
    o.pass = identical == 10 && bench_same && round_trips == 100;
    o.detail = std::to_string(identical) + "/10 instance files identical, bench CSV " +
               (bench_same ? "identical" : "differs") + ", " + std::to_string(round_trips) + "/100 round trips exact";
    return o;
}

std::vector<std::vector<int>> tour_ids(const Solution& s)
{
    std::vector<std::vector<int>> ids;
    for (const Tour& t : s.tours) ids.push_back(t.customer_ids);
    return ids;
}

// 10. Costs are translation invariant and scale covariant.
Outcome covariance()
{
    Outcome o;
    const std::vector<std::pair<const char*, std::function<Solution(const Instance&)>>> solvers{
        {"DP", [](const Instance& i) { return solve_dp(i); }},
        {"FH", [](const Instance& i) { return solve_fh(i, {5, 4, 0, {}}); }},
        {"GD", [](const Instance& i) { return solve_greedy(i); }},
        {"CENTROID", [](const Instance& i) { return solve_centroid(i, CentroidInner::DP); }}};
    double worst_shift = 0.0, worst_scale = 0.0;
    bool same_ids = true;
    for (int i = 0; i < 20; ++i) {
        GenSpec spec;
        spec.n = 8;
        spec.region = static_cast<RegionKind>(i % 3);
        spec.weights = WeightRegime::LOWER;
        spec.seed = static_cast<std::uint64_t>(300 + i);
        const Instance inst = generate(spec);
        const Instance shifted = test::transformed(inst, 1.0, Point(37.25, -12.5));
        for (const auto& [name, solve] : solvers) {
            const Solution base = solve(inst);
            const Solution moved = solve(shifted);
            worst_shift = std::max(worst_shift, std::abs(moved.total_cost - base.total_cost));
            same_ids = same_ids && tour_ids(moved) == tour_ids(base);
            for (double alpha : {0.5, 3.0}) {
                const Solution scaled = solve(test::transformed(inst, alpha, Point::Zero()));
                worst_scale = std::max(worst_scale, std::abs(scaled.total_cost - alpha * base.total_cost) /
                                                        (alpha * base.total_cost));
                same_ids = same_ids && tour_ids(scaled) == tour_ids(base);
            }
        }
    }
    o.pass = worst_shift <= 1e-9 && worst_scale <= 1e-9 && same_ids;
    o.detail = "20 instances x 4 solvers, max translation error " + fmt("%.2e", worst_shift) +
               ", max relative scale error " + fmt("%.2e", worst_scale) +
               (same_ids ? ", tour sequences identical" : ", tour sequences differ");
    return o;
}

}  // namespace

int main()
{
    int failed = 0;
    std::vector<ConvexRun> runs;
    SuiteCosts costs;
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"DP equals exhaustive oracle on point instances", oracle_equivalence},
        {"convex sequences have a unique elastic band", [&] { return convex_uniqueness(runs); }},
        {"converged bands pass the band conditions, displaced ones fail", [&] { return band_necessity(runs); }},
        {"non-convex pair admits two elastic bands", nonconvex_counterexample},
        {"3-partition family uses m tours of three", hardness_family},
        {"DP dominates FH, GD and CENTROID; FH beats GD on average", [&] { return dominance(costs); }},
        {"centroid refinement never increases cost", [&] { return centroid_monotonicity(costs); }},
        {"elastic tours respect the sampling-oracle bound", sampling_bound},
        {"deterministic generation, bench output and round trip", determinism},
        {"translation invariance and scale covariance", covariance},
    };
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  criterion %2zu: %s [%s; %.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
