#include "cvrg/solvers.hpp"

#include "cvrg/errors.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <string>

namespace cvrg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct ExactResult {
    std::vector<Tour> tours;
    std::uint64_t subsets = 0;
    std::uint64_t sweeps = 0;
};

// Mask of positions (within `members`) that must be visited before each member.
std::vector<std::uint32_t> within_tour_precedence(const PrecedenceDag& dag, std::span<const int> members)
{
    std::vector<std::uint32_t> masks(members.size(), 0u);
    if (dag.empty()) return masks;
    for (std::size_t j = 0; j < members.size(); ++j)
        for (std::size_t i = 0; i < members.size(); ++i)
            if (dag.above(members[j]).contains(members[i])) masks[j] |= 1u << i;
    return masks;
}

bool order_respects(std::span<const std::size_t> order, std::span<const std::uint32_t> must_precede)
{
    std::uint32_t seen = 0;
    for (std::size_t idx : order) {
        if ((must_precede[idx] & ~seen) != 0) return false;
        seen |= 1u << idx;
    }
    return true;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt)
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Exact DP over the customers `ids` (global indices, ascending).
ExactResult solve_exact(const Instance& instance, std::span<const int> ids, const SolverOptions& options)
{
    const int m = static_cast<int>(ids.size());
    if (m > kMaxExactCustomers)
        throw GuardViolation("exact subset DP is limited to " + std::to_string(kMaxExactCustomers) +
                             " customers, got " + std::to_string(m));
    std::vector<double> weights;
    bool points_only = true;
    for (int id : ids) {
        const Customer& c = instance.customers[static_cast<std::size_t>(id)];
        weights.push_back(c.weight);
        points_only = points_only && c.region.is_point();
    }
    const PrecedenceDag dag = instance.has_precedence() ? instance.precedence.restricted(ids) : PrecedenceDag{};
    const std::vector<CustomerSet> feasible = enumerate_feasible_subsets(weights, instance.capacity);

    const TourCostFn cost_fn = [&](CustomerSet s) {
        const std::vector<int> local = s.members();
        const std::vector<std::uint32_t> must_precede = within_tour_precedence(dag, local);
        TourPlan plan;
        if (points_only) {
            std::vector<Point> pts;
            for (int j : local) pts.push_back(instance.customers[static_cast<std::size_t>(ids[static_cast<std::size_t>(j)])].region.vertex(0));
            const HeldKarpResult hk = held_karp(instance.depot, pts, must_precede);
            for (int pos : hk.order) {
                plan.customers.push_back(ids[static_cast<std::size_t>(local[static_cast<std::size_t>(pos)])]);
                plan.points.push_back(pts[static_cast<std::size_t>(pos)]);
            }
            plan.length = tour_length(instance.depot, plan.points);
            return plan;
        }
        std::vector<Polygon> regions;
        for (int j : local) regions.push_back(instance.customers[static_cast<std::size_t>(ids[static_cast<std::size_t>(j)])].region);
        OrderFilter filter;
        if (std::any_of(must_precede.begin(), must_precede.end(), [](std::uint32_t x) { return x != 0; }))
            filter = [must_precede](std::span<const std::size_t> order) { return order_respects(order, must_precede); };
        TourSearchOptions search;
        search.restarts = options.restarts;
        search.seed = mix_seed(options.seed, s.bits);
        search.elastic = options.elastic;
        const OrderedBand band = optimal_tour_over_regions(instance.depot, regions, search, filter);
        for (std::size_t pos : band.order) plan.customers.push_back(ids[static_cast<std::size_t>(local[pos])]);
        plan.points = band.tour.points;
        plan.length = band.tour.length;
        plan.sweeps = band.sweeps;
        return plan;
    };

    const TourCostTable table = tour_cost_table(m, feasible, cost_fn);
    const PartitionResult partition = dp_partition(m, feasible, table.costs(), dag.empty() ? nullptr : &dag);

    ExactResult result;
    result.subsets = feasible.size();
    for (CustomerSet s : feasible) result.sweeps += table.plan(s)->sweeps;
    for (CustomerSet s : partition.tours) {
        const TourPlan& plan = *table.plan(s);
        result.tours.push_back(make_tour(instance.depot, plan.customers, plan.points));
    }
    return result;
}

void finish(Solution& solution, Clock::time_point start)
{
    solution.total_cost = total_length(solution.tours);
    solution.stats.runtime_seconds = seconds_since(start);
}

std::vector<int> all_ids(const Instance& instance)
{
    std::vector<int> ids(instance.customers.size());
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
}

// Unserved customers that must be removed no later than `c`, plus `c` itself.
std::vector<int> unserved_closure(const Instance& instance, int c, const std::vector<char>& served)
{
    std::vector<int> out{c};
    for (int a : instance.precedence.above_ids(c))
        if (!served[static_cast<std::size_t>(a)]) out.push_back(a);
    return out;
}

std::vector<int> select_window(const Instance& instance, std::span<const int> unserved, const std::vector<char>& served,
                               std::span<const Point> centroids, int h)
{
    auto dist_to = [&](int c, const Point& p) { return distance(centroids[static_cast<std::size_t>(c)], p); };
    std::vector<int> by_depot(unserved.begin(), unserved.end());
    std::stable_sort(by_depot.begin(), by_depot.end(),
                     [&](int a, int b) { return dist_to(a, instance.depot) < dist_to(b, instance.depot); });

    std::vector<char> in_window(instance.customers.size(), 0);
    std::vector<int> window;
    auto try_add = [&](int c) {
        std::vector<int> extra;
        for (int x : unserved_closure(instance, c, served))
            if (!in_window[static_cast<std::size_t>(x)]) extra.push_back(x);
        if (static_cast<int>(window.size() + extra.size()) > h) return false;
        for (int x : extra) {
            in_window[static_cast<std::size_t>(x)] = 1;
            window.push_back(x);
        }
        return true;
    };

    int seed = -1;
    for (int c : by_depot)
        if (try_add(c)) {
            seed = c;
            break;
        }
    std::vector<int> by_seed(unserved.begin(), unserved.end());
    const Point anchor = centroids[static_cast<std::size_t>(seed)];
    std::stable_sort(by_seed.begin(), by_seed.end(), [&](int a, int b) { return dist_to(a, anchor) < dist_to(b, anchor); });
    for (int c : by_seed) {
        if (static_cast<int>(window.size()) >= h) break;
        if (!in_window[static_cast<std::size_t>(c)]) try_add(c);
    }
    std::sort(window.begin(), window.end());
    return window;
}

bool tour_admissible(const Instance& instance, const Tour& tour, const std::vector<char>& served)
{
    for (int c : tour.customer_ids)
        for (int a : instance.precedence.above_ids(c))
            if (!served[static_cast<std::size_t>(a)] &&
                std::find(tour.customer_ids.begin(), tour.customer_ids.end(), a) == tour.customer_ids.end())
                return false;
    return true;
}

std::vector<Point> region_centroids(const Instance& instance)
{
    std::vector<Point> out;
    for (const Customer& c : instance.customers) out.push_back(centroid(c.region));
    return out;
}

}  // namespace

Solution solve_dp(const Instance& instance, const SolverOptions& options)
{
    const auto start = Clock::now();
    const ExactResult exact = solve_exact(instance, all_ids(instance), options);
    Solution solution;
    solution.solver = SolverKind::DP;
    solution.tours = exact.tours;
    solution.stats.subsets_evaluated = exact.subsets;
    solution.stats.sweeps = exact.sweeps;
    finish(solution, start);
    return solution;
}

Solution solve_fh(const Instance& instance, const SolverOptions& options)
{
    if (options.h < 2 || options.h > kMaxExactCustomers)
        throw GuardViolation("finite-horizon window h must lie in [2, " + std::to_string(kMaxExactCustomers) +
                             "], got " + std::to_string(options.h));
    const auto start = Clock::now();
    Solution solution;
    solution.solver = SolverKind::FH;
    const std::vector<Point> centroids = region_centroids(instance);
    std::vector<char> served(instance.customers.size(), 0);
    std::size_t served_count = 0;

    auto commit = [&](const Tour& tour) {
        for (int c : tour.customer_ids) served[static_cast<std::size_t>(c)] = 1;
        served_count += tour.customer_ids.size();
        solution.tours.push_back(tour);
    };

    while (served_count < instance.customers.size()) {
        std::vector<int> unserved;
        for (int c = 0; c < instance.size(); ++c)
            if (!served[static_cast<std::size_t>(c)]) unserved.push_back(c);

        if (static_cast<int>(unserved.size()) <= options.h) {
            const ExactResult exact = solve_exact(instance, unserved, options);
            solution.stats.subsets_evaluated += exact.subsets;
            solution.stats.sweeps += exact.sweeps;
            for (const Tour& t : exact.tours) commit(t);
            break;
        }

        const std::vector<int> window = select_window(instance, unserved, served, centroids, options.h);
        const ExactResult exact = solve_exact(instance, window, options);
        solution.stats.subsets_evaluated += exact.subsets;
        solution.stats.sweeps += exact.sweeps;

        std::vector<std::size_t> rank(exact.tours.size());
        std::iota(rank.begin(), rank.end(), std::size_t{0});
        auto average = [&](std::size_t i) {
            return exact.tours[i].length / static_cast<double>(exact.tours[i].customer_ids.size());
        };
        std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) { return average(a) < average(b); });

        // Commit the two best-average tours; with precedence, skip tours that
        // would be served before something stacked on them.
        int committed = 0;
        std::vector<char> used(exact.tours.size(), 0);
        for (bool progress = true; committed < 2 && progress;) {
            progress = false;
            for (std::size_t i : rank) {
                if (used[i] || !tour_admissible(instance, exact.tours[i], served)) continue;
                used[i] = 1;
                commit(exact.tours[i]);
                ++committed;
                progress = true;
                break;
            }
        }
        if (committed == 0) throw Infeasible("finite-horizon window produced no admissible tour");
    }
    finish(solution, start);
    return solution;
}

Solution solve_greedy(const Instance& instance, const SolverOptions&)
{
    const auto start = Clock::now();
    Solution solution;
    solution.solver = SolverKind::GD;
    const int n = instance.size();
    std::vector<char> served(static_cast<std::size_t>(n), 0);
    int served_count = 0;

    Point position = instance.depot;
    double load = 0.0;
    std::vector<int> ids;
    std::vector<Point> points;
    auto close_tour = [&] {
        solution.tours.push_back(make_tour(instance.depot, ids, points));
        ids.clear();
        points.clear();
        position = instance.depot;
        load = 0.0;
    };

    while (served_count < n) {
        int best = -1;
        Point best_point = position;
        double best_dist = std::numeric_limits<double>::infinity();
        for (int c = 0; c < n; ++c) {
            const Customer& customer = instance.customers[static_cast<std::size_t>(c)];
            if (served[static_cast<std::size_t>(c)] || load + customer.weight > instance.capacity + 1e-12) continue;
            const auto above = instance.precedence.above_ids(c);
            if (std::any_of(above.begin(), above.end(), [&](int a) { return !served[static_cast<std::size_t>(a)]; }))
                continue;
            const Point p = closest_point_on_polygon(customer.region, position);
            const double d = distance(p, position);
            if (d < best_dist) {
                best_dist = d;
                best = c;
                best_point = p;
            }
        }
        if (best < 0) {
            if (ids.empty()) throw Infeasible("greedy: no customer can be served from the depot");
            close_tour();
            continue;
        }
        served[static_cast<std::size_t>(best)] = 1;
        ++served_count;
        ids.push_back(best);
        points.push_back(best_point);
        position = best_point;
        load += instance.customers[static_cast<std::size_t>(best)].weight;
    }
    if (!ids.empty()) close_tour();
    finish(solution, start);
    return solution;
}

Solution solve_centroid(const Instance& instance, CentroidInner inner, const SolverOptions& options)
{
    const auto start = Clock::now();
    Instance centroids = instance;
    for (Customer& c : centroids.customers) c.region = Polygon({centroid(c.region)});

    const Solution stage1 = inner == CentroidInner::DP ? solve_dp(centroids, options) : solve_fh(centroids, options);

    Solution solution;
    solution.solver = SolverKind::CENTROID;
    solution.stats.subsets_evaluated = stage1.stats.subsets_evaluated;
    solution.stats.unrefined_cost = stage1.total_cost;
    for (const Tour& t : stage1.tours) {
        VisitSequence seq{instance.depot, {}};
        for (int c : t.customer_ids) seq.regions.push_back(instance.customers[static_cast<std::size_t>(c)].region);
        const BandTour band = elastic_improv(seq, std::nullopt, options.elastic);
        solution.stats.sweeps += static_cast<std::uint64_t>(band.sweeps);
        solution.tours.push_back(make_tour(instance.depot, t.customer_ids, band.points));
    }
    finish(solution, start);
    return solution;
}

}  // namespace cvrg
