#include "cvrg/errors.hpp"
#include "cvrg/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <string>

namespace cvrg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SubsetTour {
    double length = kInf;
    std::vector<int> customers;
    std::vector<Point> points;
};

using SubsetCoster = std::function<SubsetTour(const std::vector<int>&)>;

bool respects_precedence(const Instance& instance, std::span<const int> visit)
{
    for (std::size_t j = 0; j < visit.size(); ++j)
        for (int a : instance.precedence.above_ids(visit[j])) {
            const auto it = std::find(visit.begin(), visit.end(), a);
            if (it != visit.end() && static_cast<std::size_t>(it - visit.begin()) > j) return false;
        }
    return true;
}

bool admissible_removal(const Instance& instance, std::uint32_t s, std::uint32_t remaining)
{
    for (int c = 0; c < instance.size(); ++c) {
        if (!((s >> c) & 1u)) continue;
        for (int a : instance.precedence.above_ids(c))
            if (((remaining >> a) & 1u) && !((s >> a) & 1u)) return false;
    }
    return true;
}

// Exhaustive search over sequences of tours. Without precedence only the
// tour holding the lowest remaining customer is branched on (unordered partitions).
Solution enumerate_partitions(const Instance& instance, const SubsetCoster& coster, SolverKind kind)
{
    const auto start = std::chrono::steady_clock::now();
    const int n = instance.size();
    const std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);

    std::vector<char> feasible(std::size_t{1} << n, 0);
    for (std::uint32_t s = 1; s <= full; ++s) {
        double load = 0.0;
        for (int c = 0; c < n; ++c)
            if ((s >> c) & 1u) load += instance.customers[static_cast<std::size_t>(c)].weight;
        feasible[s] = load <= instance.capacity + 1e-12;
    }
    std::map<std::uint32_t, SubsetTour> memo;
    auto tour_of = [&](std::uint32_t s) -> const SubsetTour& {
        auto it = memo.find(s);
        if (it == memo.end()) {
            std::vector<int> members;
            for (int c = 0; c < n; ++c)
                if ((s >> c) & 1u) members.push_back(c);
            it = memo.emplace(s, coster(members)).first;
        }
        return it->second;
    };

    double best_cost = kInf;
    std::vector<std::uint32_t> best_seq;
    std::vector<std::uint32_t> seq;
    const bool ordered = instance.has_precedence();

    std::function<void(std::uint32_t, double)> recurse = [&](std::uint32_t remaining, double cost) {
        if (remaining == 0) {
            if (cost < best_cost) {
                best_cost = cost;
                best_seq = seq;
            }
            return;
        }
        const std::uint32_t low = remaining & (~remaining + 1u);
        for (std::uint32_t s = remaining; s != 0; s = (s - 1) & remaining) {
            if (!ordered && !(s & low)) continue;
            if (!feasible[s]) continue;
            if (ordered && !admissible_removal(instance, s, remaining)) continue;
            const SubsetTour& t = tour_of(s);
            if (t.length == kInf) continue;
            seq.push_back(s);
            recurse(remaining & ~s, cost + t.length);
            seq.pop_back();
        }
    };
    recurse(full, 0.0);
    if (best_cost == kInf) throw Infeasible("oracle: no feasible sequence of tours");

    Solution solution;
    solution.solver = kind;
    for (std::uint32_t s : best_seq) {
        const SubsetTour& t = tour_of(s);
        solution.tours.push_back(make_tour(instance.depot, t.customers, t.points));
    }
    solution.total_cost = total_length(solution.tours);
    solution.stats.subsets_evaluated = memo.size();
    solution.stats.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return solution;
}

// Every visiting order of `members` that respects precedence, in lexicographic order.
template <class Fn>
void for_each_order(const Instance& instance, std::vector<int> members, Fn&& fn)
{
    std::sort(members.begin(), members.end());
    do {
        if (respects_precedence(instance, members)) fn(members);
    } while (std::next_permutation(members.begin(), members.end()));
}

}  // namespace

Solution oracle_cvrp(const Instance& instance)
{
    if (instance.size() > kMaxOracleCustomers)
        throw GuardViolation("oracle_cvrp is limited to " + std::to_string(kMaxOracleCustomers) + " customers, got " +
                             std::to_string(instance.size()));
    if (!instance.all_points()) throw GuardViolation("oracle_cvrp needs point regions; use oracle_cvrg");

    const SubsetCoster coster = [&](const std::vector<int>& members) {
        SubsetTour best;
        for_each_order(instance, members, [&](const std::vector<int>& visit) {
            std::vector<Point> pts;
            for (int c : visit) pts.push_back(instance.customers[static_cast<std::size_t>(c)].region.vertex(0));
            const double len = tour_length(instance.depot, pts);
            if (len < best.length) best = {len, visit, pts};
        });
        return best;
    };
    return enumerate_partitions(instance, coster, SolverKind::ORACLE);
}

Solution oracle_cvrg(const Instance& instance, int samples)
{
    if (instance.size() > kMaxRegionOracleCustomers)
        throw GuardViolation("oracle_cvrg is limited to " + std::to_string(kMaxRegionOracleCustomers) +
                             " customers, got " + std::to_string(instance.size()));
    if (samples < 1) throw std::invalid_argument("oracle_cvrg: samples must be positive");

    const SubsetCoster coster = [&](const std::vector<int>& members) {
        SubsetTour best;
        for_each_order(instance, members, [&](const std::vector<int>& visit) {
            std::vector<Polygon> regions;
            for (int c : visit) regions.push_back(instance.customers[static_cast<std::size_t>(c)].region);
            std::vector<Point> pts;
            const double len = sampled_sequence_length(instance.depot, regions, samples, &pts);
            if (len < best.length) best = {len, visit, pts};
        });
        return best;
    };
    return enumerate_partitions(instance, coster, SolverKind::ORACLE);
}

std::vector<Point> boundary_samples(const Polygon& region, int samples, const Point& depot)
{
    std::vector<Point> out(region.vertices().begin(), region.vertices().end());
    if (region.is_point()) return out;
    const double total = perimeter(region);
    const double step = total / samples;
    std::size_t edge = 0;
    double edge_start = 0.0;
    for (int j = 0; j < samples; ++j) {
        const double s = j * step;
        while (edge + 1 < region.edge_count() && s > edge_start + region.edge(edge).length()) {
            edge_start += region.edge(edge).length();
            ++edge;
        }
        const Segment e = region.edge(edge);
        out.push_back(e.at(std::clamp((s - edge_start) / e.length(), 0.0, 1.0)));
    }
    if (region.is_solid() && contains(region, depot)) out.push_back(depot);
    return out;
}

double sampled_sequence_length(const Point& depot, std::span<const Polygon> regions, int samples,
                               std::vector<Point>* best_points)
{
    if (regions.empty()) {
        if (best_points) best_points->clear();
        return 0.0;
    }
    std::vector<std::vector<Point>> layers;
    for (const Polygon& r : regions) layers.push_back(boundary_samples(r, samples, depot));

    std::vector<std::vector<double>> dist(layers.size());
    std::vector<std::vector<int>> parent(layers.size());
    dist[0].resize(layers[0].size());
    parent[0].assign(layers[0].size(), -1);
    for (std::size_t j = 0; j < layers[0].size(); ++j) dist[0][j] = distance(depot, layers[0][j]);
    for (std::size_t i = 1; i < layers.size(); ++i) {
        dist[i].assign(layers[i].size(), kInf);
        parent[i].assign(layers[i].size(), -1);
        for (std::size_t j = 0; j < layers[i].size(); ++j)
            for (std::size_t p = 0; p < layers[i - 1].size(); ++p) {
                const double cand = dist[i - 1][p] + distance(layers[i - 1][p], layers[i][j]);
                if (cand < dist[i][j]) {
                    dist[i][j] = cand;
                    parent[i][j] = static_cast<int>(p);
                }
            }
    }
    const std::size_t last = layers.size() - 1;
    double best = kInf;
    int arg = -1;
    for (std::size_t j = 0; j < layers[last].size(); ++j) {
        const double cand = dist[last][j] + distance(layers[last][j], depot);
        if (cand < best) {
            best = cand;
            arg = static_cast<int>(j);
        }
    }
    if (best_points) {
        best_points->assign(layers.size(), Point::Zero());
        for (std::size_t i = layers.size(); i-- > 0;) {
            (*best_points)[i] = layers[i][static_cast<std::size_t>(arg)];
            arg = parent[i][static_cast<std::size_t>(arg)];
        }
    }
    return best;
}

}  // namespace cvrg
