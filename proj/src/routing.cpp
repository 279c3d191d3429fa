#include "cvrg/routing.hpp"

#include "cvrg/errors.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace cvrg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCapacitySlack = 1e-12;

void require_exact_size(int n)
{
    if (n < 0 || n > kMaxExactCustomers)
        throw GuardViolation("exact subset DP is limited to " + std::to_string(kMaxExactCustomers) +
                             " customers, got " + std::to_string(n));
}

}  // namespace

std::vector<int> CustomerSet::members() const
{
    std::vector<int> out;
    for (std::uint32_t b = bits; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
}

PrecedenceDag::PrecedenceDag(int n, std::vector<std::pair<int, int>> edges) : n_(n), edges_(std::move(edges))
{
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    std::vector<std::vector<int>> direct(static_cast<std::size_t>(n));
    for (const auto& [above, below] : edges_) {
        if (above < 0 || above >= n || below < 0 || below >= n)
            throw std::invalid_argument("precedence edge index out of range");
        if (above == below) throw std::invalid_argument("precedence edge is a self loop");
        direct[static_cast<std::size_t>(below)].push_back(above);
    }

    above_.assign(static_cast<std::size_t>(n), {});
    std::vector<char> seen(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::fill(seen.begin(), seen.end(), 0);
        std::vector<int> stack = direct[static_cast<std::size_t>(i)];
        while (!stack.empty()) {
            const int j = stack.back();
            stack.pop_back();
            if (j == i) throw std::invalid_argument("precedence relation has a cycle");
            if (seen[static_cast<std::size_t>(j)]) continue;
            seen[static_cast<std::size_t>(j)] = 1;
            for (int k : direct[static_cast<std::size_t>(j)]) stack.push_back(k);
        }
        for (int j = 0; j < n; ++j)
            if (seen[static_cast<std::size_t>(j)]) above_[static_cast<std::size_t>(i)].push_back(j);
    }
    if (n <= 32) {
        above_mask_.assign(static_cast<std::size_t>(n), 0u);
        for (int i = 0; i < n; ++i)
            for (int j : above_[static_cast<std::size_t>(i)]) above_mask_[static_cast<std::size_t>(i)] |= 1u << j;
    }
}

std::span<const int> PrecedenceDag::above_ids(int i) const
{
    if (above_.empty()) return {};
    return above_[static_cast<std::size_t>(i)];
}

CustomerSet PrecedenceDag::above(int i) const
{
    if (above_mask_.empty()) {
        if (n_ > 32) throw std::logic_error("PrecedenceDag::above needs at most 32 customers");
        return {};
    }
    return {above_mask_[static_cast<std::size_t>(i)]};
}

PrecedenceDag PrecedenceDag::restricted(std::span<const int> ids) const
{
    std::vector<int> local(static_cast<std::size_t>(n_), -1);
    for (std::size_t k = 0; k < ids.size(); ++k) local[static_cast<std::size_t>(ids[k])] = static_cast<int>(k);
    // Use the transitive relation so chains through dropped customers survive.
    std::vector<std::pair<int, int>> edges;
    for (int id : ids)
        for (int a : above_ids(id))
            if (local[static_cast<std::size_t>(a)] >= 0)
                edges.emplace_back(local[static_cast<std::size_t>(a)], local[static_cast<std::size_t>(id)]);
    return PrecedenceDag(static_cast<int>(ids.size()), std::move(edges));
}

bool precedence_admissible(CustomerSet s, CustomerSet remaining, const PrecedenceDag& dag)
{
    if (dag.empty()) return true;
    const CustomerSet others = remaining - s;
    for (int i : s.members())
        if (!(dag.above(i) & others).empty()) return false;
    return true;
}

HeldKarpResult held_karp(const Point& depot, std::span<const Point> pts, std::span<const std::uint32_t> must_precede)
{
    const int n = static_cast<int>(pts.size());
    if (n > kMaxHeldKarpPoints)
        throw GuardViolation("held_karp is limited to " + std::to_string(kMaxHeldKarpPoints) + " points, got " +
                             std::to_string(n));
    if (n == 0) return {0.0, {}};
    auto pred = [&](int j) -> std::uint32_t { return must_precede.empty() ? 0u : must_precede[static_cast<std::size_t>(j)]; };

    const std::size_t states = std::size_t{1} << n;
    const auto idx = [n](std::size_t mask, int last) { return mask * static_cast<std::size_t>(n) + static_cast<std::size_t>(last); };
    std::vector<double> best(states * static_cast<std::size_t>(n), kInf);
    std::vector<std::int8_t> parent(states * static_cast<std::size_t>(n), -1);

    for (int j = 0; j < n; ++j)
        if (pred(j) == 0) best[idx(std::size_t{1} << j, j)] = distance(depot, pts[static_cast<std::size_t>(j)]);

    for (std::size_t mask = 1; mask < states; ++mask) {
        for (int last = 0; last < n; ++last) {
            const double here = best[idx(mask, last)];
            if (here == kInf) continue;
            for (int next = 0; next < n; ++next) {
                if (mask & (std::size_t{1} << next)) continue;
                if ((pred(next) & ~static_cast<std::uint32_t>(mask)) != 0) continue;
                const std::size_t to = mask | (std::size_t{1} << next);
                const double cand = here + distance(pts[static_cast<std::size_t>(last)], pts[static_cast<std::size_t>(next)]);
                if (cand < best[idx(to, next)]) {
                    best[idx(to, next)] = cand;
                    parent[idx(to, next)] = static_cast<std::int8_t>(last);
                }
            }
        }
    }

    const std::size_t full = states - 1;
    HeldKarpResult result{kInf, {}};
    int last = -1;
    for (int j = 0; j < n; ++j) {
        const double cand = best[idx(full, j)] + distance(pts[static_cast<std::size_t>(j)], depot);
        if (cand < result.length) {
            result.length = cand;
            last = j;
        }
    }
    if (last < 0) throw Infeasible("held_karp: precedence constraints admit no visiting order");

    std::size_t mask = full;
    while (last >= 0) {
        result.order.push_back(last);
        const int prev = parent[idx(mask, last)];
        mask &= ~(std::size_t{1} << last);
        last = prev;
    }
    // The path is built backwards; without precedence both directions are optimal
    // and the one starting at the lower index is reported.
    const bool constrained = std::any_of(must_precede.begin(), must_precede.end(), [](std::uint32_t x) { return x != 0; });
    if (constrained || result.order.front() > result.order.back())
        std::reverse(result.order.begin(), result.order.end());
    return result;
}

std::vector<CustomerSet> enumerate_feasible_subsets(std::span<const double> weights, double capacity)
{
    const int n = static_cast<int>(weights.size());
    require_exact_size(n);
    for (double w : weights)
        if (!(w > 0.0 && w <= 1.0)) throw std::invalid_argument("customer weight outside (0, 1]");

    std::vector<CustomerSet> out;
    // Depth-first over increasing indices; sums accumulate in index order.
    struct Frame {
        int next;
        std::uint32_t mask;
        double load;
    };
    std::vector<Frame> stack{{0, 0u, 0.0}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        for (int i = f.next; i < n; ++i) {
            const double load = f.load + weights[static_cast<std::size_t>(i)];
            if (load > capacity + kCapacitySlack) continue;
            const std::uint32_t mask = f.mask | (1u << i);
            out.push_back({mask});
            stack.push_back({i + 1, mask, load});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

TourCostTable::TourCostTable(int n) : n_(n)
{
    require_exact_size(n);
    cost_.assign(std::size_t{1} << n, kInf);
    cost_[0] = 0.0;
}

const TourPlan* TourCostTable::plan(CustomerSet s) const
{
    const auto it = plans_.find(s.bits);
    return it == plans_.end() ? nullptr : &it->second;
}

void TourCostTable::insert(CustomerSet s, TourPlan plan)
{
    cost_[s.bits] = plan.length;
    plans_.insert_or_assign(s.bits, std::move(plan));
}

TourCostTable tour_cost_table(int n, std::span<const CustomerSet> feasible, const TourCostFn& cost_fn)
{
    TourCostTable table(n);
    for (CustomerSet s : feasible) table.insert(s, cost_fn(s));
    return table;
}

PartitionResult dp_partition(int n, std::span<const CustomerSet> feasible, std::span<const double> tour_costs,
                             const PrecedenceDag* dag)
{
    require_exact_size(n);
    const std::size_t states = std::size_t{1} << n;
    if (tour_costs.size() < states) throw std::invalid_argument("dp_partition: cost table too small");
    const bool ordered = dag != nullptr && !dag->empty();

    CustomerSet covered;
    for (CustomerSet s : feasible) covered = covered | s;
    if (covered != CustomerSet::all(n)) throw Infeasible("some customer belongs to no feasible tour");

    PartitionResult result;
    result.table.cost.assign(states, kInf);
    result.table.choice.assign(states, 0u);
    result.table.cost[0] = 0.0;

    // Without precedence every partition can be built by always removing the
    // tour that holds the lowest remaining customer.
    std::vector<std::vector<std::uint32_t>> by_lowest(static_cast<std::size_t>(std::max(n, 1)));
    for (CustomerSet s : feasible) by_lowest[static_cast<std::size_t>(s.lowest())].push_back(s.bits);
    for (auto& group : by_lowest) std::sort(group.begin(), group.end());
    std::vector<std::uint32_t> all_feasible;
    for (CustomerSet s : feasible) all_feasible.push_back(s.bits);
    std::sort(all_feasible.begin(), all_feasible.end());

    for (std::uint32_t remaining = 1; remaining < states; ++remaining) {
        const auto& candidates =
            ordered ? all_feasible : by_lowest[static_cast<std::size_t>(std::countr_zero(remaining))];
        double best = kInf;
        std::uint32_t choice = 0;
        for (std::uint32_t s : candidates) {
            if ((s & ~remaining) != 0) continue;
            if (ordered && !precedence_admissible({s}, {remaining}, *dag)) continue;
            ++result.transitions;
            const double cand = result.table.cost[remaining & ~s] + tour_costs[s];
            if (cand < best) {
                best = cand;
                choice = s;
            }
        }
        result.table.cost[remaining] = best;
        result.table.choice[remaining] = choice;
    }

    const std::uint32_t full = CustomerSet::all(n).bits;
    result.cost = result.table.cost[full];
    if (result.cost == kInf) throw Infeasible("no admissible partition into feasible tours");
    for (std::uint32_t remaining = full; remaining != 0;) {
        const std::uint32_t s = result.table.choice[remaining];
        result.tours.push_back({s});
        remaining &= ~s;
    }
    return result;
}

std::uint64_t count_admissible_transitions(int n, std::span<const CustomerSet> feasible, const PrecedenceDag* dag)
{
    require_exact_size(n);
    std::uint64_t count = 0;
    const std::uint32_t states = 1u << n;
    for (std::uint32_t remaining = 1; remaining < states; ++remaining)
        for (CustomerSet s : feasible)
            if (s.subset_of({remaining}) && (dag == nullptr || precedence_admissible(s, {remaining}, *dag))) ++count;
    return count;
}

}  // namespace cvrg
