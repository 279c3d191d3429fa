#pragma once

#include "cvrg/geom.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cvrg {

inline constexpr int kMaxExactCustomers = 24;
inline constexpr int kMaxHeldKarpPoints = 20;

/// Set of customer indices below kMaxExactCustomers, stored as a bitmask.
struct CustomerSet {
    std::uint32_t bits = 0;

    static CustomerSet all(int n) { return {n >= 32 ? ~0u : (1u << n) - 1u}; }
    static CustomerSet single(int i) { return {1u << i}; }

    bool empty() const { return bits == 0; }
    int size() const { return std::popcount(bits); }
    bool contains(int i) const { return (bits >> i) & 1u; }
    bool subset_of(CustomerSet other) const { return (bits & ~other.bits) == 0; }
    int lowest() const { return std::countr_zero(bits); }
    std::vector<int> members() const;

    CustomerSet operator|(CustomerSet o) const { return {bits | o.bits}; }
    CustomerSet operator&(CustomerSet o) const { return {bits & o.bits}; }
    CustomerSet operator-(CustomerSet o) const { return {bits & ~o.bits}; }
    bool operator==(const CustomerSet&) const = default;
    auto operator<=>(const CustomerSet&) const = default;
};

/// "Above" relation among stacked customers; above customers must be removed first.
class PrecedenceDag {
public:
    PrecedenceDag() = default;
    /// Throws std::invalid_argument on out-of-range indices, self loops or cycles.
    PrecedenceDag(int n, std::vector<std::pair<int, int>> edges);

    int size() const { return n_; }
    bool empty() const { return edges_.empty(); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    /// Customers that lie above `i`, transitively, in increasing order.
    std::span<const int> above_ids(int i) const;
    /// Same as above_ids as a bitmask; requires size() <= 32.
    CustomerSet above(int i) const;
    /// Restriction to the listed customers, renumbered 0..ids.size()-1.
    PrecedenceDag restricted(std::span<const int> ids) const;

    bool operator==(const PrecedenceDag& other) const { return n_ == other.n_ && edges_ == other.edges_; }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> above_;
    std::vector<std::uint32_t> above_mask_;
};

/// True iff no customer of `remaining` outside `s` lies above a member of `s`.
bool precedence_admissible(CustomerSet s, CustomerSet remaining, const PrecedenceDag& dag);

struct HeldKarpResult {
    double length = 0.0;
    std::vector<int> order;
};

/// Exact shortest closed tour depot -> pts -> depot. `must_precede[j]` (optional)
/// holds the local indices that have to be visited before j. Throws
/// GuardViolation above kMaxHeldKarpPoints points, Infeasible if the precedence
/// masks admit no order.
HeldKarpResult held_karp(const Point& depot, std::span<const Point> pts,
                         std::span<const std::uint32_t> must_precede = {});

/// Every nonempty subset whose weight sum is within capacity (+1e-12), in
/// increasing mask order. Throws GuardViolation for more than kMaxExactCustomers
/// weights and std::invalid_argument for weights outside (0, 1].
std::vector<CustomerSet> enumerate_feasible_subsets(std::span<const double> weights, double capacity = 1.0);

/// Visit plan for one tour: customer indices in visiting order with delivery points.
struct TourPlan {
    std::vector<int> customers;
    std::vector<Point> points;
    double length = 0.0;
    std::uint64_t sweeps = 0;
};

/// First-phase table: c_s for each feasible subset (flat, +inf elsewhere) and its plan.
class TourCostTable {
public:
    explicit TourCostTable(int n);

    int customer_count() const { return n_; }
    double cost(CustomerSet s) const { return cost_[s.bits]; }
    std::span<const double> costs() const { return cost_; }
    const TourPlan* plan(CustomerSet s) const;
    std::size_t size() const { return plans_.size(); }
    void insert(CustomerSet s, TourPlan plan);

private:
    int n_;
    std::vector<double> cost_;
    std::unordered_map<std::uint32_t, TourPlan> plans_;
};

using TourCostFn = std::function<TourPlan(CustomerSet)>;

/// Evaluates `cost_fn` on every feasible subset and stores the results.
TourCostTable tour_cost_table(int n, std::span<const CustomerSet> feasible, const TourCostFn& cost_fn);

/// J_I and the backpointer of every remaining set I.
struct SubsetTable {
    std::vector<double> cost;
    std::vector<std::uint32_t> choice;
};

struct PartitionResult {
    double cost = 0.0;
    /// Tours in removal order (first entry is served first).
    std::vector<CustomerSet> tours;
    SubsetTable table;
    std::uint64_t transitions = 0;
};

/// Second phase: J_I = min over admissible feasible s within I of J_{I-s} + c_s.
/// Ties go to the lowest mask. Throws Infeasible when the full set cannot be covered.
PartitionResult dp_partition(int n, std::span<const CustomerSet> feasible, std::span<const double> tour_costs,
                             const PrecedenceDag* dag = nullptr);

/// Number of (s, I) pairs with s a feasible subset of I that is admissible under `dag`.
std::uint64_t count_admissible_transitions(int n, std::span<const CustomerSet> feasible,
                                           const PrecedenceDag* dag = nullptr);

}  // namespace cvrg
