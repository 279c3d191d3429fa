#pragma once

#include "cvrg/elastic.hpp"
#include "cvrg/problem.hpp"

#include <cstdint>

namespace cvrg {

struct SolverOptions {
    /// Finite-horizon window size.
    int h = 10;
    /// Extra random elastic starts per visit order for non-convex regions.
    int restarts = 4;
    std::uint64_t seed = 0;
    ElasticOptions elastic;
};

/// Exact subset DP. Each subset's tour cost comes from Held-Karp when every
/// region is a point and from the elastic permutation search otherwise.
/// Throws GuardViolation for more than kMaxExactCustomers customers or a
/// feasible tour over more than kMaxRegionsPerTour regions.
Solution solve_dp(const Instance& instance, const SolverOptions& options = {});

/// Finite-horizon heuristic: exact DP on a window of `options.h` clustered
/// customers, commit the two tours with the lowest length per customer, repeat.
Solution solve_fh(const Instance& instance, const SolverOptions& options = {});

/// Nearest-feasible-region greedy baseline.
Solution solve_greedy(const Instance& instance, const SolverOptions& options = {});

enum class CentroidInner { DP, FH };

/// Point CVRP on region centroids, then elastic refinement of each tour with
/// its visit order fixed. stats.unrefined_cost holds the centroid-tour cost.
Solution solve_centroid(const Instance& instance, CentroidInner inner, const SolverOptions& options = {});

inline constexpr int kMaxOracleCustomers = 8;
inline constexpr int kMaxRegionOracleCustomers = 6;

/// Exhaustive CVRP optimum for point regions: every capacity-feasible,
/// precedence-admissible sequence of tours, each tour costed by trying every
/// visiting permutation. Throws GuardViolation above kMaxOracleCustomers
/// customers or for non-point regions.
Solution oracle_cvrp(const Instance& instance);

/// Exhaustive CVRG reference: partitions x permutations, each fixed-order tour
/// costed by sampled_sequence_length. Its cost upper-bounds the continuous
/// optimum by at most the sum over customers of perimeter / samples.
Solution oracle_cvrg(const Instance& instance, int samples);

/// Closed-tour length through `regions` in the given order with each region
/// replaced by `samples` evenly spaced boundary points plus its vertices (and
/// the depot when the region contains it), solved by a layered shortest-path DP.
double sampled_sequence_length(const Point& depot, std::span<const Polygon> regions, int samples,
                               std::vector<Point>* best_points = nullptr);

/// Sample set used by sampled_sequence_length.
std::vector<Point> boundary_samples(const Polygon& region, int samples, const Point& depot);

}  // namespace cvrg
