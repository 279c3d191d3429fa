#pragma once

#include "cvrg/geom.hpp"
#include "cvrg/random.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cvrg {

/// Ordered regions visited on one closed tour that starts and ends at the depot.
struct VisitSequence {
    Point depot;
    std::vector<Polygon> regions;
};

struct BandTour {
    std::vector<Point> points;
    double length = 0.0;
    int sweeps = 0;
    bool converged = true;
};

struct ElasticOptions {
    int max_sweeps = 10'000;
    double tol = 1e-10;
};

/// Closed tour length depot -> points... -> depot.
double tour_length(const Point& depot, std::span<const Point> points);

/// Default start for each region: its centroid pulled onto the region.
std::vector<Point> centroid_seed(const VisitSequence& seq);

/// Moves point `i` (0-based) to the minimizer of its two fixed neighbor legs.
Point local_improv(std::size_t i, std::span<const Point> points, const VisitSequence& seq);

/// Gauss-Seidel sweeps of local_improv until a sweep shortens the tour by
/// less than `tol` or `max_sweeps` is reached (then `converged` is false).
/// Throws std::invalid_argument for an empty sequence or an infeasible init.
BandTour elastic_improv(const VisitSequence& seq, std::optional<std::span<const Point>> init = std::nullopt,
                        const ElasticOptions& options = {});

enum class TouchKind {
    Crossing,          // straight pass through the region
    MirrorReflection,  // equal angles on an active edge
    Endpoint,          // vertex or segment end with no feasible descent direction
    Coincident,        // a neighbor sits on the same point
    Violation,         // feasible but none of the conditions hold
    Infeasible,        // outside the region
};

std::string_view to_string(TouchKind kind);

struct BandReport {
    std::vector<TouchKind> kinds;
    std::vector<std::size_t> failures;
    bool pass() const { return failures.empty(); }
};

/// Classifies every touch point of `tour` against the elastic-band conditions.
///
/// With g the sum of the unit vectors from a touch point towards its two
/// neighbors: a crossing has |g| <= tol; a mirror reflection sits on an edge
/// interior with |g . tangent| <= tol and g pointing out of a solid region;
/// an endpoint sits on a convex vertex (or segment end, or point region) where
/// g . w <= tol for every incident edge direction w.
BandReport check_band_conditions(const BandTour& tour, const VisitSequence& seq, double tol);

/// Random point of a region; uniform over solid regions and along segments.
Point random_point_in(const Polygon& region, Rng& rng);

/// Accepts a visit order (indices into the region list) or rejects it.
using OrderFilter = std::function<bool(std::span<const std::size_t>)>;

struct OrderedBand {
    std::vector<std::size_t> order;
    BandTour tour;
    std::uint64_t elastic_runs = 0;
    std::uint64_t sweeps = 0;
};

inline constexpr std::size_t kMaxRegionsPerTour = 9;

struct TourSearchOptions {
    int restarts = 1;
    std::uint64_t seed = 0;
    ElasticOptions elastic;
    /// Enumerates only orders whose first index is below the last. Ignored when
    /// an order filter is supplied, since a filter may reject one direction.
    bool skip_reversals = true;
};

/// Best closed tour over all visit orders of `regions`, each order optimized by
/// elastic_improv. All-convex inputs use one centroid-seeded run per order;
/// otherwise `restarts` extra random starts are tried. Ties go to the
/// lexicographically smallest order. Throws GuardViolation when there are more
/// than kMaxRegionsPerTour regions, and std::invalid_argument if the filter
/// rejects every order.
OrderedBand optimal_tour_over_regions(const Point& depot, std::span<const Polygon> regions,
                                      const TourSearchOptions& options = {}, const OrderFilter& filter = {});

}  // namespace cvrg
