#include "cvrg/elastic.hpp"

#include "cvrg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cvrg {

namespace {

const Point& previous_of(std::size_t i, std::span<const Point> points, const Point& depot)
{
    return i == 0 ? depot : points[i - 1];
}

const Point& next_of(std::size_t i, std::span<const Point> points, const Point& depot)
{
    return i + 1 == points.size() ? depot : points[i + 1];
}

TouchKind classify_vertex(const Polygon& region, std::size_t j, const Point& g, double tol)
{
    const auto v = region.vertices();
    if (region.is_segment()) {
        const Point w = (v[1 - j] - v[j]).normalized();
        return g.dot(w) <= tol ? TouchKind::Endpoint : TouchKind::Violation;
    }
    const std::size_t n = v.size();
    const Point& here = v[j];
    const Point& before = v[(j + n - 1) % n];
    const Point& after = v[(j + 1) % n];
    // A reflex vertex admits a descent direction unless g vanishes (crossing).
    if (cross(here - before, after - here) <= 0.0) return TouchKind::Violation;
    const Point w1 = (after - here).normalized();
    const Point w2 = (before - here).normalized();
    return g.dot(w1) <= tol && g.dot(w2) <= tol ? TouchKind::Endpoint : TouchKind::Violation;
}

TouchKind classify(const Polygon& region, const Point& p, const Point& prev, const Point& next, double tol)
{
    if (!contains(region, p, kMembershipTol)) return TouchKind::Infeasible;
    if (distance(p, prev) <= kGeomTol || distance(p, next) <= kGeomTol) return TouchKind::Coincident;
    const Point g = (prev - p).normalized() + (next - p).normalized();
    if (g.norm() <= tol) return TouchKind::Crossing;
    if (region.is_point()) return TouchKind::Endpoint;

    const auto v = region.vertices();
    for (std::size_t j = 0; j < v.size(); ++j)
        if (distance(p, v[j]) <= kMembershipTol) return classify_vertex(region, j, g, tol);

    for (std::size_t e = 0; e < region.edge_count(); ++e) {
        const Segment edge = region.edge(e);
        if (distance(closest_point_on_segment(edge, p), p) > kMembershipTol) continue;
        const Point t = edge.direction().normalized();
        const Point outward(t.y(), -t.x());
        const bool outward_ok = !region.is_solid() || g.dot(outward) >= -tol;
        return std::abs(g.dot(t)) <= tol && outward_ok ? TouchKind::MirrorReflection : TouchKind::Violation;
    }
    // Strict interior of a solid region with a bent path.
    return TouchKind::Violation;
}

}  // namespace

double tour_length(const Point& depot, std::span<const Point> points)
{
    if (points.empty()) return 0.0;
    double total = distance(depot, points.front());
    for (std::size_t i = 1; i < points.size(); ++i) total += distance(points[i - 1], points[i]);
    return total + distance(points.back(), depot);
}

std::vector<Point> centroid_seed(const VisitSequence& seq)
{
    std::vector<Point> points;
    points.reserve(seq.regions.size());
    for (const Polygon& region : seq.regions) points.push_back(closest_point_on_polygon(region, centroid(region)));
    return points;
}

Point local_improv(std::size_t i, std::span<const Point> points, const VisitSequence& seq)
{
    return min_sum_point_on_polygon(seq.regions.at(i), previous_of(i, points, seq.depot),
                                    next_of(i, points, seq.depot))
        .point;
}

BandTour elastic_improv(const VisitSequence& seq, std::optional<std::span<const Point>> init,
                        const ElasticOptions& options)
{
    const std::size_t k = seq.regions.size();
    if (k == 0) throw std::invalid_argument("elastic_improv: empty visit sequence");
    if (options.max_sweeps < 1 || !(options.tol > 0.0)) throw std::invalid_argument("elastic_improv: bad options");

    BandTour tour;
    if (init) {
        if (init->size() != k) throw std::invalid_argument("elastic_improv: init size mismatch");
        for (std::size_t i = 0; i < k; ++i)
            if (!contains(seq.regions[i], (*init)[i], kMembershipTol))
                throw std::invalid_argument("elastic_improv: init point outside its region");
        tour.points.assign(init->begin(), init->end());
    } else {
        tour.points = centroid_seed(seq);
    }
    tour.length = tour_length(seq.depot, tour.points);
    tour.converged = false;

    for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
        const double before = tour.length;
        for (std::size_t i = 0; i < k; ++i) {
            const Point& prev = previous_of(i, tour.points, seq.depot);
            const Point& next = next_of(i, tour.points, seq.depot);
            const MinSumPoint candidate = min_sum_point_on_polygon(seq.regions[i], prev, next);
            const double current = distance(tour.points[i], prev) + distance(tour.points[i], next);
            if (candidate.cost <= current) tour.points[i] = candidate.point;
        }
        tour.length = tour_length(seq.depot, tour.points);
        tour.sweeps = sweep;
        if (before - tour.length < options.tol) {
            tour.converged = true;
            break;
        }
    }
    return tour;
}

std::string_view to_string(TouchKind kind)
{
    switch (kind) {
    case TouchKind::Crossing: return "crossing";
    case TouchKind::MirrorReflection: return "mirror-reflection";
    case TouchKind::Endpoint: return "endpoint";
    case TouchKind::Coincident: return "coincident";
    case TouchKind::Violation: return "violation";
    case TouchKind::Infeasible: return "infeasible";
    }
    return "unknown";
}

BandReport check_band_conditions(const BandTour& tour, const VisitSequence& seq, double tol)
{
    if (tour.points.size() != seq.regions.size())
        throw std::invalid_argument("check_band_conditions: tour and sequence sizes differ");
    BandReport report;
    for (std::size_t i = 0; i < tour.points.size(); ++i) {
        const TouchKind kind = classify(seq.regions[i], tour.points[i], previous_of(i, tour.points, seq.depot),
                                        next_of(i, tour.points, seq.depot), tol);
        report.kinds.push_back(kind);
        if (kind == TouchKind::Violation || kind == TouchKind::Infeasible) report.failures.push_back(i);
    }
    return report;
}

Point random_point_in(const Polygon& region, Rng& rng)
{
    const auto v = region.vertices();
    if (region.is_point()) return v[0];
    if (region.is_segment()) return v[0] + uniform01(rng) * (v[1] - v[0]);
    Point lo = v[0];
    Point hi = v[0];
    for (const Point& p : v) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    for (int attempt = 0; attempt < 100'000; ++attempt) {
        const Point q(uniform(rng, lo.x(), hi.x()), uniform(rng, lo.y(), hi.y()));
        if (contains(region, q, 0.0)) return q;
    }
    return closest_point_on_polygon(region, centroid(region));
}

OrderedBand optimal_tour_over_regions(const Point& depot, std::span<const Polygon> regions,
                                      const TourSearchOptions& options, const OrderFilter& filter)
{
    const std::size_t k = regions.size();
    if (k > kMaxRegionsPerTour)
        throw GuardViolation("tour visits " + std::to_string(k) + " regions; permutation search is limited to " +
                             std::to_string(kMaxRegionsPerTour));
    OrderedBand best;
    best.tour.length = std::numeric_limits<double>::infinity();
    if (k == 0) {
        best.tour.length = 0.0;
        return best;
    }

    const bool all_convex = std::all_of(regions.begin(), regions.end(), [](const Polygon& r) { return r.is_convex(); });
    const bool skip_reversals = options.skip_reversals && !filter && k >= 2;
    Rng rng(options.seed);

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    VisitSequence seq{depot, {}};
    seq.regions.reserve(k);
    do {
        if (skip_reversals && order.front() > order.back()) continue;
        if (filter && !filter(order)) continue;
        seq.regions.clear();
        for (std::size_t idx : order) seq.regions.push_back(regions[idx]);

        BandTour tour = elastic_improv(seq, std::nullopt, options.elastic);
        best.elastic_runs += 1;
        best.sweeps += static_cast<std::uint64_t>(tour.sweeps);
        if (!all_convex) {
            for (int r = 0; r < options.restarts; ++r) {
                std::vector<Point> init;
                for (const Polygon& region : seq.regions) init.push_back(random_point_in(region, rng));
                BandTour candidate = elastic_improv(seq, std::span<const Point>(init), options.elastic);
                best.elastic_runs += 1;
                best.sweeps += static_cast<std::uint64_t>(candidate.sweeps);
                if (candidate.length < tour.length) tour = std::move(candidate);
            }
        }
        if (tour.length < best.tour.length) {
            best.order = order;
            best.tour = std::move(tour);
        }
    } while (std::next_permutation(order.begin(), order.end()));

    if (best.order.empty()) throw std::invalid_argument("optimal_tour_over_regions: no admissible visit order");
    return best;
}

}  // namespace cvrg
