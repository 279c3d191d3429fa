#include "cvrg/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cvrg {

namespace {

constexpr double kDuplicateTol = 1e-12;
constexpr double kGoldenTol = 1e-10;

double segment_distance(const Segment& p, const Segment& q)
{
    double t = 0.0;
    double u = 0.0;
    if (segment_intersection(p, q, t, u)) return 0.0;
    return std::min({distance(closest_point_on_segment(p, q.a()), q.a()),
                     distance(closest_point_on_segment(p, q.b()), q.b()),
                     distance(closest_point_on_segment(q, p.a()), p.a()),
                     distance(closest_point_on_segment(q, p.b()), p.b())});
}

bool is_simple(std::span<const Point> v)
{
    const std::size_t n = v.size();
    if (n < 4) return true;
    for (std::size_t i = 0; i < n; ++i) {
        // Spikes: the polygon folds back onto the previous edge.
        const Point e0 = v[i] - v[(i + n - 1) % n];
        const Point e1 = v[(i + 1) % n] - v[i];
        if (std::abs(cross(e0, e1)) <= kDuplicateTol * e0.norm() * e1.norm() && e0.dot(e1) < 0.0) return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Segment ei(v[i], v[(i + 1) % n]);
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // adjacent through the wrap
            const Segment ej(v[j], v[(j + 1) % n]);
            if (segment_distance(ei, ej) <= kDuplicateTol) return false;
        }
    }
    return true;
}

bool vertices_convex(std::span<const Point> v)
{
    const std::size_t n = v.size();
    if (n < 3) return true;
    for (std::size_t i = 0; i < n; ++i) {
        const Point e0 = v[(i + 1) % n] - v[i];
        const Point e1 = v[(i + 2) % n] - v[(i + 1) % n];
        if (cross(e0, e1) < -kDuplicateTol * e0.norm() * e1.norm()) return false;
    }
    return true;
}

// Cyrus-Beck clip of a->b against a counter-clockwise convex polygon.
bool clip_to_convex(std::span<const Point> v, const Point& a, const Point& b, double& t_lo, double& t_hi)
{
    t_lo = 0.0;
    t_hi = 1.0;
    const Point ab = b - a;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point e = v[(i + 1) % n] - v[i];
        const double len = e.norm();
        const double f0 = cross(e, a - v[i]) / len + kGeomTol;
        const double df = cross(e, ab) / len;
        if (std::abs(df) < 1e-15) {
            if (f0 < 0.0) return false;
            continue;
        }
        const double t = -f0 / df;
        if (df > 0.0)
            t_lo = std::max(t_lo, t);
        else
            t_hi = std::min(t_hi, t);
        if (t_lo > t_hi) return false;
    }
    return true;
}

MinSumPoint min_sum_over_edges(const Polygon& polygon, const Point& a, const Point& b)
{
    MinSumPoint best{polygon.vertex(0), std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < polygon.edge_count(); ++i) {
        const MinSumPoint m = min_sum_point_on_segment(polygon.edge(i), a, b);
        if (m.cost < best.cost) best = m;
    }
    return best;
}

MinSumPoint min_sum_point_fallback(const Polygon& polygon, const Point& a, const Point& b)
{
    if (polygon.is_point()) {
        const Point& p = polygon.vertex(0);
        return {p, distance(p, a) + distance(p, b)};
    }
    if (polygon.is_segment()) return min_sum_point_on_segment(polygon.edge(0), a, b);
    return {};
}

}  // namespace

bool is_finite(const Point& p) { return std::isfinite(p.x()) && std::isfinite(p.y()); }

Segment::Segment(Point a, Point b) : a_(std::move(a)), b_(std::move(b))
{
    if (!is_finite(a_) || !is_finite(b_)) throw std::invalid_argument("segment endpoint is not finite");
    if ((a_ - b_).norm() <= kDuplicateTol) throw std::invalid_argument("degenerate segment");
}

Polygon::Polygon(std::vector<Point> vertices)
{
    if (vertices.empty()) throw std::invalid_argument("polygon has no vertices");
    for (const Point& p : vertices)
        if (!is_finite(p)) throw std::invalid_argument("polygon vertex is not finite");

    for (const Point& p : vertices)
        if (vertices_.empty() || (p - vertices_.back()).norm() > kDuplicateTol) vertices_.push_back(p);
    while (vertices_.size() > 1 && (vertices_.front() - vertices_.back()).norm() <= kDuplicateTol)
        vertices_.pop_back();

    if (vertices_.size() >= 3) {
        const double area = signed_area(vertices_);
        double scale = 0.0;
        for (const Point& p : vertices_) scale = std::max(scale, (p - vertices_[0]).norm());
        if (std::abs(area) <= kDuplicateTol * scale * scale) throw std::invalid_argument("polygon has zero area");
        if (area < 0.0) std::reverse(vertices_.begin(), vertices_.end());
        if (!is_simple(vertices_)) throw std::invalid_argument("polygon is not simple");
        convex_ = vertices_convex(vertices_);
    }

    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j)
            diameter_ = std::max(diameter_, distance(vertices_[i], vertices_[j]));
}

std::size_t Polygon::edge_count() const
{
    if (vertices_.size() <= 1) return 0;
    if (vertices_.size() == 2) return 1;
    return vertices_.size();
}

Segment Polygon::edge(std::size_t i) const { return Segment(vertex(i), vertex(i + 1)); }

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) : ConvexPolygon(Polygon(std::move(vertices))) {}

ConvexPolygon::ConvexPolygon(const Polygon& polygon)
{
    if (!polygon.is_convex()) throw std::invalid_argument("polygon is not convex");
    if (!polygon.is_solid()) {
        polygon_ = polygon;
        return;
    }
    const auto v = polygon.vertices();
    const std::size_t n = v.size();
    std::vector<Point> kept;
    for (std::size_t i = 0; i < n; ++i) {
        const Point e0 = v[i] - v[(i + n - 1) % n];
        const Point e1 = v[(i + 1) % n] - v[i];
        if (std::abs(cross(e0, e1)) > kDuplicateTol * e0.norm() * e1.norm()) kept.push_back(v[i]);
    }
    polygon_ = Polygon(std::move(kept));
}

double signed_area(std::span<const Point> vertices)
{
    double twice = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        twice += cross(vertices[i], vertices[(i + 1) % vertices.size()]);
    return 0.5 * twice;
}

double perimeter(const Polygon& polygon)
{
    double total = 0.0;
    for (std::size_t i = 0; i < polygon.edge_count(); ++i) total += polygon.edge(i).length();
    return total;
}

Point centroid(const Polygon& polygon)
{
    const auto v = polygon.vertices();
    if (polygon.is_point()) return v[0];
    if (polygon.is_segment()) return 0.5 * (v[0] + v[1]);
    // Shift to the first vertex to limit cancellation.
    const Point origin = v[0];
    double twice_area = 0.0;
    Point acc = Point::Zero();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point p = v[i] - origin;
        const Point q = v[(i + 1) % v.size()] - origin;
        const double c = cross(p, q);
        twice_area += c;
        acc += c * (p + q);
    }
    return origin + acc / (3.0 * twice_area);
}

double distance_to_boundary(const Polygon& polygon, const Point& q)
{
    if (polygon.is_point()) return distance(polygon.vertex(0), q);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < polygon.edge_count(); ++i) {
        const Segment e = polygon.edge(i);
        best = std::min(best, distance(closest_point_on_segment(e, q), q));
    }
    return best;
}

bool contains(const Polygon& polygon, const Point& q, double tol)
{
    if (distance_to_boundary(polygon, q) <= tol) return true;
    if (!polygon.is_solid()) return false;
    // Crossing-number test; boundary cases were handled above.
    bool inside = false;
    const auto v = polygon.vertices();
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        if ((v[i].y() > q.y()) != (v[j].y() > q.y())) {
            const double x = v[j].x() + (q.y() - v[j].y()) * (v[i].x() - v[j].x()) / (v[i].y() - v[j].y());
            if (q.x() < x) inside = !inside;
        }
    }
    return inside;
}

bool segment_intersection(const Segment& p, const Segment& q, double& t, double& u)
{
    const Point r = p.direction();
    const Point s = q.direction();
    const double denom = cross(r, s);
    if (std::abs(denom) <= 1e-15 * r.norm() * s.norm()) return false;
    const Point w = q.a() - p.a();
    t = cross(w, s) / denom;
    u = cross(w, r) / denom;
    constexpr double slack = 1e-12;
    return t >= -slack && t <= 1.0 + slack && u >= -slack && u <= 1.0 + slack;
}

Point closest_point_on_segment(const Segment& s, const Point& q)
{
    const Point d = s.direction();
    const double t = std::clamp((q - s.a()).dot(d) / d.squaredNorm(), 0.0, 1.0);
    return s.at(t);
}

Point closest_point_on_polygon(const Polygon& polygon, const Point& q)
{
    if (polygon.is_point()) return polygon.vertex(0);
    if (polygon.is_solid() && contains(polygon, q, 0.0)) return q;
    Point best = polygon.vertex(0);
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < polygon.edge_count(); ++i) {
        const Point c = closest_point_on_segment(polygon.edge(i), q);
        const double d = distance(c, q);
        if (d < best_dist) {
            best_dist = d;
            best = c;
        }
    }
    return best;
}

MinSumPoint min_sum_point_on_segment(const Segment& s, const Point& a, const Point& b)
{
    const Point d = s.direction();
    const double len = d.norm();
    const Point dn = d / len;
    const Point normal(-dn.y(), dn.x());
    const double side_a = normal.dot(a - s.a());
    const double side_b = normal.dot(b - s.a());
    auto cost = [&](double t) {
        const Point p = s.at(t);
        return distance(p, a) + distance(p, b);
    };

    double t = 0.0;
    if (std::abs(side_a) <= kGeomTol || std::abs(side_b) <= kGeomTol) {
        // The objective is convex along s, so golden-section search is exact up to tolerance.
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double lo = 0.0;
        double hi = 1.0;
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        double f1 = cost(x1);
        double f2 = cost(x2);
        while ((hi - lo) * len > kGoldenTol) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = cost(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = cost(x2);
            }
        }
        t = 0.5 * (lo + hi);
        for (double end : {0.0, 1.0})
            if (cost(end) < cost(t)) t = end;
    } else {
        // Mirror b to the far side of the supporting line when both are on the same side.
        const double side_mirror = side_a * side_b < 0.0 ? side_b : -side_b;
        const Point mirrored = side_a * side_b < 0.0 ? b : Point(b - 2.0 * side_b * normal);
        const double lambda = side_a / (side_a - side_mirror);
        const Point hit = a + lambda * (mirrored - a);
        t = std::clamp((hit - s.a()).dot(dn) / len, 0.0, 1.0);
    }
    const Point p = s.at(t);
    return {p, distance(p, a) + distance(p, b)};
}

MinSumPoint min_sum_point_on_convex(const ConvexPolygon& polygon, const Point& a, const Point& b)
{
    return min_sum_point_on_polygon(polygon.polygon(), a, b);
}

MinSumPoint min_sum_point_on_polygon(const Polygon& polygon, const Point& a, const Point& b)
{
    if (!polygon.is_solid()) return min_sum_point_fallback(polygon, a, b);

    if (polygon.is_convex()) {
        double t_lo = 0.0;
        double t_hi = 0.0;
        if (clip_to_convex(polygon.vertices(), a, b, t_lo, t_hi)) {
            const Point p = a + 0.5 * (t_lo + t_hi) * (b - a);
            return {p, distance(p, a) + distance(p, b)};
        }
        return min_sum_over_edges(polygon, a, b);
    }

    // Non-convex: split ab at its boundary crossings and keep the longest inside piece.
    if ((a - b).norm() <= kDuplicateTol) {
        if (contains(polygon, a)) return {a, 0.0};
        return min_sum_over_edges(polygon, a, b);
    }
    const Segment ab(a, b);
    std::vector<double> cuts{0.0, 1.0};
    for (std::size_t i = 0; i < polygon.edge_count(); ++i) {
        double t = 0.0;
        double u = 0.0;
        if (segment_intersection(ab, polygon.edge(i), t, u)) cuts.push_back(std::clamp(t, 0.0, 1.0));
    }
    std::sort(cuts.begin(), cuts.end());
    double best_len = -1.0;
    double best_mid = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double len = cuts[i + 1] - cuts[i];
        if (len <= 1e-12) continue;
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        if (len > best_len && contains(polygon, ab.at(mid))) {
            best_len = len;
            best_mid = mid;
        }
    }
    if (best_len < 0.0 && cuts.size() > 2) {
        // ab only touches the boundary.
        best_mid = cuts[1];
        best_len = 0.0;
    }
    if (best_len >= 0.0) {
        const Point p = ab.at(best_mid);
        return {p, distance(p, a) + distance(p, b)};
    }
    return min_sum_over_edges(polygon, a, b);
}

}  // namespace cvrg
