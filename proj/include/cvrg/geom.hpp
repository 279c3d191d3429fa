#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

namespace cvrg {

using Point = Eigen::Vector2d;

/// Absolute tolerance (workspace units) for point equality and on-line tests.
inline constexpr double kGeomTol = 1e-9;

/// Tolerance used when checking that a delivery point lies in its region.
inline constexpr double kMembershipTol = 1e-7;

inline double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }
inline double distance(const Point& a, const Point& b) { return (a - b).norm(); }

bool is_finite(const Point& p);

class Segment {
public:
    /// Throws std::invalid_argument when the endpoints coincide or are not finite.
    Segment(Point a, Point b);

    const Point& a() const { return a_; }
    const Point& b() const { return b_; }
    Point direction() const { return b_ - a_; }
    double length() const { return (b_ - a_).norm(); }
    Point at(double t) const { return a_ + t * (b_ - a_); }

private:
    Point a_;
    Point b_;
};

/// Simple polygon with counter-clockwise vertices.
///
/// One vertex is a point region and two vertices a segment region; both
/// count as convex. Clockwise input is reversed, consecutive duplicates
/// (within 1e-12) are dropped, and self-intersecting input is rejected with
/// std::invalid_argument.
class Polygon {
public:
    Polygon() = default;
    explicit Polygon(std::vector<Point> vertices);

    std::span<const Point> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Point& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
    bool is_convex() const { return convex_; }
    bool is_point() const { return vertices_.size() == 1; }
    bool is_segment() const { return vertices_.size() == 2; }
    /// True for regions with nonempty interior.
    bool is_solid() const { return vertices_.size() >= 3; }
    double diameter() const { return diameter_; }

    /// Number of boundary edges (0 for a point, 1 for a segment).
    std::size_t edge_count() const;
    Segment edge(std::size_t i) const;

    bool operator==(const Polygon& other) const { return vertices_ == other.vertices_; }

private:
    std::vector<Point> vertices_;
    bool convex_ = true;
    double diameter_ = 0.0;
};

/// Strictly convex polygon; collinear vertices are merged at construction.
class ConvexPolygon {
public:
    /// Throws std::invalid_argument if the vertices do not form a convex polygon.
    explicit ConvexPolygon(std::vector<Point> vertices);
    explicit ConvexPolygon(const Polygon& polygon);

    std::span<const Point> vertices() const { return polygon_.vertices(); }
    double diameter() const { return polygon_.diameter(); }
    const Polygon& polygon() const { return polygon_; }

private:
    Polygon polygon_;
};

struct MinSumPoint {
    Point point;
    double cost;
};

double signed_area(std::span<const Point> vertices);
double perimeter(const Polygon& polygon);
Point centroid(const Polygon& polygon);

/// Boundary-inclusive containment test with absolute tolerance `tol`.
bool contains(const Polygon& polygon, const Point& q, double tol = kGeomTol);
double distance_to_boundary(const Polygon& polygon, const Point& q);

/// Parameters (t along p, u along q) of the intersection of two segments, if any.
bool segment_intersection(const Segment& p, const Segment& q, double& t, double& u);

Point closest_point_on_segment(const Segment& s, const Point& q);
Point closest_point_on_polygon(const Polygon& polygon, const Point& q);

/// argmin over s of |p-a| + |p-b| by crossing/reflection, with a golden-section
/// fallback when a or b lies on the supporting line.
MinSumPoint min_sum_point_on_segment(const Segment& s, const Point& a, const Point& b);

/// If ab meets P the midpoint of the clipped chord is returned (cost |a-b|);
/// otherwise the best boundary point.
MinSumPoint min_sum_point_on_convex(const ConvexPolygon& polygon, const Point& a, const Point& b);

/// Exact minimizer over an arbitrary simple polygon: chord test followed by a
/// per-edge minimization over the boundary. Dispatches to the convex routine
/// when the polygon is convex.
MinSumPoint min_sum_point_on_polygon(const Polygon& polygon, const Point& a, const Point& b);

}  // namespace cvrg
