#include "cvrg/instances.hpp"

#include "cvrg/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cvrg {

namespace {

std::string format_double(double x)
{
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", x);
    return buf.data();
}

std::vector<Point> convex_hull(std::vector<Point> pts)
{
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    if (pts.size() < 3) return pts;
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

// Region outline around the origin with diameter at most 2 * radius.
std::vector<Point> draw_shape(RegionKind kind, double radius, Rng& rng)
{
    const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    switch (kind) {
    case RegionKind::POINT: return {Point::Zero()};
    case RegionKind::SEGMENT: {
        const Point half = radius * Point(std::cos(theta), std::sin(theta));
        return {-half, half};
    }
    case RegionKind::CONVEX_POLY: {
        for (;;) {
            std::vector<Point> cloud;
            for (int i = 0; i < 6; ++i) {
                const double r = radius * std::sqrt(uniform01(rng));
                const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
                cloud.emplace_back(r * std::cos(phi), r * std::sin(phi));
            }
            std::vector<Point> hull = convex_hull(std::move(cloud));
            if (hull.size() >= 3 && std::abs(signed_area(hull)) > 1e-3 * radius * radius) return hull;
        }
    }
    case RegionKind::NONCONVEX_POLY: {
        // Star-shaped around the origin with alternating outer and inner radii.
        constexpr int spikes = 8;
        const double step = 2.0 * std::numbers::pi / spikes;
        std::vector<Point> star;
        for (int j = 0; j < spikes; ++j) {
            const double phi = theta + step * (j + uniform(rng, -0.25, 0.25));
            const double r = j % 2 == 0 ? radius : radius * uniform(rng, 0.35, 0.6);
            star.emplace_back(r * std::cos(phi), r * std::sin(phi));
        }
        return star;
    }
    }
    return {Point::Zero()};
}

bool fits(const Workspace& ws, std::span<const Point> shape, const Point& center)
{
    return std::all_of(shape.begin(), shape.end(), [&](const Point& p) { return ws.contains(center + p, 0.0); });
}

}  // namespace

std::string_view to_string(Placement p)
{
    switch (p) {
    case Placement::UNIFORM: return "uniform";
    case Placement::GAUSSIAN: return "gaussian";
    case Placement::INV_GAUSSIAN: return "inv-gaussian";
    }
    return "?";
}

std::string_view to_string(WeightRegime w)
{
    switch (w) {
    case WeightRegime::FULL: return "full";
    case WeightRegime::LOWER: return "lower";
    case WeightRegime::BAND: return "band";
    }
    return "?";
}

std::string_view to_string(RegionKind r)
{
    switch (r) {
    case RegionKind::POINT: return "point";
    case RegionKind::SEGMENT: return "segment";
    case RegionKind::CONVEX_POLY: return "convex";
    case RegionKind::NONCONVEX_POLY: return "nonconvex";
    }
    return "?";
}

std::optional<Placement> parse_placement(std::string_view text)
{
    for (Placement p : {Placement::UNIFORM, Placement::GAUSSIAN, Placement::INV_GAUSSIAN})
        if (to_string(p) == text) return p;
    return std::nullopt;
}

std::optional<WeightRegime> parse_weight_regime(std::string_view text)
{
    for (WeightRegime w : {WeightRegime::FULL, WeightRegime::LOWER, WeightRegime::BAND})
        if (to_string(w) == text) return w;
    return std::nullopt;
}

std::optional<RegionKind> parse_region_kind(std::string_view text)
{
    for (RegionKind r : {RegionKind::POINT, RegionKind::SEGMENT, RegionKind::CONVEX_POLY, RegionKind::NONCONVEX_POLY})
        if (to_string(r) == text) return r;
    return std::nullopt;
}

void check_gen_spec(const GenSpec& spec)
{
    if (spec.n < 1) throw std::invalid_argument("n must be at least 1");
    if (spec.k < 2) throw std::invalid_argument("k must be at least 2");
    if (!(spec.workspace_side > 0.0) || !std::isfinite(spec.workspace_side))
        throw std::invalid_argument("workspace side must be positive");
}

std::pair<double, double> weight_range(WeightRegime regime, int k)
{
    switch (regime) {
    case WeightRegime::FULL: return {kMinFullWeight, 1.0};
    case WeightRegime::LOWER: return {1.0 / k, 1.0};
    case WeightRegime::BAND: return {1.0 / k, 2.0 / k};
    }
    return {0.0, 1.0};
}

Instance generate(const GenSpec& spec)
{
    check_gen_spec(spec);
    Rng rng(spec.seed);
    const double side = spec.workspace_side;
    const double radius = side / 20.0;

    Instance instance;
    instance.workspace = {Point::Zero(), side, side};
    instance.depot = Point(side / 2.0, side / 2.0);

    const auto [lo, hi] = weight_range(spec.weights, spec.k);
    std::vector<double> weights;
    for (int i = 0; i < spec.n; ++i) {
        const double w = spec.weights == WeightRegime::FULL ? std::max(1.0 - uniform01(rng), kMinFullWeight)
                                                            : uniform(rng, lo, hi);
        weights.push_back(w);
    }

    const double sigma = side / 6.0;
    std::vector<Polygon> regions;
    for (int i = 0; i < spec.n; ++i) {
        const std::vector<Point> shape = draw_shape(spec.region, radius, rng);
        bool placed = false;
        for (int attempt = 0; attempt < kMaxPlacementAttempts && !placed; ++attempt) {
            Point center = spec.placement == Placement::UNIFORM
                               ? Point(uniform(rng, 0.0, side), uniform(rng, 0.0, side))
                               : Point(side / 2.0 + sigma * standard_normal(rng), side / 2.0 + sigma * standard_normal(rng));
            if (!fits(instance.workspace, shape, center)) continue;
            std::vector<Point> vertices;
            for (const Point& p : shape) vertices.push_back(center + p);
            regions.emplace_back(std::move(vertices));
            placed = true;
        }
        if (!placed) throw std::runtime_error("could not place region " + std::to_string(i) + " inside the workspace");
    }

    std::vector<std::size_t> region_of(static_cast<std::size_t>(spec.n));
    std::iota(region_of.begin(), region_of.end(), std::size_t{0});
    if (spec.placement != Placement::UNIFORM) {
        // Heavier weights get centers nearer the mean (GAUSSIAN) or farther away (INV_GAUSSIAN).
        std::vector<std::size_t> by_weight(region_of);
        std::stable_sort(by_weight.begin(), by_weight.end(),
                         [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
        std::vector<std::size_t> by_distance(region_of);
        std::vector<double> dist;
        for (const Polygon& r : regions) dist.push_back(distance(centroid(r), instance.depot));
        std::stable_sort(by_distance.begin(), by_distance.end(), [&](std::size_t a, std::size_t b) {
            return spec.placement == Placement::GAUSSIAN ? dist[a] < dist[b] : dist[a] > dist[b];
        });
        for (std::size_t r = 0; r < by_weight.size(); ++r) region_of[by_weight[r]] = by_distance[r];
    }
    for (int i = 0; i < spec.n; ++i)
        instance.customers.push_back({regions[region_of[static_cast<std::size_t>(i)]], weights[static_cast<std::size_t>(i)]});

    instance.provenance = {{"k", std::to_string(spec.k)},
                           {"n", std::to_string(spec.n)},
                           {"placement", std::string(to_string(spec.placement))},
                           {"region", std::string(to_string(spec.region))},
                           {"seed", std::to_string(spec.seed)},
                           {"side", format_double(spec.workspace_side)},
                           {"weights", std::string(to_string(spec.weights))}};
    return instance;
}

Instance gen_3partition_family(int m, double epsilon, std::uint64_t seed)
{
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    if (!(epsilon > 0.0) || epsilon >= 0.25) throw std::invalid_argument("epsilon must lie in (0, 0.25)");
    Rng rng(seed);
    constexpr std::int64_t bin = kThreePartitionBin;
    const auto quarter = bin / 4;
    const auto half = bin / 2;

    std::vector<double> weights;
    for (int g = 0; g < m; ++g) {
        for (;;) {
            const std::int64_t a1 = quarter + 1 + static_cast<std::int64_t>(uniform_index(rng, half - quarter - 1));
            const std::int64_t a2 = quarter + 1 + static_cast<std::int64_t>(uniform_index(rng, half - quarter - 1));
            const std::int64_t a3 = bin - a1 - a2;
            if (a3 <= quarter || a3 >= half) continue;
            for (std::int64_t a : {a1, a2, a3}) weights.push_back(static_cast<double>(a) / static_cast<double>(bin));
            break;
        }
    }
    for (std::size_t i = weights.size(); i > 1; --i) std::swap(weights[i - 1], weights[uniform_index(rng, i)]);

    Instance instance;
    instance.depot = Point::Zero();
    instance.workspace = {Point(-0.5, -0.5), 2.0, 1.0};
    for (double w : weights) {
        const double r = epsilon * std::sqrt(uniform01(rng));
        const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        instance.customers.push_back({Polygon({Point(1.0 + r * std::cos(phi), r * std::sin(phi))}), w});
    }
    instance.provenance = {{"eps", format_double(epsilon)},
                           {"family", "3partition"},
                           {"m", std::to_string(m)},
                           {"seed", std::to_string(seed)}};
    return instance;
}

}  // namespace cvrg
