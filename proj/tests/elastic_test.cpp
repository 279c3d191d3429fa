#include "cvrg/elastic.hpp"
#include "cvrg/errors.hpp"
#include "cvrg/solvers.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace cvrg;
using cvrg::test::near;

TEST_CASE("local_improv examples")
{
    SUBCASE("mirror reflection at the midpoint")
    {
        const VisitSequence seq{Point(0, 0), {Polygon({{-1, 1}, {1, 1}})}};
        const std::vector<Point> pts{{0.7, 1}};
        CHECK(near(local_improv(0, pts, seq), Point(0, 1)));
    }
    SUBCASE("crossing")
    {
        const VisitSequence seq{Point(0, 0), {Polygon({{1, -1}, {1, 1}}), Polygon({{2, 0}})}};
        const std::vector<Point> pts{{1, 0.8}, {2, 0}};
        CHECK(near(local_improv(0, pts, seq), Point(1, 0)));
    }
    SUBCASE("endpoint")
    {
        const VisitSequence seq{Point(0, 0), {Polygon({{1, 1}, {2, 1}})}};
        const std::vector<Point> pts{{1.5, 1}};
        const Point p = local_improv(0, pts, seq);
        CHECK(near(p, Point(1, 1)));
        const BandTour tour = elastic_improv(seq);
        CHECK(tour.length <= sampled_sequence_length(seq.depot, seq.regions, 2000) + 1e-12);
    }
}

TEST_CASE("elastic_improv examples")
{
    SUBCASE("two parallel segments")
    {
        const VisitSequence seq{Point(0, 0), {Polygon({{1, -1}, {1, 1}}), Polygon({{2, -1}, {2, 1}})}};
        const BandTour tour = elastic_improv(seq, std::vector<Point>{{1, 0.9}, {2, -0.7}});
        CHECK(near(tour.points[0], Point(1, 0), 1e-5));
        CHECK(near(tour.points[1], Point(2, 0), 1e-5));
        CHECK(tour.length == doctest::Approx(4.0).epsilon(1e-9));
        CHECK(tour.converged);
        const BandReport report = check_band_conditions(tour, seq, 1e-5);
        CHECK(report.pass());
    }
    SUBCASE("single convex square")
    {
        const VisitSequence seq{Point(0, 0), {Polygon({{1, -0.5}, {2, -0.5}, {2, 0.5}, {1, 0.5}})}};
        const BandTour tour = elastic_improv(seq);
        CHECK(near(tour.points[0], Point(1, 0)));
        CHECK(tour.length == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(tour.length <= sampled_sequence_length(seq.depot, seq.regions, 2000) + 1e-12);
    }
    SUBCASE("errors")
    {
        const VisitSequence empty{Point(0, 0), {}};
        CHECK_THROWS_AS(elastic_improv(empty), std::invalid_argument);
        const VisitSequence seq{Point(0, 0), {Polygon({{1, -1}, {1, 1}})}};
        CHECK_THROWS_AS(elastic_improv(seq, std::vector<Point>{{5, 5}}), std::invalid_argument);
        CHECK_THROWS_AS(elastic_improv(seq, std::nullopt, {0, 1e-10}), std::invalid_argument);
    }
    SUBCASE("sweep cap reports non-convergence")
    {
        const VisitSequence seq{Point(0, 0), {Polygon({{1, -1}, {1, 1}}), Polygon({{2, -1}, {2, 1}}),
                                              Polygon({{1.5, 2}, {2.5, 3}})}};
        const BandTour tour = elastic_improv(seq, std::vector<Point>{{1, 1}, {2, -1}, {2.5, 3}}, {1, 1e-10});
        CHECK(tour.sweeps == 1);
        CHECK_FALSE(tour.converged);
    }
}

TEST_CASE("elastic_improv is monotone per sweep and feasible")
{
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const VisitSequence seq = test::random_convex_sequence(rng, 2 + trial % 3);
        std::vector<Point> pts;
        for (const Polygon& r : seq.regions) pts.push_back(random_point_in(r, rng));
        double previous = tour_length(seq.depot, pts);
        for (int sweep = 0; sweep < 50; ++sweep) {
            const BandTour step = elastic_improv(seq, pts, {1, 1e-10});
            CHECK(step.length <= previous + 1e-12);
            for (std::size_t i = 0; i < pts.size(); ++i) CHECK(contains(seq.regions[i], step.points[i], kMembershipTol));
            previous = step.length;
            pts = step.points;
        }
    }
}

TEST_CASE("check_band_conditions classification")
{
    SUBCASE("mirror reflection")
    {
        const VisitSequence seq{Point(0, 0), {Polygon({{-1, 1}, {1, 1}})}};
        const BandTour tour = elastic_improv(seq);
        const BandReport report = check_band_conditions(tour, seq, 1e-5);
        CHECK(report.pass());
        CHECK(report.kinds[0] == TouchKind::MirrorReflection);
    }
    SUBCASE("crossing and endpoint")
    {
        const VisitSequence seq{Point(0, 0), {Polygon({{1, -1}, {1, 1}}), Polygon({{2, 1}, {3, 1}})}};
        const BandTour tour = elastic_improv(seq);
        const BandReport report = check_band_conditions(tour, seq, 1e-5);
        CHECK(report.pass());
        CHECK(report.kinds[0] == TouchKind::Crossing);
        CHECK(report.kinds[1] == TouchKind::Endpoint);
    }
    SUBCASE("perturbed touch point fails at that index")
    {
        const VisitSequence seq{Point(0, 0), {Polygon({{1, -1}, {1, 1}}), Polygon({{2, -1}, {2, 1}})}};
        BandTour tour = elastic_improv(seq);
        tour.points[1] += Point(0, 0.05);
        tour.length = tour_length(seq.depot, tour.points);
        const BandReport report = check_band_conditions(tour, seq, 1e-5);
        CHECK_FALSE(report.pass());
        CHECK(std::find(report.failures.begin(), report.failures.end(), 1u) != report.failures.end());
        CHECK(report.kinds[1] == TouchKind::Violation);
    }
    SUBCASE("outside the region")
    {
        const VisitSequence seq{Point(0, 0), {Polygon({{1, -1}, {1, 1}})}};
        BandTour tour{{Point(3, 0)}, 6.0};
        const BandReport report = check_band_conditions(tour, seq, 1e-5);
        CHECK(report.kinds[0] == TouchKind::Infeasible);
    }
    SUBCASE("strict interior bend is a violation")
    {
        const VisitSequence seq{Point(0, 0), {Polygon({{1, -1}, {3, -1}, {3, 1}, {1, 1}})}};
        BandTour tour{{Point(2, 0.5)}, 0.0};
        tour.length = tour_length(seq.depot, tour.points);
        CHECK(check_band_conditions(tour, seq, 1e-5).kinds[0] == TouchKind::Violation);
    }
}

TEST_CASE("two elastic bands on a non-convex pair")
{
    const VisitSequence seq = test::two_band_sequence();
    const BandTour left = elastic_improv(seq, std::vector<Point>{{-0.1, -0.2}, {-1.2, 0.6}});
    const BandTour right = elastic_improv(seq, std::vector<Point>{{0.1, -0.2}, {1.2, 0.6}});
    CHECK(check_band_conditions(left, seq, 1e-5).pass());
    CHECK(check_band_conditions(right, seq, 1e-5).pass());
    CHECK(std::abs(left.length - right.length) > 1e-3);
    CHECK(distance(left.points[1], right.points[1]) > 1.0);
}

TEST_CASE("optimal_tour_over_regions")
{
    SUBCASE("single region matches elastic_improv")
    {
        const std::vector<Polygon> regions{Polygon({{1, -1}, {1, 1}})};
        const OrderedBand best = optimal_tour_over_regions(Point(0, 0), regions);
        CHECK(best.order == std::vector<std::size_t>{0});
        CHECK(best.tour.length == doctest::Approx(elastic_improv({Point(0, 0), regions}).length));
    }
    SUBCASE("symmetric segments")
    {
        const std::vector<Polygon> regions{Polygon({{2, -1}, {2, 1}}), Polygon({{1, -1}, {1, 1}})};
        const OrderedBand best = optimal_tour_over_regions(Point(0, 0), regions);
        CHECK(best.tour.length == doctest::Approx(4.0).epsilon(1e-9));
        TourSearchOptions both;
        both.skip_reversals = false;
        CHECK(optimal_tour_over_regions(Point(0, 0), regions, both).tour.length == doctest::Approx(4.0).epsilon(1e-9));
    }
    SUBCASE("guard")
    {
        std::vector<Polygon> regions;
        for (int i = 0; i < 10; ++i) regions.push_back(Polygon({Point(i, 1)}));
        CHECK_THROWS_AS(optimal_tour_over_regions(Point(0, 0), regions), GuardViolation);
    }
    SUBCASE("filter")
    {
        const std::vector<Polygon> regions{Polygon({Point(1, 0)}), Polygon({Point(2, 0)}), Polygon({Point(1, 1)})};
        const OrderFilter first_is_two = [](std::span<const std::size_t> order) { return order[0] == 2; };
        const OrderedBand best = optimal_tour_over_regions(Point(0, 0), regions, {}, first_is_two);
        CHECK(best.order[0] == 2);
        const OrderFilter none = [](std::span<const std::size_t>) { return false; };
        CHECK_THROWS_AS(optimal_tour_over_regions(Point(0, 0), regions, {}, none), std::invalid_argument);
    }
    SUBCASE("random convex triangles match the sampling oracle over all orders")
    {
        Rng rng(19);
        for (int trial = 0; trial < 5; ++trial) {
            const VisitSequence seq = test::random_convex_sequence(rng, 3);
            const OrderedBand best = optimal_tour_over_regions(seq.depot, seq.regions);
            std::vector<std::size_t> order{0, 1, 2};
            double oracle = std::numeric_limits<double>::infinity();
            do {
                std::vector<Polygon> ordered;
                for (std::size_t i : order) ordered.push_back(seq.regions[i]);
                oracle = std::min(oracle, sampled_sequence_length(seq.depot, ordered, 2000));
            } while (std::next_permutation(order.begin(), order.end()));
            CHECK(std::abs(best.tour.length - oracle) <= 1e-3);
        }
    }
}

TEST_CASE("random_point_in stays inside")
{
    Rng rng(1);
    const Polygon l({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
    const Polygon seg({{0, 0}, {1, 1}});
    for (int i = 0; i < 500; ++i) {
        CHECK(contains(l, random_point_in(l, rng)));
        CHECK(contains(seg, random_point_in(seg, rng), 1e-9));
    }
}
