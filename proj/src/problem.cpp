#include "cvrg/problem.hpp"

#include "cvrg/elastic.hpp"

#include <cmath>
#include <stdexcept>

namespace cvrg {

bool Workspace::contains(const Point& p, double tol) const
{
    return p.x() >= origin.x() - tol && p.y() >= origin.y() - tol && p.x() <= origin.x() + width + tol &&
           p.y() <= origin.y() + height + tol;
}

std::vector<double> Instance::weights() const
{
    std::vector<double> out;
    out.reserve(customers.size());
    for (const Customer& c : customers) out.push_back(c.weight);
    return out;
}

bool Instance::all_points() const
{
    for (const Customer& c : customers)
        if (!c.region.is_point()) return false;
    return true;
}

void check_instance(const Instance& instance)
{
    if (!is_finite(instance.depot)) throw std::invalid_argument("depot is not finite");
    if (instance.capacity != 1.0) throw std::invalid_argument("capacity must be 1");
    if (!(instance.workspace.width > 0.0 && instance.workspace.height > 0.0))
        throw std::invalid_argument("workspace must have positive size");
    if (!instance.workspace.contains(instance.depot)) throw std::invalid_argument("depot outside workspace");
    for (std::size_t i = 0; i < instance.customers.size(); ++i) {
        const Customer& c = instance.customers[i];
        const std::string where = "customer " + std::to_string(i) + ": ";
        if (!(c.weight > 0.0 && c.weight <= 1.0)) throw std::invalid_argument(where + "weight outside (0, 1]");
        if (c.region.size() == 0) throw std::invalid_argument(where + "empty region");
        for (const Point& v : c.region.vertices())
            if (!instance.workspace.contains(v)) throw std::invalid_argument(where + "region leaves the workspace");
    }
    if (instance.precedence.size() != 0 && instance.precedence.size() != instance.size())
        throw std::invalid_argument("precedence relation size does not match the customer count");
}

std::string_view to_string(SolverKind kind)
{
    switch (kind) {
    case SolverKind::DP: return "DP";
    case SolverKind::FH: return "FH";
    case SolverKind::GD: return "GD";
    case SolverKind::CENTROID: return "CENTROID";
    case SolverKind::ORACLE: return "ORACLE";
    }
    return "?";
}

std::optional<SolverKind> parse_solver_kind(std::string_view text)
{
    for (SolverKind k : {SolverKind::DP, SolverKind::FH, SolverKind::GD, SolverKind::CENTROID, SolverKind::ORACLE})
        if (to_string(k) == text) return k;
    return std::nullopt;
}

Tour make_tour(const Point& depot, std::vector<int> customer_ids, std::vector<Point> delivery_points)
{
    Tour t{std::move(customer_ids), std::move(delivery_points), 0.0};
    t.length = tour_length(depot, t.delivery_points);
    return t;
}

double total_length(std::span<const Tour> tours)
{
    double total = 0.0;
    for (const Tour& t : tours) total += t.length;
    return total;
}

ValidationReport validate(const Instance& instance, const Solution& solution, double cost_tol)
{
    ValidationReport report;
    auto issue = [&](std::optional<int> tour, std::optional<int> customer, std::string message) {
        report.issues.push_back({tour, customer, std::move(message)});
    };

    const int n = instance.size();
    std::vector<int> tour_of(static_cast<std::size_t>(n), -1);
    std::vector<int> position(static_cast<std::size_t>(n), -1);
    double total = 0.0;
    for (std::size_t ti = 0; ti < solution.tours.size(); ++ti) {
        const int t = static_cast<int>(ti);
        const Tour& tour = solution.tours[ti];
        if (tour.customer_ids.size() != tour.delivery_points.size()) {
            issue(t, std::nullopt, "customer and delivery point counts differ");
            continue;
        }
        if (tour.customer_ids.empty()) issue(t, std::nullopt, "empty tour");
        double load = 0.0;
        for (std::size_t j = 0; j < tour.customer_ids.size(); ++j) {
            const int c = tour.customer_ids[j];
            if (c < 0 || c >= n) {
                issue(t, c, "unknown customer");
                continue;
            }
            if (tour_of[static_cast<std::size_t>(c)] >= 0) {
                issue(t, c, "customer served by more than one visit (also tour " +
                                std::to_string(tour_of[static_cast<std::size_t>(c)]) + ")");
                continue;
            }
            tour_of[static_cast<std::size_t>(c)] = t;
            position[static_cast<std::size_t>(c)] = static_cast<int>(j);
            load += instance.customers[static_cast<std::size_t>(c)].weight;
            if (!contains(instance.customers[static_cast<std::size_t>(c)].region, tour.delivery_points[j],
                          kMembershipTol))
                issue(t, c, "delivery point outside the customer region");
        }
        if (load > instance.capacity + 1e-12) issue(t, std::nullopt, "load exceeds capacity");
        const double length = tour_length(instance.depot, tour.delivery_points);
        if (std::abs(length - tour.length) > cost_tol) issue(t, std::nullopt, "recorded tour length does not match");
        total += length;
    }
    for (int c = 0; c < n; ++c)
        if (tour_of[static_cast<std::size_t>(c)] < 0) issue(std::nullopt, c, "customer not served");

    for (const auto& [above, below] : instance.precedence.edges()) {
        const int ta = tour_of[static_cast<std::size_t>(above)];
        const int tb = tour_of[static_cast<std::size_t>(below)];
        if (ta < 0 || tb < 0) continue;
        const bool ok = ta < tb || (ta == tb && position[static_cast<std::size_t>(above)] <
                                                    position[static_cast<std::size_t>(below)]);
        if (!ok)
            issue(tb, below, "served before customer " + std::to_string(above) + " that lies above it");
    }
    if (std::abs(total - solution.total_cost) > cost_tol) issue(std::nullopt, std::nullopt, "total cost does not match");
    return report;
}

}  // namespace cvrg
