#pragma once

#include "cvrg/geom.hpp"
#include "cvrg/routing.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cvrg {

/// Axis-aligned workspace box.
struct Workspace {
    Point origin = Point::Zero();
    double width = 1.0;
    double height = 1.0;

    bool contains(const Point& p, double tol = kGeomTol) const;
    bool operator==(const Workspace&) const = default;
};

struct Customer {
    Polygon region;
    double weight = 0.0;
    bool operator==(const Customer&) const = default;
};

/// Capacity is normalized to 1; weights lie in (0, 1].
struct Instance {
    Point depot = Point::Zero();
    std::vector<Customer> customers;
    double capacity = 1.0;
    PrecedenceDag precedence;
    Workspace workspace;
    /// Generator parameters echoed into the instance file (sorted by key).
    std::map<std::string, std::string> provenance;

    int size() const { return static_cast<int>(customers.size()); }
    std::vector<double> weights() const;
    bool has_precedence() const { return !precedence.empty(); }
    bool all_points() const;
    bool operator==(const Instance&) const = default;
};

/// Throws std::invalid_argument when weights, capacity, regions or the DAG
/// violate the instance invariants.
void check_instance(const Instance& instance);

struct Tour {
    std::vector<int> customer_ids;
    std::vector<Point> delivery_points;
    double length = 0.0;
    bool operator==(const Tour&) const = default;
};

enum class SolverKind { DP, FH, GD, CENTROID, ORACLE };

std::string_view to_string(SolverKind kind);
std::optional<SolverKind> parse_solver_kind(std::string_view text);

struct SolveStats {
    double runtime_seconds = 0.0;
    std::uint64_t subsets_evaluated = 0;
    std::uint64_t sweeps = 0;
    /// Stage-1 cost of the centroid pipeline, before elastic refinement.
    std::optional<double> unrefined_cost;
    bool operator==(const SolveStats&) const = default;
};

/// Tours listed in execution order.
struct Solution {
    std::vector<Tour> tours;
    double total_cost = 0.0;
    SolverKind solver = SolverKind::DP;
    SolveStats stats;
    bool operator==(const Solution&) const = default;
};

/// Builds a Tour and sets its length from the delivery points.
Tour make_tour(const Point& depot, std::vector<int> customer_ids, std::vector<Point> delivery_points);

/// Sum of tour lengths in tour order.
double total_length(std::span<const Tour> tours);

struct ValidationIssue {
    std::optional<int> tour;
    std::optional<int> customer;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

/// Checks coverage, capacity, region membership, precedence order and the
/// recorded lengths/total against recomputation within `cost_tol`.
ValidationReport validate(const Instance& instance, const Solution& solution, double cost_tol = 1e-6);

}  // namespace cvrg
