#pragma once

#include "cvrg/problem.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace cvrg {

enum class Placement { UNIFORM, GAUSSIAN, INV_GAUSSIAN };
/// FULL = (0, 1], LOWER = [1/k, 1], BAND = [1/k, 2/k].
enum class WeightRegime { FULL, LOWER, BAND };
enum class RegionKind { POINT, SEGMENT, CONVEX_POLY, NONCONVEX_POLY };

std::string_view to_string(Placement p);
std::string_view to_string(WeightRegime w);
std::string_view to_string(RegionKind r);
std::optional<Placement> parse_placement(std::string_view text);
std::optional<WeightRegime> parse_weight_regime(std::string_view text);
std::optional<RegionKind> parse_region_kind(std::string_view text);

struct GenSpec {
    int n = 10;
    Placement placement = Placement::UNIFORM;
    WeightRegime weights = WeightRegime::FULL;
    int k = 7;
    RegionKind region = RegionKind::POINT;
    double workspace_side = 10.0;
    std::uint64_t seed = 0;
};

/// Smallest weight drawn in the FULL regime.
inline constexpr double kMinFullWeight = 1e-6;
/// Attempts per region before generation gives up.
inline constexpr int kMaxPlacementAttempts = 10'000;

/// Throws std::invalid_argument for n < 1, k < 2 or a non-positive side.
void check_gen_spec(const GenSpec& spec);

/// Weight interval of a regime for a given k.
std::pair<double, double> weight_range(WeightRegime regime, int k);

/// Deterministic random instance. Weights are drawn first, then region centers:
/// uniform over the workspace, or from a normal around the center
/// (sigma = side / 6) with heavier weights matched to nearer centers
/// (GAUSSIAN) or farther ones (INV_GAUSSIAN). Region diameters are at most
/// side / 10 and every region lies inside the workspace; the depot is the
/// workspace center. Throws std::runtime_error when a region cannot be placed
/// within kMaxPlacementAttempts.
Instance generate(const GenSpec& spec);

/// Power of two used as the 3-Partition bin size, so weights and their sums are exact.
inline constexpr std::int64_t kThreePartitionBin = std::int64_t{1} << 20;

/// YES-instance of 3-Partition turned into a CVRP: depot (0, 0) and 3m point
/// customers in the epsilon-ball around (1, 0) with weights a_i / B, where each
/// consecutive triple sums to B and every a_i lies in (B/4, B/2).
Instance gen_3partition_family(int m, double epsilon, std::uint64_t seed);

}  // namespace cvrg
