#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ecte/tree.hpp"

namespace ecte {

inline constexpr std::size_t kOptimumLeafCap = 10;
inline constexpr std::size_t kEnumerationLeafCap = 5;

/// Weight of the minimal subtree spanning the root and `targets`.
Weight steiner_weight(const Instance& tree, std::span<const NodeId> targets);

/// An exact optimum found by searching partitions of the leaf set.
///
/// Any closed walk from the root that visits a set S has length at least
/// 2 * steiner_weight(S), and the Steiner walk attains it, so a strategy is
/// determined (up to cost) by which leaves each route covers.
struct OptimalSolution {
  Weight cost;
  std::size_t routes = 0;
  std::vector<std::vector<NodeId>> groups;
  Strategy witness;
};

/// Minimum total cost. Ties go to the first partition in restricted-growth
/// order. Throws CapExceeded above `leaf_cap` leaves.
OptimalSolution opt_cost(const Instance& tree, std::size_t leaf_cap = kOptimumLeafCap);
/// Minimum route count; ties broken by lower cost, then restricted-growth order.
OptimalSolution opt_routes(const Instance& tree, std::size_t leaf_cap = kOptimumLeafCap);

/// A leaf sequence plus an end anchor: root -> l_1 -> ... -> l_p -> anchor -> root.
struct PotentialRoute {
  std::vector<NodeId> leaves;
  NodeId anchor{};
  friend bool operator==(const PotentialRoute&, const PotentialRoute&) = default;
};

struct PotentialStrategy {
  std::vector<PotentialRoute> routes;
};

/// Throws InvalidRoute if the sequence is empty or names a non-leaf.
Route translate_potential_route(const Instance& tree, const PotentialRoute& route);
/// d(r,l_1) + Σ d(l_i,l_{i+1}) + d(l_p,anchor) + d(anchor,r).
Weight potential_route_length(const Instance& tree, const PotentialRoute& route);
Strategy translate_potential_strategy(const Instance& tree, const PotentialStrategy& strategy,
                                      std::optional<Weight> first_budget = std::nullopt);

/// Every non-empty sequence of distinct leaves, shorter sequences first.
std::vector<std::vector<NodeId>> leaf_sequences(const Instance& tree, std::size_t leaf_cap = kEnumerationLeafCap);

struct CatalogEntry {
  PotentialRoute route;
  Weight length;
  std::uint32_t leaf_mask = 0;  // bit i: i-th leaf in preorder is visited
};

/// All potential routes over distinct-leaf sequences and every anchor.
std::vector<CatalogEntry> potential_route_catalog(const Instance& tree, std::size_t leaf_cap = kEnumerationLeafCap);

using StrategyVisitor = std::function<bool(const PotentialStrategy&, const Verdict&)>;

/// Streams every potential strategy of 1..max_routes routes (catalog order,
/// shorter strategies first) with its feasibility verdict. The visitor
/// returns false to stop. Returns the number of strategies visited.
std::size_t enumerate_potential_strategies(const Instance& tree, std::size_t max_routes, const StrategyVisitor& visit,
                                           std::optional<Weight> first_budget = std::nullopt,
                                           std::size_t leaf_cap = kEnumerationLeafCap);

/// Minimum cost over all feasible potential strategies with at most
/// leaf-count routes, computed by covering the leaf set with catalog routes.
Weight min_potential_strategy_cost(const Instance& tree, std::size_t leaf_cap = kEnumerationLeafCap);

}  // namespace ecte
