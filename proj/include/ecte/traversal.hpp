#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ecte/tree.hpp"

namespace ecte {

/// Children in the order the instance stores them (file order).
struct FileOrder {};
/// Children sorted by node name.
struct LexicographicOrder {};
/// Each child list shuffled with a seeded mt19937_64 (see dfs_tour).
struct SeededRandomOrder {
  std::uint64_t seed = 0;
};
/// Per-node child order; nodes absent from the map keep file order.
struct ExplicitOrder {
  std::map<NodeId, std::vector<NodeId>> order;
};

using ChildOrder = std::variant<FileOrder, LexicographicOrder, SeededRandomOrder, ExplicitOrder>;

std::string describe(const ChildOrder& policy);

/// A depth first Euler tour (v_0, ..., v_l) with its prefix lengths.
struct EulerTour {
  std::vector<NodeId> vertices;
  /// prefix[p] = length of (v_0, ..., v_p).
  std::vector<Weight> prefix;
  std::string policy;

  std::size_t last_index() const { return vertices.size() - 1; }
  const Weight& length() const { return prefix.back(); }
};

/// Throws PreconditionFailed when an explicit order is not a permutation of
/// the node's children.
EulerTour dfs_tour(const Instance& tree, const ChildOrder& policy = FileOrder{});

/// Builds the tour of an explicit vertex sequence after checking that it is a
/// depth first traversal of `tree`. Throws InvalidRoute otherwise.
EulerTour tour_from_vertices(const Instance& tree, std::vector<NodeId> vertices, std::string policy);

/// The tour of `sub` (an instance whose nodes are named like nodes of
/// `tree`) obtained by dropping foreign vertices and collapsing repeats.
/// Used to evaluate subtree instances under the parent tour's child order.
EulerTour project_tour(const Instance& tree, const EulerTour& tour, const Instance& sub);

/// The depth first walk of the minimal subtree spanning the root and
/// `targets`, children in file order. Length is 2 * steiner weight.
Route steiner_route(const Instance& tree, std::span<const NodeId> targets);

/// First-visit order of the nodes in a walk.
std::vector<NodeId> preorder_of(std::span<const NodeId> walk, std::size_t node_count);

}  // namespace ecte
