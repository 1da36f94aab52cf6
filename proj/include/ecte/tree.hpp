#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ecte/error.hpp"
#include "ecte/weight.hpp"

namespace ecte {

enum class NodeId : std::uint32_t {};

constexpr std::size_t idx(NodeId v) { return static_cast<std::size_t>(v); }
constexpr NodeId node_at(std::size_t i) { return static_cast<NodeId>(i); }

/// One `parent child weight` edge as it appears in an instance file.
struct EdgeSpec {
  std::string parent;
  std::string child;
  Weight weight;
};

/// An edge-weighted rooted tree with a route budget B.
///
/// Nodes are dense ids in preorder of the stored child order, so the root is
/// always id 0 and every subtree occupies a contiguous id interval. Names are
/// opaque tokens kept for I/O. Edges are identified by their lower endpoint.
/// Immutable once built.
class Instance {
 public:
  /// Throws InvalidInstance unless the edges form a tree with a unique root,
  /// every weight is > 0, budget > 0 and height <= budget/2. The stricter
  /// B > 1 requirement of the exploration problem is enforced by the parser
  /// and generators; derived sub-instances only need B > 0.
  Instance(Weight budget, std::span<const EdgeSpec> edges);

  std::size_t size() const { return parent_.size(); }
  std::size_t edge_count() const { return size() - 1; }
  NodeId root() const { return node_at(0); }
  const Weight& budget() const { return budget_; }
  const Weight& half_budget() const { return half_budget_; }

  bool is_root(NodeId v) const { return idx(v) == 0; }
  /// Parent of a non-root node.
  NodeId parent(NodeId v) const { return parent_[idx(v)]; }
  std::span<const NodeId> children(NodeId v) const { return children_[idx(v)]; }
  bool is_leaf(NodeId v) const { return children_[idx(v)].empty(); }
  /// Weight of the edge above `v`; zero for the root.
  const Weight& parent_weight(NodeId v) const { return parent_weight_[idx(v)]; }
  /// d(root, v).
  const Weight& depth(NodeId v) const { return depth_[idx(v)]; }
  std::size_t level(NodeId v) const { return level_[idx(v)]; }
  /// ω(T_v).
  const Weight& subtree_weight(NodeId v) const { return subtree_weight_[idx(v)]; }
  const Weight& total_weight() const { return subtree_weight_[0]; }
  /// One past the last id in v's subtree.
  std::size_t subtree_end(NodeId v) const { return subtree_end_[idx(v)]; }
  bool is_ancestor_or_self(NodeId a, NodeId d) const {
    return idx(a) <= idx(d) && idx(d) < subtree_end_[idx(a)];
  }
  NodeId lca(NodeId a, NodeId b) const;

  const std::string& name(NodeId v) const { return names_[idx(v)]; }
  std::optional<NodeId> find(std::string_view name) const;
  /// Throws UnknownNode.
  NodeId at(std::string_view name) const;

  /// Leaves in preorder.
  const std::vector<NodeId>& leaves() const { return leaves_; }
  const Weight& height() const { return height_; }
  const Weight& min_edge_weight() const { return min_edge_; }

  /// Edges in preorder: the canonical serialization order.
  std::vector<EdgeSpec> edges() const;

  /// Same tree with a different budget (still subject to the height check).
  Instance with_budget(Weight budget) const;

 private:
  Weight budget_;
  Weight half_budget_;
  std::vector<NodeId> parent_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<Weight> parent_weight_;
  std::vector<Weight> depth_;
  std::vector<std::size_t> level_;
  std::vector<Weight> subtree_weight_;
  std::vector<std::size_t> subtree_end_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> by_name_;
  std::vector<NodeId> leaves_;
  Weight height_;
  Weight min_edge_;
};

/// T_v: the subtree rooted at v, with budget 2φ(v).
Instance subtree_instance(const Instance& tree, NodeId v);
/// T_e for the edge above `lower`: that edge plus T_lower, rooted at the
/// higher endpoint, with budget 2φ(higher endpoint).
Instance edge_subtree_instance(const Instance& tree, NodeId lower);

Weight distance(const Instance& tree, NodeId u, NodeId v);
/// φ(v) = B/2 - d(r, v).
Weight potential(const Instance& tree, NodeId v);

/// Root-to-v vertex sequence.
std::vector<NodeId> root_path(const Instance& tree, NodeId v);
/// The unique u-v walk, both endpoints included.
std::vector<NodeId> tree_path(const Instance& tree, NodeId u, NodeId v);

struct Heaviness {
  std::vector<bool> node_heavy;       // ω(T_v) > φ(v)
  std::vector<bool> edge_heavy;       // by lower endpoint: ω(T_e) > φ(higher endpoint)
  std::vector<std::size_t> heavydeg;  // heavy downward edges per node

  bool tree_heavy() const { return node_heavy.front(); }
  bool heavy(NodeId v) const { return node_heavy[idx(v)]; }
  bool heavy_edge(NodeId lower) const { return edge_heavy[idx(lower)]; }
  std::size_t degree(NodeId v) const { return heavydeg[idx(v)]; }
};

Heaviness classify(const Instance& tree);

/// A closed walk from the root. Validity is checked by the functions that
/// consume it, against a particular tree.
struct Route {
  std::vector<NodeId> vertices;
  friend bool operator==(const Route&, const Route&) = default;
};

struct Strategy {
  std::vector<Route> routes;
  /// B' for the first route in adversarial mode.
  std::optional<Weight> first_budget;
  friend bool operator==(const Strategy&, const Strategy&) = default;
};

/// Throws InvalidRoute on a non-adjacent step or non-root endpoints.
Weight route_length(const Instance& tree, const Route& route);
Weight strategy_cost(const Instance& tree, const Strategy& strategy);

struct Feasible {};
struct Overlong {
  std::size_t route;
  Weight excess;
};
struct Uncovered {
  std::vector<NodeId> nodes;  // increasing id order
};
using Verdict = std::variant<Feasible, Overlong, Uncovered>;

inline bool is_feasible(const Verdict& v) { return std::holds_alternative<Feasible>(v); }

/// Length bounds are checked before coverage; the first overlong route wins.
Verdict validate_strategy(const Instance& tree, const Strategy& strategy);

/// Edge subset keyed by lower endpoint.
class EdgeSet {
 public:
  explicit EdgeSet(const Instance& tree) : member_(tree.size(), false) {}
  void insert(NodeId lower) { member_[idx(lower)] = true; }
  bool contains(NodeId lower) const { return member_[idx(lower)]; }
  void insert_subtree(const Instance& tree, NodeId v);  // all edges below v
  void insert_path(const Instance& tree, std::span<const NodeId> path);

 private:
  std::vector<bool> member_;
};

/// Total weight of traversals of `edges`, every traversal counted.
Weight restricted_cost(const Instance& tree, const Strategy& strategy, const EdgeSet& edges);
Weight restricted_length(const Instance& tree, const Route& route, const EdgeSet& edges);

/// Nodes visited by a route as a membership vector.
std::vector<bool> visited_nodes(const Instance& tree, const Route& route);
bool route_visits(const Route& route, NodeId v);

std::string format_route(const Instance& tree, const Route& route);

}  // namespace ecte
