#include "ecte/tree.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace ecte {

Instance::Instance(Weight budget, std::span<const EdgeSpec> edges) : budget_(std::move(budget)) {
  if (budget_.sign() <= 0) throw InvalidInstance("budget must be positive, got " + budget_.str());
  if (edges.empty()) throw InvalidInstance("tree has no edges");

  // Raw ids in order of first appearance.
  std::unordered_map<std::string, std::size_t> raw_id;
  std::vector<std::string> raw_names;
  const auto intern = [&](const std::string& n) {
    auto [it, inserted] = raw_id.try_emplace(n, raw_names.size());
    if (inserted) raw_names.push_back(n);
    return it->second;
  };
  std::vector<std::optional<std::size_t>> raw_parent;
  std::vector<Weight> raw_weight;
  std::vector<std::vector<std::size_t>> raw_children;
  for (const auto& e : edges) {
    if (e.parent == e.child) throw InvalidInstance("self-loop at '" + e.parent + "'");
    if (e.weight.sign() <= 0) {
      throw InvalidInstance("edge " + e.parent + "-" + e.child + " has non-positive weight " + e.weight.str());
    }
    const auto p = intern(e.parent);
    const auto c = intern(e.child);
    raw_parent.resize(raw_names.size());
    raw_weight.resize(raw_names.size());
    raw_children.resize(raw_names.size());
    if (raw_parent[c]) throw InvalidInstance("duplicate child '" + e.child + "'");
    raw_parent[c] = p;
    raw_weight[c] = e.weight;
    raw_children[p].push_back(c);
  }
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < raw_names.size(); ++i) {
    if (!raw_parent[i]) roots.push_back(i);
  }
  if (roots.empty()) throw InvalidInstance("no root: every node appears as a child");
  if (roots.size() > 1) {
    throw InvalidInstance("multiple roots: '" + raw_names[roots[0]] + "' and '" + raw_names[roots[1]] + "'");
  }

  // Preorder relabelling.
  const std::size_t n = raw_names.size();
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<std::size_t> new_id(n, n);
  std::vector<std::size_t> stack{roots[0]};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    new_id[v] = order.size();
    order.push_back(v);
    const auto& ch = raw_children[v];
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  if (order.size() != n) throw InvalidInstance("edges contain a cycle not connected to the root");

  parent_.assign(n, node_at(0));
  children_.assign(n, {});
  parent_weight_.assign(n, Weight(0));
  depth_.assign(n, Weight(0));
  level_.assign(n, 0);
  subtree_weight_.assign(n, Weight(0));
  subtree_end_.assign(n, n);
  names_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto raw = order[i];
    names_[i] = raw_names[raw];
    by_name_.emplace(names_[i], node_at(i));
    for (auto c : raw_children[raw]) children_[i].push_back(node_at(new_id[c]));
    if (i > 0) {
      const auto p = new_id[*raw_parent[raw]];
      parent_[i] = node_at(p);
      parent_weight_[i] = raw_weight[raw];
      depth_[i] = depth_[p] + raw_weight[raw];
      level_[i] = level_[p] + 1;
    }
  }
  min_edge_ = parent_weight_[1];
  for (std::size_t i = n; i-- > 1;) {
    subtree_weight_[idx(parent_[i])] += subtree_weight_[i] + parent_weight_[i];
    min_edge_ = std::min(min_edge_, parent_weight_[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (children_[i].empty()) leaves_.push_back(node_at(i));
  }
  for (std::size_t i = n; i-- > 0;) {
    subtree_end_[i] = children_[i].empty() ? i + 1 : subtree_end_[idx(children_[i].back())];
    height_ = std::max(height_, depth_[i]);
  }
  half_budget_ = budget_ / Weight(2);
  if (height_ > half_budget_) {
    throw InvalidInstance("height " + height_.str() + " exceeds B/2 = " + half_budget_.str());
  }
}

NodeId Instance::lca(NodeId a, NodeId b) const {
  while (level(a) > level(b)) a = parent(a);
  while (level(b) > level(a)) b = parent(b);
  while (a != b) {
    a = parent(a);
    b = parent(b);
  }
  return a;
}

std::optional<NodeId> Instance::find(std::string_view name) const {
  const auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

NodeId Instance::at(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw UnknownNode(std::string(name));
}

std::vector<EdgeSpec> Instance::edges() const {
  std::vector<EdgeSpec> out;
  out.reserve(edge_count());
  for (std::size_t i = 1; i < size(); ++i) {
    out.push_back({names_[idx(parent_[i])], names_[i], parent_weight_[i]});
  }
  return out;
}

Instance Instance::with_budget(Weight budget) const {
  const auto e = edges();
  return Instance(std::move(budget), e);
}

namespace {

Instance extract(const Instance& tree, NodeId top, std::size_t first, Weight budget) {
  std::vector<EdgeSpec> edges;
  for (std::size_t i = first; i < tree.subtree_end(top); ++i) {
    const auto v = node_at(i);
    if (v == top) continue;
    edges.push_back({tree.name(tree.parent(v)), tree.name(v), tree.parent_weight(v)});
  }
  return Instance(std::move(budget), edges);
}

}  // namespace

Instance subtree_instance(const Instance& tree, NodeId v) {
  if (tree.is_leaf(v)) throw PreconditionFailed("subtree of leaf '" + tree.name(v) + "' has no edges");
  return extract(tree, v, idx(v), Weight(2) * potential(tree, v));
}

Instance edge_subtree_instance(const Instance& tree, NodeId lower) {
  if (tree.is_root(lower)) throw PreconditionFailed("the root has no parent edge");
  const auto upper = tree.parent(lower);
  std::vector<EdgeSpec> edges{{tree.name(upper), tree.name(lower), tree.parent_weight(lower)}};
  for (std::size_t i = idx(lower) + 1; i < tree.subtree_end(lower); ++i) {
    const auto v = node_at(i);
    edges.push_back({tree.name(tree.parent(v)), tree.name(v), tree.parent_weight(v)});
  }
  return Instance(Weight(2) * potential(tree, upper), edges);
}

Weight distance(const Instance& tree, NodeId u, NodeId v) {
  const auto a = tree.lca(u, v);
  return tree.depth(u) + tree.depth(v) - Weight(2) * tree.depth(a);
}

Weight potential(const Instance& tree, NodeId v) { return tree.half_budget() - tree.depth(v); }

std::vector<NodeId> root_path(const Instance& tree, NodeId v) {
  std::vector<NodeId> path;
  path.reserve(tree.level(v) + 1);
  for (;;) {
    path.push_back(v);
    if (tree.is_root(v)) break;
    v = tree.parent(v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<NodeId> tree_path(const Instance& tree, NodeId u, NodeId v) {
  const auto a = tree.lca(u, v);
  std::vector<NodeId> up;
  for (auto x = u; x != a; x = tree.parent(x)) up.push_back(x);
  up.push_back(a);
  std::vector<NodeId> down;
  for (auto x = v; x != a; x = tree.parent(x)) down.push_back(x);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

Heaviness classify(const Instance& tree) {
  const auto n = tree.size();
  Heaviness h{std::vector<bool>(n), std::vector<bool>(n, false), std::vector<std::size_t>(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = node_at(i);
    h.node_heavy[i] = tree.subtree_weight(v) > potential(tree, v);
    if (i > 0) {
      const auto up = tree.parent(v);
      const bool heavy = tree.subtree_weight(v) + tree.parent_weight(v) > potential(tree, up);
      h.edge_heavy[i] = heavy;
      if (heavy) ++h.heavydeg[idx(up)];
    }
  }
  return h;
}

namespace {

// Lower endpoint of the step a-b, or nullopt when a and b are not adjacent.
std::optional<NodeId> step_edge(const Instance& tree, NodeId a, NodeId b) {
  if (!tree.is_root(b) && tree.parent(b) == a) return b;
  if (!tree.is_root(a) && tree.parent(a) == b) return a;
  return std::nullopt;
}

void check_route_shape(const Instance& tree, const Route& route) {
  if (route.vertices.empty()) throw InvalidRoute("empty route");
  for (auto v : route.vertices) {
    if (idx(v) >= tree.size()) throw InvalidRoute("route mentions a node outside the tree");
  }
  if (route.vertices.front() != tree.root() || route.vertices.back() != tree.root()) {
    throw InvalidRoute("route must start and end at the root '" + tree.name(tree.root()) + "'");
  }
}

}  // namespace

Weight route_length(const Instance& tree, const Route& route) {
  check_route_shape(tree, route);
  Weight total;
  for (std::size_t i = 1; i < route.vertices.size(); ++i) {
    const auto e = step_edge(tree, route.vertices[i - 1], route.vertices[i]);
    if (!e) {
      throw InvalidRoute("'" + tree.name(route.vertices[i - 1]) + "' and '" + tree.name(route.vertices[i]) +
                         "' are not adjacent");
    }
    total += tree.parent_weight(*e);
  }
  return total;
}

Weight strategy_cost(const Instance& tree, const Strategy& strategy) {
  Weight total;
  for (const auto& r : strategy.routes) total += route_length(tree, r);
  return total;
}

Verdict validate_strategy(const Instance& tree, const Strategy& strategy) {
  for (std::size_t i = 0; i < strategy.routes.size(); ++i) {
    const auto len = route_length(tree, strategy.routes[i]);
    const auto& bound = (i == 0 && strategy.first_budget) ? *strategy.first_budget : tree.budget();
    if (len > bound) return Overlong{i, len - bound};
  }
  std::vector<bool> seen(tree.size(), false);
  for (const auto& r : strategy.routes) {
    // v_0 is excluded from "visited"; it equals v_l = root anyway.
    for (std::size_t i = 1; i < r.vertices.size(); ++i) seen[idx(r.vertices[i])] = true;
  }
  Uncovered missing;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    if (!seen[i]) missing.nodes.push_back(node_at(i));
  }
  if (!missing.nodes.empty()) return missing;
  return Feasible{};
}

void EdgeSet::insert_subtree(const Instance& tree, NodeId v) {
  for (std::size_t i = idx(v) + 1; i < tree.subtree_end(v); ++i) member_[i] = true;
}

void EdgeSet::insert_path(const Instance& tree, std::span<const NodeId> path) {
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (auto e = step_edge(tree, path[i - 1], path[i])) member_[idx(*e)] = true;
  }
}

Weight restricted_length(const Instance& tree, const Route& route, const EdgeSet& edges) {
  Weight total;
  for (std::size_t i = 1; i < route.vertices.size(); ++i) {
    const auto e = step_edge(tree, route.vertices[i - 1], route.vertices[i]);
    if (!e) throw InvalidRoute("non-adjacent step in route");
    if (edges.contains(*e)) total += tree.parent_weight(*e);
  }
  return total;
}

Weight restricted_cost(const Instance& tree, const Strategy& strategy, const EdgeSet& edges) {
  Weight total;
  for (const auto& r : strategy.routes) total += restricted_length(tree, r, edges);
  return total;
}

std::vector<bool> visited_nodes(const Instance& tree, const Route& route) {
  std::vector<bool> seen(tree.size(), false);
  for (auto v : route.vertices) seen[idx(v)] = true;
  return seen;
}

bool route_visits(const Route& route, NodeId v) {
  return std::find(route.vertices.begin(), route.vertices.end(), v) != route.vertices.end();
}

std::string format_route(const Instance& tree, const Route& route) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < route.vertices.size(); ++i) {
    if (i) os << ',';
    os << tree.name(route.vertices[i]);
  }
  os << ')';
  return os.str();
}

}  // namespace ecte
