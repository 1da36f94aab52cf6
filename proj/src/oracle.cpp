#include "ecte/oracle.hpp"

#include <algorithm>

#include "ecte/traversal.hpp"

namespace ecte {

Weight steiner_weight(const Instance& tree, std::span<const NodeId> targets) {
  std::vector<bool> marked(tree.size(), false);
  marked[0] = true;
  Weight total;
  for (auto t : targets) {
    for (auto v = t; !marked[idx(v)]; v = tree.parent(v)) {
      marked[idx(v)] = true;
      total += tree.parent_weight(v);
    }
  }
  return total;
}

namespace {

void check_leaf_cap(const Instance& tree, std::size_t cap) {
  if (tree.leaves().size() > cap) {
    throw CapExceeded("instance has " + std::to_string(tree.leaves().size()) + " leaves; cap is " +
                      std::to_string(cap));
  }
}

// Steiner weight of every leaf subset, indexed by bitmask over preorder leaves.
std::vector<Weight> subset_steiner_weights(const Instance& tree) {
  const auto& leaves = tree.leaves();
  const std::size_t count = std::size_t{1} << leaves.size();
  std::vector<Weight> weights(count);
  std::vector<NodeId> members;
  for (std::size_t mask = 1; mask < count; ++mask) {
    members.clear();
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (mask & (std::size_t{1} << i)) members.push_back(leaves[i]);
    }
    weights[mask] = steiner_weight(tree, members);
  }
  return weights;
}

enum class Objective { cost, routes };

// Depth first search over restricted-growth strings: leaf i joins one of the
// existing groups or opens the next one. Steiner weight only grows as a group
// grows, so infeasible or dominated branches can be cut.
class PartitionSearch {
 public:
  PartitionSearch(const Instance& tree, Objective objective)
      : tree_(tree), objective_(objective), weights_(subset_steiner_weights(tree)) {
    const auto& b = tree.budget();
    feasible_.resize(weights_.size());
    for (std::size_t m = 0; m < weights_.size(); ++m) feasible_[m] = Weight(2) * weights_[m] <= b;
  }

  OptimalSolution run() {
    search(0, Weight(0));
    OptimalSolution out;
    out.cost = best_cost_;
    out.routes = best_groups_.size();
    for (auto mask : best_groups_) {
      std::vector<NodeId> group;
      for (std::size_t i = 0; i < tree_.leaves().size(); ++i) {
        if (mask & (std::size_t{1} << i)) group.push_back(tree_.leaves()[i]);
      }
      out.witness.routes.push_back(steiner_route(tree_, group));
      out.groups.push_back(std::move(group));
    }
    return out;
  }

 private:
  bool dominated(std::size_t groups, const Weight& partial) const {
    if (!found_) return false;
    if (objective_ == Objective::cost) return partial >= best_cost_;
    return groups > best_groups_.size() || (groups == best_groups_.size() && partial >= best_cost_);
  }

  void search(std::size_t leaf, const Weight& partial) {
    if (leaf == tree_.leaves().size()) {
      found_ = true;
      best_cost_ = partial;
      best_groups_ = groups_;
      return;
    }
    const std::size_t bit = std::size_t{1} << leaf;
    for (std::size_t g = 0; g <= groups_.size(); ++g) {
      const bool fresh = g == groups_.size();
      const std::size_t old_mask = fresh ? 0 : groups_[g];
      const std::size_t new_mask = old_mask | bit;
      if (!feasible_[new_mask]) continue;
      Weight next = partial + Weight(2) * (weights_[new_mask] - weights_[old_mask]);
      const std::size_t count = groups_.size() + (fresh ? 1 : 0);
      if (dominated(count, next)) continue;
      if (fresh) {
        groups_.push_back(new_mask);
      } else {
        groups_[g] = new_mask;
      }
      search(leaf + 1, next);
      if (fresh) {
        groups_.pop_back();
      } else {
        groups_[g] = old_mask;
      }
    }
  }

  const Instance& tree_;
  Objective objective_;
  std::vector<Weight> weights_;
  std::vector<bool> feasible_;
  std::vector<std::size_t> groups_;
  bool found_ = false;
  Weight best_cost_;
  std::vector<std::size_t> best_groups_;
};

}  // namespace

OptimalSolution opt_cost(const Instance& tree, std::size_t leaf_cap) {
  check_leaf_cap(tree, leaf_cap);
  return PartitionSearch(tree, Objective::cost).run();
}

OptimalSolution opt_routes(const Instance& tree, std::size_t leaf_cap) {
  check_leaf_cap(tree, leaf_cap);
  return PartitionSearch(tree, Objective::routes).run();
}

Route translate_potential_route(const Instance& tree, const PotentialRoute& route) {
  if (route.leaves.empty()) throw InvalidRoute("potential route needs at least one leaf");
  for (auto l : route.leaves) {
    if (idx(l) >= tree.size() || !tree.is_leaf(l)) throw InvalidRoute("potential route names a non-leaf");
  }
  if (idx(route.anchor) >= tree.size()) throw InvalidRoute("potential route anchor outside the tree");
  Route out;
  out.vertices.push_back(tree.root());
  const auto extend = [&](NodeId from, NodeId to) {
    const auto path = tree_path(tree, from, to);
    out.vertices.insert(out.vertices.end(), path.begin() + 1, path.end());
  };
  NodeId at = tree.root();
  for (auto l : route.leaves) {
    extend(at, l);
    at = l;
  }
  extend(at, route.anchor);
  extend(route.anchor, tree.root());
  return out;
}

Weight potential_route_length(const Instance& tree, const PotentialRoute& route) {
  Weight total;
  NodeId at = tree.root();
  for (auto l : route.leaves) {
    total += distance(tree, at, l);
    at = l;
  }
  total += distance(tree, at, route.anchor);
  total += tree.depth(route.anchor);
  return total;
}

Strategy translate_potential_strategy(const Instance& tree, const PotentialStrategy& strategy,
                                      std::optional<Weight> first_budget) {
  Strategy out;
  out.first_budget = std::move(first_budget);
  for (const auto& r : strategy.routes) out.routes.push_back(translate_potential_route(tree, r));
  return out;
}

std::vector<std::vector<NodeId>> leaf_sequences(const Instance& tree, std::size_t leaf_cap) {
  check_leaf_cap(tree, leaf_cap);
  const auto& leaves = tree.leaves();
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> current;
  std::vector<bool> used(leaves.size(), false);
  for (std::size_t length = 1; length <= leaves.size(); ++length) {
    const std::function<void()> extend = [&] {
      if (current.size() == length) {
        out.push_back(current);
        return;
      }
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        current.push_back(leaves[i]);
        extend();
        current.pop_back();
        used[i] = false;
      }
    };
    extend();
  }
  return out;
}

std::vector<CatalogEntry> potential_route_catalog(const Instance& tree, std::size_t leaf_cap) {
  const auto sequences = leaf_sequences(tree, leaf_cap);
  std::vector<std::uint32_t> leaf_bit(tree.size(), 0);
  for (std::size_t i = 0; i < tree.leaves().size(); ++i) leaf_bit[idx(tree.leaves()[i])] = 1u << i;
  std::vector<CatalogEntry> out;
  out.reserve(sequences.size() * tree.size());
  for (const auto& seq : sequences) {
    std::uint32_t mask = 0;
    for (auto l : seq) mask |= leaf_bit[idx(l)];
    for (std::size_t a = 0; a < tree.size(); ++a) {
      PotentialRoute route{seq, node_at(a)};
      auto length = potential_route_length(tree, route);
      out.push_back({std::move(route), std::move(length), mask | leaf_bit[a]});
    }
  }
  return out;
}

std::size_t enumerate_potential_strategies(const Instance& tree, std::size_t max_routes, const StrategyVisitor& visit,
                                           std::optional<Weight> first_budget, std::size_t leaf_cap) {
  const auto catalog = potential_route_catalog(tree, leaf_cap);
  std::size_t visited = 0;
  PotentialStrategy current;
  bool stop = false;
  for (std::size_t count = 1; count <= max_routes && !stop; ++count) {
    const std::function<void()> extend = [&] {
      if (stop) return;
      if (current.routes.size() == count) {
        ++visited;
        const auto verdict = validate_strategy(tree, translate_potential_strategy(tree, current, first_budget));
        if (!visit(current, verdict)) stop = true;
        return;
      }
      for (const auto& entry : catalog) {
        current.routes.push_back(entry.route);
        extend();
        current.routes.pop_back();
        if (stop) return;
      }
    };
    extend();
  }
  return visited;
}

Weight min_potential_strategy_cost(const Instance& tree, std::size_t leaf_cap) {
  const auto catalog = potential_route_catalog(tree, leaf_cap);
  const std::size_t leaves = tree.leaves().size();
  const std::size_t full = (std::size_t{1} << leaves) - 1;
  // cheapest feasible route per exact coverage class
  std::vector<std::optional<Weight>> cheapest(full + 1);
  for (const auto& e : catalog) {
    if (e.length > tree.budget()) continue;
    auto& slot = cheapest[e.leaf_mask];
    if (!slot || e.length < *slot) slot = e.length;
  }
  // cover[m]: cheapest collection of at most k routes whose union contains m
  std::vector<std::optional<Weight>> cover(full + 1);
  cover[0] = Weight(0);
  for (std::size_t k = 1; k <= leaves; ++k) {
    auto next = cover;
    for (std::size_t m = 1; m <= full; ++m) {
      for (std::size_t c = 1; c <= full; ++c) {
        if (!cheapest[c] || (c & m) == 0) continue;
        const auto& rest = cover[m & ~c];
        if (!rest) continue;
        Weight candidate = *rest + *cheapest[c];
        if (!next[m] || candidate < *next[m]) next[m] = std::move(candidate);
      }
    }
    cover = std::move(next);
  }
  if (!cover[full]) throw PreconditionFailed("no feasible potential strategy");
  return *cover[full];
}

}  // namespace ecte
