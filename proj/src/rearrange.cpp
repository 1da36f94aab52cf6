#include "ecte/rearrange.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "ecte/piecemeal.hpp"
#include "ecte/traversal.hpp"

namespace ecte {

std::optional<NodeId> skinny_violation(const Instance& tree) {
  const auto heavy = classify(tree);
  if (heavy.degree(tree.root()) != 1) return std::nullopt;
  auto v = tree.root();
  while (heavy.degree(v) == 1) {
    NodeId next{};
    std::size_t light = 0;
    for (auto c : tree.children(v)) {
      if (heavy.heavy_edge(c)) {
        next = c;
      } else {
        ++light;
      }
    }
    if (light > 1) return v;
    v = next;
  }
  return std::nullopt;
}

NodeId RearrangeResult::original_ancestor(const Instance& original, NodeId v) const {
  while (!original.find(tree.name(v))) v = tree.parent(v);
  return original.at(tree.name(v));
}

namespace {

class Builder {
 public:
  Builder(const Instance& tree, const Weight& eps, RearrangeResult& out)
      : tree_(tree), eps_(eps), heavy_(classify(tree)), out_(out) {
    for (std::size_t i = 0; i < tree.size(); ++i) names_.insert(tree.name(node_at(i)));
  }

  void emit(NodeId u) {
    const auto children = tree_.children(u);
    std::vector<NodeId> lights;
    std::optional<NodeId> heavy_child;
    for (auto c : children) {
      if (heavy_.heavy_edge(c)) {
        heavy_child = c;
      } else {
        lights.push_back(c);
      }
    }
    if (heavy_.degree(u) != 1 || lights.size() < 2) {
      for (auto c : children) edge(tree_.name(u), c, tree_.parent_weight(c));
      for (auto c : children) emit(c);
      return;
    }
    split(u, *heavy_child, lights);
    for (auto c : children) emit(c);
  }

  std::vector<EdgeSpec> edges;

 private:
  void edge(const std::string& parent, NodeId child, const Weight& w) {
    edges.push_back({parent, tree_.name(child), w});
  }

  std::string fresh(const std::string& base) {
    auto name = base;
    while (names_.contains(name)) name += '\'';
    names_.insert(name);
    return name;
  }

  void split(NodeId u, NodeId v, const std::vector<NodeId>& lights) {
    out_.processed.push_back(tree_.name(u));
    // Pre-lights top-down in order, post-lights bottom-up.
    std::vector<NodeId> order;
    std::vector<bool> before;
    for (auto c : lights) {
      if (idx(c) < idx(v)) {
        order.push_back(c);
        before.push_back(true);
      }
    }
    std::vector<NodeId> post;
    for (auto c : lights) {
      if (idx(c) > idx(v)) post.push_back(c);
    }
    for (auto it = post.rbegin(); it != post.rend(); ++it) {
      order.push_back(*it);
      before.push_back(false);
    }
    const std::size_t d = order.size();
    std::vector<std::string> path{tree_.name(u)};
    for (std::size_t i = 1; i < d; ++i) {
      path.push_back(fresh(tree_.name(u) + "~" + std::to_string(i)));
      out_.subdivisions.push_back(path.back());
    }
    const Weight step = eps_ / Weight(d - 1);
    for (std::size_t i = 0; i < d; ++i) {
      const Weight light_weight = tree_.parent_weight(order[i]) - eps_;
      const bool last = i + 1 == d;
      const auto push_continuation = [&] {
        if (last) {
          edge(path[i], v, tree_.parent_weight(v) - eps_);
        } else {
          edges.push_back({path[i], path[i + 1], step});
        }
      };
      if (!before[i]) push_continuation();
      edge(path[i], order[i], light_weight);
      out_.moved.push_back({tree_.name(order[i]), path[i], light_weight});
      if (before[i]) push_continuation();
    }
  }

  const Instance& tree_;
  const Weight& eps_;
  Heaviness heavy_;
  RearrangeResult& out_;
  std::unordered_set<std::string> names_;
};

}  // namespace

RearrangeResult build_t_prime(const Instance& tree, const Weight& epsilon) {
  if (epsilon.sign() <= 0 || epsilon >= tree.min_edge_weight()) {
    throw PreconditionFailed("epsilon " + epsilon.str() + " outside (0, " + tree.min_edge_weight().str() + ")");
  }
  RearrangeResult out{tree, epsilon, {}, {}, {}};
  Builder builder(tree, epsilon, out);
  builder.emit(tree.root());
  if (out.changed()) out.tree = Instance(tree.budget(), builder.edges);
  return out;
}

Weight deficiency(const Instance& tree, const PotentialStrategy& strategy, const std::optional<Weight>& first_budget) {
  std::optional<Weight> worst;
  for (std::size_t i = 0; i < strategy.routes.size(); ++i) {
    const auto& bound = (i == 0 && first_budget) ? *first_budget : tree.budget();
    auto excess = potential_route_length(tree, strategy.routes[i]) - bound;
    if (!worst || excess > *worst) worst = std::move(excess);
  }
  if (!worst || worst->sign() <= 0) throw PreconditionFailed("no route exceeds its bound; deficiency undefined");
  return *worst;
}

std::vector<Weight> first_route_bounds(const Instance& tree) {
  auto values = thresholds(tree, dfs_tour(tree)).values;
  values.push_back(tree.budget());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

Weight compute_epsilon(const Instance& tree, std::size_t leaf_cap) {
  const auto bounds = first_route_bounds(tree);
  std::optional<Weight> smallest;
  for (const auto& entry : potential_route_catalog(tree, leaf_cap)) {
    // the largest bound below the length gives this route's least excess
    auto it = std::lower_bound(bounds.begin(), bounds.end(), entry.length);
    if (it == bounds.begin()) continue;
    auto excess = entry.length - *std::prev(it);
    if (!smallest || excess < *smallest) smallest = std::move(excess);
  }
  Weight base = tree.min_edge_weight();
  if (smallest && *smallest < base) base = *smallest;
  const Weight n(tree.size());
  const Weight m(tree.edge_count());
  return base / (Weight(2) * n * (m + Weight(1)));
}

namespace {

std::vector<std::string> preorder_names(const Instance& tree) {
  const auto tour = dfs_tour(tree);
  std::vector<std::string> names;
  for (auto v : preorder_of(tour.vertices, tree.size())) names.push_back(tree.name(v));
  return names;
}

PotentialRoute to_original(const Instance& original, const RearrangeResult& result, const PotentialRoute& route) {
  PotentialRoute out;
  for (auto l : route.leaves) out.leaves.push_back(original.at(result.tree.name(l)));
  out.anchor = result.original_ancestor(original, route.anchor);
  return out;
}

}  // namespace

ConditionReport verify_conditions(const Instance& original, const RearrangeResult& result, std::size_t leaf_cap) {
  const auto& tp = result.tree;
  ConditionReport report;

  const auto heavy = classify(tp);
  report.p1 = true;
  for (std::size_t i = 0; i < tp.size() && report.p1; ++i) {
    const auto v = node_at(i);
    if (heavy.degree(v) == 1 && tp.children(v).size() > 2) {
      report.p1 = false;
      report.p1_witness = tp.name(v);
    }
  }

  auto names = preorder_names(tp);
  std::erase_if(names, [&](const std::string& n) { return !original.find(n); });
  report.p2 = names == preorder_names(original);
  report.skinny = satisfies_st(tp);

  if (tp.leaves().size() > leaf_cap) return report;
  const auto bounds = first_route_bounds(original);
  const auto catalog = potential_route_catalog(tp, leaf_cap);
  report.p3_routes_checked = catalog.size();
  report.p3 = true;
  for (const auto& entry : catalog) {
    const auto in_t = potential_route_length(original, to_original(original, result, entry.route));
    for (const auto& b : bounds) {
      const bool ok_t = in_t <= b;
      if (ok_t == (entry.length <= b)) continue;
      ++report.p3_flips;
      if (!original.find(tp.name(entry.route.anchor))) ++report.p3_flips_at_subdivisions;
      report.p3 = false;
      if (report.p3_counterexample) continue;
      // Pad with out-and-back routes so coverage is complete in both trees.
      P3Counterexample cx;
      cx.strategy.routes.push_back(entry.route);
      for (auto l : tp.leaves()) cx.strategy.routes.push_back({{l}, l});
      if (b != original.budget()) cx.first_budget = b;
      cx.length_in_t = in_t;
      cx.length_in_t_prime = entry.length;
      cx.feasible_in_t = ok_t;
      report.p3_counterexample = std::move(cx);
    }
  }
  return report;
}

namespace {

std::vector<std::vector<std::string>> discovery(const Instance& tree, const PdfsTrace& trace,
                                                const Instance& original) {
  std::vector<bool> seen(tree.size(), false);
  std::vector<std::vector<std::string>> out;
  for (const auto& route : trace.strategy.routes) {
    auto& found = out.emplace_back();
    for (auto v : route.vertices) {
      if (seen[idx(v)]) continue;
      seen[idx(v)] = true;
      if (original.find(tree.name(v))) found.push_back(tree.name(v));
    }
  }
  return out;
}

}  // namespace

std::optional<Weight> adfs_order_mismatch(const Instance& original, const RearrangeResult& result) {
  const auto tour = dfs_tour(original);
  const auto tour_prime = dfs_tour(result.tree);
  for (const auto& b : thresholds(original, tour).values) {
    const auto a = discovery(original, adversarial_pdfs(original, tour, b), original);
    const auto c = discovery(result.tree, adversarial_pdfs(result.tree, tour_prime, b), original);
    if (a != c) return b;
  }
  return std::nullopt;
}

PerturbationBounds perturbation_bounds(const Instance& original, const RearrangeResult& result,
                                       std::size_t leaf_cap) {
  PerturbationBounds out;
  out.adfs_t = adversarial_dfs(original, dfs_tour(original)).trace.cost();
  out.adfs_t_prime = adversarial_dfs(result.tree, dfs_tour(result.tree)).trace.cost();
  const Weight n(original.size());
  out.slack = Weight(4) * result.epsilon * n * n;
  out.phi_t = potential(original, original.root());
  out.phi_t_prime = potential(result.tree, result.tree.root());
  out.opt_t = opt_cost(original, leaf_cap).cost;
  out.opt_t_prime = opt_cost(result.tree, leaf_cap).cost;
  return out;
}

}  // namespace ecte
