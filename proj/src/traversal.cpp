#include "ecte/traversal.hpp"

#include <algorithm>
#include <random>

namespace ecte {

std::string describe(const ChildOrder& policy) {
  struct {
    std::string operator()(const FileOrder&) const { return "file"; }
    std::string operator()(const LexicographicOrder&) const { return "lex"; }
    std::string operator()(const SeededRandomOrder& p) const { return "random(seed=" + std::to_string(p.seed) + ")"; }
    std::string operator()(const ExplicitOrder&) const { return "explicit"; }
  } visitor;
  return std::visit(visitor, policy);
}

namespace {

std::vector<std::vector<NodeId>> child_lists(const Instance& tree, const ChildOrder& policy) {
  std::vector<std::vector<NodeId>> lists(tree.size());
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const auto ch = tree.children(node_at(i));
    lists[i].assign(ch.begin(), ch.end());
  }
  if (std::holds_alternative<LexicographicOrder>(policy)) {
    for (auto& l : lists) {
      std::sort(l.begin(), l.end(), [&](NodeId a, NodeId b) { return tree.name(a) < tree.name(b); });
    }
  } else if (const auto* random = std::get_if<SeededRandomOrder>(&policy)) {
    // Fisher-Yates driven directly by mt19937_64 so the order is identical on
    // every standard library (std::shuffle's algorithm is unspecified).
    std::mt19937_64 rng(random->seed);
    for (auto& l : lists) {
      for (std::size_t i = l.size(); i > 1; --i) {
        std::swap(l[i - 1], l[rng() % i]);
      }
    }
  } else if (const auto* expl = std::get_if<ExplicitOrder>(&policy)) {
    for (const auto& [node, order] : expl->order) {
      if (idx(node) >= tree.size()) throw PreconditionFailed("explicit order names a node outside the tree");
      auto expected = lists[idx(node)];
      auto given = order;
      std::sort(expected.begin(), expected.end());
      std::sort(given.begin(), given.end());
      if (expected != given) {
        throw PreconditionFailed("explicit order for '" + tree.name(node) + "' is not a permutation of its children");
      }
      lists[idx(node)] = order;
    }
  }
  return lists;
}

}  // namespace

EulerTour dfs_tour(const Instance& tree, const ChildOrder& policy) {
  const auto lists = child_lists(tree, policy);
  EulerTour tour;
  tour.policy = describe(policy);
  tour.vertices.reserve(2 * tree.edge_count() + 1);
  tour.prefix.reserve(2 * tree.edge_count() + 1);
  // (node, next child position)
  std::vector<std::pair<NodeId, std::size_t>> stack{{tree.root(), 0}};
  tour.vertices.push_back(tree.root());
  tour.prefix.emplace_back(0);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto& ch = lists[idx(v)];
    if (next < ch.size()) {
      const auto c = ch[next++];
      tour.prefix.push_back(tour.prefix.back() + tree.parent_weight(c));
      tour.vertices.push_back(c);
      stack.emplace_back(c, 0);
    } else {
      const auto done = v;
      stack.pop_back();
      if (!stack.empty()) {
        tour.prefix.push_back(tour.prefix.back() + tree.parent_weight(done));
        tour.vertices.push_back(stack.back().first);
      }
    }
  }
  return tour;
}

EulerTour tour_from_vertices(const Instance& tree, std::vector<NodeId> vertices, std::string policy) {
  if (vertices.empty() || vertices.front() != tree.root() || vertices.back() != tree.root()) {
    throw InvalidRoute("tour must start and end at the root");
  }
  std::vector<std::size_t> seen_children(tree.size(), 0);
  std::vector<bool> visited(tree.size(), false);
  visited[0] = true;
  EulerTour tour;
  tour.policy = std::move(policy);
  tour.prefix.emplace_back(0);
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const auto a = vertices[i - 1];
    const auto b = vertices[i];
    if (idx(b) >= tree.size()) throw InvalidRoute("tour mentions a node outside the tree");
    if (!tree.is_root(b) && tree.parent(b) == a) {
      if (visited[idx(b)]) throw InvalidRoute("tour descends into '" + tree.name(b) + "' twice");
      visited[idx(b)] = true;
      ++seen_children[idx(a)];
      tour.prefix.push_back(tour.prefix.back() + tree.parent_weight(b));
    } else if (!tree.is_root(a) && tree.parent(a) == b) {
      if (seen_children[idx(a)] != tree.children(a).size()) {
        throw InvalidRoute("tour leaves '" + tree.name(a) + "' before finishing its subtree");
      }
      tour.prefix.push_back(tour.prefix.back() + tree.parent_weight(a));
    } else {
      throw InvalidRoute("tour step between non-adjacent nodes");
    }
  }
  if (std::find(visited.begin(), visited.end(), false) != visited.end() ||
      seen_children[0] != tree.children(tree.root()).size()) {
    throw InvalidRoute("tour does not cover the tree");
  }
  tour.vertices = std::move(vertices);
  return tour;
}

EulerTour project_tour(const Instance& tree, const EulerTour& tour, const Instance& sub) {
  std::vector<NodeId> vertices;
  for (auto v : tour.vertices) {
    const auto mapped = sub.find(tree.name(v));
    if (!mapped) continue;
    if (vertices.empty() || vertices.back() != *mapped) vertices.push_back(*mapped);
  }
  return tour_from_vertices(sub, std::move(vertices), tour.policy);
}

Route steiner_route(const Instance& tree, std::span<const NodeId> targets) {
  std::vector<bool> keep(tree.size(), false);
  keep[0] = true;
  for (auto t : targets) {
    for (auto v = t; !keep[idx(v)]; v = tree.parent(v)) keep[idx(v)] = true;
  }
  Route route;
  std::vector<std::pair<NodeId, std::size_t>> stack{{tree.root(), 0}};
  route.vertices.push_back(tree.root());
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto ch = tree.children(v);
    while (next < ch.size() && !keep[idx(ch[next])]) ++next;
    if (next < ch.size()) {
      const auto c = ch[next++];
      route.vertices.push_back(c);
      stack.emplace_back(c, 0);
    } else {
      stack.pop_back();
      if (!stack.empty()) route.vertices.push_back(stack.back().first);
    }
  }
  return route;
}

std::vector<NodeId> preorder_of(std::span<const NodeId> walk, std::size_t node_count) {
  std::vector<bool> seen(node_count, false);
  std::vector<NodeId> order;
  for (auto v : walk) {
    if (!seen[idx(v)]) {
      seen[idx(v)] = true;
      order.push_back(v);
    }
  }
  return order;
}

}  // namespace ecte
