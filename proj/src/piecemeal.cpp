#include "ecte/piecemeal.hpp"

#include <stdexcept>

namespace ecte {

Weight PdfsTrace::cost() const {
  Weight total;
  for (const auto& len : lengths) total += len;
  return total;
}

namespace {

// d(r, v_j) + len(v_j..v_p) + d(v_p, r)
Weight reach(const Instance& tree, const EulerTour& tour, std::size_t j, std::size_t p) {
  Weight w = tree.depth(tour.vertices[j]);
  w += tour.prefix[p];
  w -= tour.prefix[j];
  w += tree.depth(tour.vertices[p]);
  return w;
}

// reach(j, p) is non-decreasing in p (+2w on a descent, +0 on an ascent), so
// the furthest feasible index is found by walking forward.
std::size_t furthest(const Instance& tree, const EulerTour& tour, std::size_t j, const Weight& bound) {
  std::size_t p = j;
  while (p < tour.last_index() && reach(tree, tour, j, p + 1) <= bound) ++p;
  return p;
}

void append_route(const Instance& tree, const EulerTour& tour, std::size_t j, std::size_t p, PdfsTrace& trace) {
  Route route;
  route.vertices = root_path(tree, tour.vertices[j]);
  route.vertices.insert(route.vertices.end(), tour.vertices.begin() + static_cast<std::ptrdiff_t>(j) + 1,
                        tour.vertices.begin() + static_cast<std::ptrdiff_t>(p) + 1);
  for (auto v = tour.vertices[p]; !tree.is_root(v);) {
    v = tree.parent(v);
    route.vertices.push_back(v);
  }
  trace.lengths.push_back(reach(tree, tour, j, p));
  trace.strategy.routes.push_back(std::move(route));
  trace.stops.push_back(p);
}

PdfsTrace decompose(const Instance& tree, const EulerTour& tour, const std::optional<Weight>& first_budget) {
  PdfsTrace trace;
  trace.strategy.first_budget = first_budget;
  trace.stops.push_back(0);
  std::size_t j = 0;
  if (first_budget) {
    j = furthest(tree, tour, 0, *first_budget);
    append_route(tree, tour, 0, j, trace);
  }
  while (j < tour.last_index()) {
    const auto p = furthest(tree, tour, j, tree.budget());
    // Unreachable while height <= B/2: a descent from v_j costs 2 d(r, child).
    if (p == j) throw std::logic_error("piecemeal route made no progress");
    append_route(tree, tour, j, p, trace);
    j = p;
  }
  return trace;
}

}  // namespace

PdfsTrace pdfs(const Instance& tree, const EulerTour& tour) { return decompose(tree, tour, std::nullopt); }

PdfsTrace adversarial_pdfs(const Instance& tree, const EulerTour& tour, const Weight& first_budget) {
  if (first_budget.sign() < 0 || first_budget > tree.budget()) {
    throw PreconditionFailed("first-route budget " + first_budget.str() + " outside [0, " + tree.budget().str() + "]");
  }
  return decompose(tree, tour, first_budget);
}

ThresholdSet thresholds(const Instance& tree, const EulerTour& tour) {
  ThresholdSet set;
  const auto cap = Weight(2) * potential(tree, tree.root());
  for (std::size_t p = 0; p <= tour.last_index(); ++p) {
    Weight f = tour.prefix[p] + tree.depth(tour.vertices[p]);
    if (f > cap) break;
    if (set.values.empty() || set.values.back() != f) set.values.push_back(std::move(f));
  }
  return set;
}

AdversarialOutcome adversarial_dfs(const Instance& tree, const EulerTour& tour) {
  std::optional<AdversarialOutcome> best;
  Weight best_cost;
  for (const auto& b : thresholds(tree, tour).values) {
    auto trace = adversarial_pdfs(tree, tour, b);
    auto c = trace.cost();
    if (!best || c > best_cost) {
      best_cost = std::move(c);
      best = AdversarialOutcome{std::move(trace), b};
    }
  }
  return std::move(*best);
}

std::vector<std::vector<NodeId>> progress_segments(const EulerTour& tour, const PdfsTrace& trace) {
  std::vector<std::vector<NodeId>> segments;
  for (std::size_t i = 1; i < trace.stops.size(); ++i) {
    const auto from = static_cast<std::ptrdiff_t>(trace.stops[i - 1]);
    const auto to = static_cast<std::ptrdiff_t>(trace.stops[i]);
    segments.emplace_back(tour.vertices.begin() + from, tour.vertices.begin() + to + 1);
  }
  return segments;
}

}  // namespace ecte
