#include "ecte/online.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>

namespace ecte {

RevealGate::RevealGate(const Instance& hidden)
    : hidden_(hidden), revealed_(hidden.size(), false), known_(hidden.size()), visited_(hidden.size(), false) {
  revealed_[0] = true;
}

void RevealGate::require_revealed(NodeId v) {
  ++queries_;
  if (!revealed(v)) {
    ++violations_;
    throw InvalidRoute("query about an unrevealed node");
  }
}

std::span<const RevealedEdge> RevealGate::visit(NodeId v, std::size_t step) {
  require_revealed(v);
  if (!visited_[idx(v)]) {
    visited_[idx(v)] = true;
    auto& edges = known_[idx(v)];
    for (auto c : hidden_.children(v)) {
      revealed_[idx(c)] = true;
      edges.push_back({c, hidden_.parent_weight(c)});
    }
    log_.events.push_back({step, v, edges});
  }
  return known_[idx(v)];
}

const std::string& RevealGate::name(NodeId v) {
  require_revealed(v);
  return hidden_.name(v);
}

std::string describe(const OnlinePolicy& policy) {
  struct {
    std::string operator()(const RevealOrderPolicy&) const { return "reveal-order"; }
    std::string operator()(const RandomChildPolicy& p) const { return "random(seed=" + std::to_string(p.seed) + ")"; }
    std::string operator()(const AdversarialPolicy&) const { return "adversarial"; }
  } visitor;
  return std::visit(visitor, policy);
}

namespace {

// Everything the agent knows is built from what the gate returned.
class Agent {
 public:
  Agent(RevealGate& gate, const OnlinePolicy& policy) : gate_(gate), policy_(policy) {
    if (const auto* r = std::get_if<RandomChildPolicy>(&policy)) rng_.seed(r->seed);
  }

  SimulationResult run() {
    const auto root = gate_.root();
    learn(root, Weight(0));
    path_.push_back(root);
    tour_.push_back(root);
    remember(root, 0);
    SimulationResult out;
    bool done = false;
    while (!done) {
      const auto start = path_;
      const Weight start_depth = depth(path_.back());
      Weight walked;
      std::vector<NodeId> segment;
      for (;;) {
        const auto step = next_step();
        if (!step) {
          done = true;
          break;
        }
        const auto [to, w, down] = *step;
        const Weight to_depth = down ? depth(path_.back()) + w : depth(path_[path_.size() - 2]);
        if (start_depth + walked + w + to_depth > gate_.budget()) break;
        walked += w;
        take(to, w, down);
        segment.push_back(to);
      }
      if (segment.empty() && !done) throw std::logic_error("online route made no progress");
      if (segment.empty() && done && !out.strategy.routes.empty()) break;
      Route route;
      route.vertices = start;
      route.vertices.insert(route.vertices.end(), segment.begin(), segment.end());
      for (auto it = path_.rbegin() + 1; it != path_.rend(); ++it) route.vertices.push_back(*it);
      Weight length = start_depth + walked + depth(path_.back());
      if (length > gate_.budget()) throw std::logic_error("online route exceeds the budget");
      out.strategy.routes.push_back(std::move(route));
      out.lengths.push_back(std::move(length));
    }
    gate_.log().recharges = out.strategy.routes.size() - 1;
    out.tour = tour_;
    out.log = gate_.log();
    out.violations = gate_.violations();
    return out;
  }

 private:
  struct Step {
    NodeId to;
    Weight weight;
    bool down;
  };

  void learn(NodeId v, Weight d) {
    if (idx(v) >= depth_.size()) {
      depth_.resize(idx(v) + 1);
      pending_.resize(idx(v) + 1);
      chosen_.resize(idx(v) + 1);
      up_weight_.resize(idx(v) + 1);
    }
    depth_[idx(v)] = std::move(d);
  }
  const Weight& depth(NodeId v) const { return depth_[idx(v)]; }

  void remember(NodeId v, std::size_t step) {
    for (const auto& e : gate_.visit(v, step)) {
      learn(e.child, depth(v) + e.weight);
      up_weight_[idx(e.child)] = e.weight;
      pending_[idx(v)].push_back(e.child);
    }
  }

  NodeId choose(NodeId at) {
    auto& open = pending_[idx(at)];
    if (std::holds_alternative<RevealOrderPolicy>(policy_)) return open.front();
    if (std::holds_alternative<RandomChildPolicy>(policy_)) return open[rng_() % open.size()];
    const auto pick = std::get<AdversarialPolicy>(policy_).choose(at, open);
    gate_.require_revealed(pick);
    if (std::find(open.begin(), open.end(), pick) == open.end()) {
      throw PreconditionFailed("adversary picked a node that is not an unexplored child");
    }
    return pick;
  }

  std::optional<Step> next_step() {
    const auto at = path_.back();
    auto& memo = chosen_[idx(at)];
    if (!memo && !pending_[idx(at)].empty()) memo = choose(at);
    if (memo) return Step{*memo, up_weight_[idx(*memo)], true};
    if (path_.size() == 1) return std::nullopt;
    return Step{path_[path_.size() - 2], up_weight_[idx(at)], false};
  }

  void take(NodeId to, const Weight&, bool down) {
    if (down) {
      const auto at = path_.back();
      auto& open = pending_[idx(at)];
      open.erase(std::find(open.begin(), open.end(), to));
      chosen_[idx(at)].reset();
      path_.push_back(to);
      tour_.push_back(to);
      remember(to, tour_.size() - 1);
    } else {
      path_.pop_back();
      tour_.push_back(to);
    }
  }

  RevealGate& gate_;
  const OnlinePolicy& policy_;
  std::mt19937_64 rng_;
  std::vector<NodeId> path_;
  std::vector<NodeId> tour_;
  std::vector<Weight> depth_;
  std::vector<Weight> up_weight_;
  std::vector<std::vector<NodeId>> pending_;
  std::vector<std::optional<NodeId>> chosen_;
};

}  // namespace

SimulationResult simulate(const Instance& hidden, const OnlinePolicy& policy) {
  RevealGate gate(hidden);
  return Agent(gate, policy).run();
}

}  // namespace ecte
