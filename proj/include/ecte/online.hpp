#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ecte/tree.hpp"

namespace ecte {

struct RevealedEdge {
  NodeId child{};
  Weight weight;
};

struct RevealEvent {
  std::size_t step = 0;  // tour index of the first visit
  NodeId node{};
  std::vector<RevealedEdge> edges;  // downward edges discovered there
};

struct RevealLog {
  std::vector<RevealEvent> events;
  std::size_t recharges = 0;
};

/// The only view an online agent has of the hidden tree. A node becomes
/// revealed when its parent is visited; visiting it reveals its downward
/// edges. Every query about a node that is not revealed yet is counted as a
/// violation and throws InvalidRoute.
class RevealGate {
 public:
  explicit RevealGate(const Instance& hidden);

  NodeId root() const { return hidden_.root(); }
  const Weight& budget() const { return hidden_.budget(); }

  /// First visit reveals and returns v's downward edges; later visits return
  /// the same list.
  std::span<const RevealedEdge> visit(NodeId v, std::size_t step);
  bool revealed(NodeId v) const { return idx(v) < revealed_.size() && revealed_[idx(v)]; }
  /// Throws on unrevealed nodes.
  const std::string& name(NodeId v);
  void require_revealed(NodeId v);

  std::size_t violations() const { return violations_; }
  std::size_t queries() const { return queries_; }
  RevealLog& log() { return log_; }
  const RevealLog& log() const { return log_; }

 private:
  const Instance& hidden_;
  std::vector<bool> revealed_;
  std::vector<std::vector<RevealedEdge>> known_;
  std::vector<bool> visited_;
  std::size_t violations_ = 0;
  std::size_t queries_ = 0;
  RevealLog log_;
};

/// Children are taken in the order they were revealed.
struct RevealOrderPolicy {};
/// At each node, the next child is candidates[rng() % k] from one
/// mt19937_64 stream.
struct RandomChildPolicy {
  std::uint64_t seed = 0;
};
/// Given the current node and its revealed-but-unexplored children, returns
/// the next child to descend into.
using AdversaryCallback = std::function<NodeId(NodeId at, std::span<const NodeId> candidates)>;
struct AdversarialPolicy {
  AdversaryCallback choose;
};

using OnlinePolicy = std::variant<RevealOrderPolicy, RandomChildPolicy, AdversarialPolicy>;

struct SimulationResult {
  Strategy strategy;
  std::vector<Weight> lengths;
  /// The depth first tour induced by the child choices actually made.
  std::vector<NodeId> tour;
  RevealLog log;
  std::size_t violations = 0;
};

/// Piecemeal DFS run by an agent that sees the tree only through a
/// RevealGate. Each child choice is made once per node and kept, so a route
/// that stops in front of a descent resumes with the same choice. Throws
/// PreconditionFailed when an adversary picks a revealed node that is not a
/// candidate, InvalidRoute when it picks an unrevealed one.
SimulationResult simulate(const Instance& hidden, const OnlinePolicy& policy = RevealOrderPolicy{});

std::string describe(const OnlinePolicy& policy);

}  // namespace ecte
