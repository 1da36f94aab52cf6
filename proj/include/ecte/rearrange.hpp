#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ecte/oracle.hpp"
#include "ecte/tree.hpp"

namespace ecte {

inline constexpr std::size_t kRearrangeLeafCap = 7;

/// A vertex on the root's heavy path (other than r') carrying two or more
/// light downward edges, if any. Vacuously none when heavydeg(root) != 1.
std::optional<NodeId> skinny_violation(const Instance& tree);
inline bool satisfies_st(const Instance& tree) { return !skinny_violation(tree).has_value(); }

struct MovedEdge {
  std::string child;       // lower endpoint, an original node
  std::string new_parent;  // a subdivision vertex or the original parent
  Weight weight;           // original weight minus epsilon
};

/// T'_eps together with the bookkeeping needed to relate it to T. Original
/// nodes keep their names in the new tree.
struct RearrangeResult {
  Instance tree;
  Weight epsilon;
  std::vector<std::string> processed;     // vertices u that were split, root to leaf
  std::vector<std::string> subdivisions;  // new vertex names
  std::vector<MovedEdge> moved;

  bool changed() const { return !processed.empty(); }
  /// The node of `tree` standing for `original`'s node `v`.
  NodeId image(const Instance& original, NodeId v) const { return tree.at(original.name(v)); }
  /// The closest ancestor-or-self of `v` that exists in `original`.
  NodeId original_ancestor(const Instance& original, NodeId v) const;
};

/// Every vertex u with heavydeg(u) = 1 and d >= 2 light downward edges gets
/// its heavy edge replaced by a path u = v_0, ..., v_d = v (d-1 edges of
/// weight eps/(d-1), then one of weight w(uv) - eps); the i-th light edge
/// moves to v_{i-1} with weight reduced by eps. Light edges preceding the
/// heavy child in the stored child order are assigned top-down in order,
/// those after it bottom-up, so the file-order preorder of the original
/// nodes is unchanged.
///
/// Throws PreconditionFailed unless 0 < eps < min edge weight. Returns the
/// instance unchanged when no vertex qualifies.
RearrangeResult build_t_prime(const Instance& tree, const Weight& epsilon);

/// Largest excess over the applicable bound among the translated routes.
/// Throws PreconditionFailed when no route is too long.
Weight deficiency(const Instance& tree, const PotentialStrategy& strategy,
                  const std::optional<Weight>& first_budget = std::nullopt);

/// Budgets a potential strategy is judged against: B for plain strategies
/// and every first-route threshold of the file-order tour.
std::vector<Weight> first_route_bounds(const Instance& tree);

/// min(min edge weight, smallest deficiency) / (2 n (m + 1)) with n nodes and
/// m edges. The smallest deficiency over all infeasible potential strategies
/// is attained by a single route, so only the route catalog is scanned.
/// Throws CapExceeded above `leaf_cap` leaves.
Weight compute_epsilon(const Instance& tree, std::size_t leaf_cap = kRearrangeLeafCap);

struct P3Counterexample {
  PotentialStrategy strategy;  // anchors are nodes of T'
  std::optional<Weight> first_budget;
  Weight length_in_t;
  Weight length_in_t_prime;
  bool feasible_in_t = false;
};

struct ConditionReport {
  bool p1 = false;
  std::optional<std::string> p1_witness;
  bool p2 = false;
  bool skinny = false;
  /// Unset when the leaf cap is exceeded.
  std::optional<bool> p3;
  std::optional<P3Counterexample> p3_counterexample;
  std::size_t p3_routes_checked = 0;
  /// (route, bound) pairs whose verdict differs, and how many of those end
  /// at a subdivision vertex.
  std::size_t p3_flips = 0;
  std::size_t p3_flips_at_subdivisions = 0;
};

/// P1 and P2 structurally; P3 by comparing, for every potential route of T'
/// and every bound of first_route_bounds(T), the length verdict in both
/// trees. Coverage is identical in both trees (same leaves), so a strategy
/// changes feasibility exactly when one of its routes changes verdict.
ConditionReport verify_conditions(const Instance& original, const RearrangeResult& result,
                                  std::size_t leaf_cap = kRearrangeLeafCap);

/// Per-route sequences of newly discovered original nodes of the adversarial
/// run at each first-route threshold of T, on T and on T'. Returns the first
/// threshold at which the two differ.
std::optional<Weight> adfs_order_mismatch(const Instance& original, const RearrangeResult& result);

struct PerturbationBounds {
  Weight adfs_t, adfs_t_prime, slack;  // slack = 4 eps n^2
  Weight phi_t, phi_t_prime;
  Weight opt_t, opt_t_prime;

  bool adfs_ok() const { return adfs_t <= adfs_t_prime + slack; }
  bool phi_ok() const { return phi_t_prime <= phi_t; }
  bool opt_ok() const { return opt_t_prime <= opt_t; }
};

PerturbationBounds perturbation_bounds(const Instance& original, const RearrangeResult& result,
                                       std::size_t leaf_cap = kOptimumLeafCap);

}  // namespace ecte
