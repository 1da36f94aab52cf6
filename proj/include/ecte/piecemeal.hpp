#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ecte/traversal.hpp"
#include "ecte/tree.hpp"

namespace ecte {

/// Result of decomposing a tour into budgeted routes.
struct PdfsTrace {
  Strategy strategy;
  /// j_0 = 0 < ... ; the last entry is the tour's last index. In adversarial
  /// mode j_1 may equal j_0 (a zero-progress first route).
  std::vector<std::size_t> stops;
  std::vector<Weight> lengths;

  std::size_t route_count() const { return lengths.size(); }
  Weight cost() const;
};

/// Piecemeal DFS: every route resumes at the vertex where the previous one
/// stopped making progress and follows the tour as far as the budget allows
/// (return distance included).
PdfsTrace pdfs(const Instance& tree, const EulerTour& tour);

/// As pdfs, but the first route is bounded by `first_budget` instead of B.
/// Throws PreconditionFailed unless 0 <= first_budget <= B.
PdfsTrace adversarial_pdfs(const Instance& tree, const EulerTour& tour, const Weight& first_budget);

/// Distinct first-route stop values f(p) = prefix(p) + d(v_p, r) that are at
/// most 2φ(root), ascending, always starting with 0. For any B', the first
/// route of adversarial_pdfs stops at max{p : f(p) <= B'}.
struct ThresholdSet {
  std::vector<Weight> values;
};

ThresholdSet thresholds(const Instance& tree, const EulerTour& tour);

struct AdversarialOutcome {
  PdfsTrace trace;
  Weight first_budget;  // smallest maximizing threshold
};

/// The B'-adversarial decomposition of maximum cost over all B' in [0, B].
AdversarialOutcome adversarial_dfs(const Instance& tree, const EulerTour& tour);

/// The tour pieces (v_{j_{i-1}}, ..., v_{j_i}) of each route.
std::vector<std::vector<NodeId>> progress_segments(const EulerTour& tour, const PdfsTrace& trace);

}  // namespace ecte
