#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ecte/oracle.hpp"
#include "ecte/piecemeal.hpp"
#include "ecte/traversal.hpp"
#include "ecte/tree.hpp"

namespace ecte {

struct LightEdge {
  NodeId lower{};
  Weight potential;  // of the higher endpoint
  Weight weight;     // ω(T_e)
};

/// The heavy path P from the root down to r', the closest heavy descendant
/// with heavydeg != 1, and the light edges hanging off P above r'.
struct HeavyPathReport {
  NodeId r_prime{};
  std::vector<NodeId> path;  // root first, r' last
  Weight path_weight;
  std::vector<LightEdge> light_edges;  // non-decreasing potential, then preorder
  /// Half of opt_cost on T_{r'} with budget 2φ(r').
  Weight w0;
  bool potential_ties = false;
  Weight phi_root;
  Weight phi_r_prime;  // φ_0
};

/// Throws PreconditionFailed unless the tree is heavy with heavydeg(root) = 1.
HeavyPathReport heavy_path(const Instance& tree, std::size_t leaf_cap = kOptimumLeafCap);

struct YSequence {
  std::vector<Weight> values;
  std::size_t d = 0;
};

/// Greedy sequence over the potentials {φ_0, ..., φ_l} with w_0 at φ_0.
/// Throws PreconditionFailed when light-edge potentials tie.
YSequence y_sequence(const HeavyPathReport& report);

/// Lowest potential reached on P by each route, sorted ascending. Excursions
/// off P are ignored; a route that stays at the root contributes φ(root).
std::vector<Weight> x_sequence(const Instance& tree, const Strategy& strategy, const HeavyPathReport& report);

/// Lowest P-potentials of the routes before the first one that contains r',
/// last such route first. Zero-progress routes count (at φ(root)).
std::vector<Weight> z_sequence(const Instance& tree, const PdfsTrace& trace, const HeavyPathReport& report);

struct OptDecomposition {
  Weight light, deep, path, flat;
  Weight total() const { return light + deep + path + flat; }
};

struct AdfsDecomposition {
  Weight light, deep, desc, flat, asc;
  Weight total() const { return light + deep + desc + flat + asc; }
};

/// Route-filtered restricted costs: light subtrees, T_{r'}, and P split by
/// whether the route contains r'.
OptDecomposition decompose_opt_cost(const Instance& tree, const Strategy& strategy, const HeavyPathReport& report);

/// As above with P split into the three phases: routes before the first
/// route containing r', routes from it to the last one containing r', and
/// the rest.
AdfsDecomposition decompose_adfs_cost(const Instance& tree, const Strategy& strategy, const HeavyPathReport& report);

enum class CheckStatus { pass, fail, skipped };

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::skipped;
  std::string lhs;       // exact rendering
  std::string relation;  // "<", "<=", "==", ">=" or "=>"
  std::string rhs;
  std::string note;  // reason when skipped, witness when failed
};

struct CertificateReport {
  std::vector<Check> checks;

  bool ok() const;
  const Check* find(const std::string& name) const;
  std::size_t count(CheckStatus status) const;
};

struct CertificateOptions {
  ChildOrder order = FileOrder{};
  std::size_t leaf_cap = kOptimumLeafCap;
  /// Multiplies the right-hand side of the ratio bounds; values below 1
  /// inject violations for exercising the failure path.
  Weight bound_factor = Weight(1);
};

/// Evaluates every applicable inequality of the cost analysis on one
/// instance. Checks that do not apply are reported as skipped.
CertificateReport check_inequalities(const Instance& tree, const CertificateOptions& options = {});

std::string format_report(const CertificateReport& report);

}  // namespace ecte
