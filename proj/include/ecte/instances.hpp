#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecte/tree.hpp"

namespace ecte {

/// Reads the `ECTE1 <B>` format: one `<parent> <child> <weight>` edge per
/// line, `#` comments, blank lines ignored, weights as decimals or p/q.
/// Throws ParseError (with line number) on malformed text, zero weights,
/// duplicate children, several roots or B <= 1; InvalidInstance on cycles
/// and height violations.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);

/// Canonical text: header, then edges in preorder, no comments.
std::string serialize(const Instance& tree);

/// FNV-1a 64 of the canonical text, 16 hex digits.
std::string digest(const Instance& tree);

enum class Family { random, star, caterpillar, heavy_path, subdivided, lower_bound_branches };

std::optional<Family> family_from_string(std::string_view name);
std::string to_string(Family family);

struct GeneratorSpec {
  Family family = Family::random;
  std::uint64_t seed = 0;
  /// random/subdivided: edge count. star: leaves. caterpillar: spine edges.
  /// heavy-path: spine edges.
  std::size_t size = 6;
  /// random/subdivided: leaf cap (0 = none).
  std::size_t max_leaves = 0;
  /// Random weights are drawn from min + (max - min) * k / steps, k = 0..steps.
  /// steps = 0 picks the integer grid when both bounds are integers, else 4.
  Weight weight_min = Weight(1);
  Weight weight_max = Weight(3);
  std::size_t weight_steps = 0;
  /// star leaf length, caterpillar spine edge weight.
  Weight length = Weight(5);
  /// Defaults to 2 * height (star: 2 * length; lower-bound-branches needs it).
  /// When set for random trees, weights are rescaled to fit height <= B/2.
  std::optional<Weight> budget;
};

/// Deterministic in the spec. Throws PreconditionFailed on inconsistent
/// parameters (empty weight range, B <= 1, ...).
Instance generate(const GeneratorSpec& spec);

/// Subdivides, after each non-final PDFS route of the file-order tour that
/// is shorter than B, the edge the route could not descend, at the point
/// that makes the route exactly B long. Repeats until every route but the
/// last has length B.
Instance subdivide_for_pdfs(const Instance& tree);

/// All weighted rooted trees with 1..max_edges edges and weights drawn from
/// `weights`, one per isomorphism class, each with B = 2 * height.
std::vector<Instance> exhaustive_corpus(std::size_t max_edges, const std::vector<Weight>& weights);

/// `count` random trees (seeds seed, seed+1, ...) with 1..max_edges edges,
/// at most max_leaves leaves, integer weights in [1, max_weight] and
/// B = 2 * height + k for a random k in {0, ..., height}.
std::vector<Instance> random_corpus(std::size_t count, std::uint64_t seed, std::size_t max_edges,
                                    std::size_t max_leaves, long max_weight);

}  // namespace ecte
