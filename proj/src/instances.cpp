#include "ecte/instances.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ecte/piecemeal.hpp"
#include "ecte/traversal.hpp"

namespace ecte {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const auto start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

Weight parse_weight(std::string_view text, std::size_t line, const char* what) {
  try {
    return Weight::parse(text);
  } catch (const std::invalid_argument&) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(text) + "'");
  }
}

}  // namespace

Instance parse_instance(std::string_view text) {
  std::optional<Weight> budget;
  std::vector<EdgeSpec> edges;
  std::unordered_map<std::string, std::size_t> child_line;
  std::vector<std::size_t> edge_line;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (!budget) {
      if (tok.size() != 2 || tok[0] != "ECTE1") throw ParseError(line_no, "expected header 'ECTE1 <B>'");
      budget = parse_weight(tok[1], line_no, "budget");
      if (*budget <= Weight(1)) throw ParseError(line_no, "budget must exceed 1");
      continue;
    }
    if (tok.size() != 3) throw ParseError(line_no, "expected '<parent> <child> <weight>'");
    auto w = parse_weight(tok[2], line_no, "weight");
    if (w.is_zero()) throw ParseError(line_no, "edge weights must be positive");
    if (tok[0] == tok[1]) throw ParseError(line_no, "self-loop at '" + std::string(tok[0]) + "'");
    std::string child(tok[1]);
    if (auto [it, fresh] = child_line.emplace(child, line_no); !fresh) {
      throw ParseError(line_no, "'" + child + "' already has a parent (line " + std::to_string(it->second) + ")");
    }
    edges.push_back({std::string(tok[0]), std::move(child), std::move(w)});
    edge_line.push_back(line_no);
  }
  if (!budget) throw ParseError(line_no, "missing header 'ECTE1 <B>'");
  if (edges.empty()) throw ParseError(line_no, "no edges");
  std::optional<std::string> root;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& p = edges[i].parent;
    if (child_line.contains(p)) continue;
    if (!root) {
      root = p;
    } else if (*root != p) {
      throw ParseError(edge_line[i], "second root '" + p + "' (first was '" + *root + "')");
    }
  }
  return Instance(*budget, edges);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize(const Instance& tree) {
  std::string out = "ECTE1 " + tree.budget().str() + "\n";
  for (const auto& e : tree.edges()) out += e.parent + " " + e.child + " " + e.weight.str() + "\n";
  return out;
}

std::string digest(const Instance& tree) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize(tree)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

constexpr std::pair<Family, std::string_view> kFamilies[] = {
    {Family::random, "random"},
    {Family::star, "star"},
    {Family::caterpillar, "caterpillar"},
    {Family::heavy_path, "heavy-path"},
    {Family::subdivided, "subdivided"},
    {Family::lower_bound_branches, "lower-bound-branches"},
};

// Portable draws: std::uniform_int_distribution differs across libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

class WeightSampler {
 public:
  explicit WeightSampler(const GeneratorSpec& spec) : lo_(spec.weight_min), span_(spec.weight_max - spec.weight_min) {
    if (lo_.sign() <= 0) throw PreconditionFailed("weight-min must be positive");
    if (span_.sign() < 0) throw PreconditionFailed("weight-max below weight-min");
    steps_ = spec.weight_steps;
    if (steps_ == 0) {
      steps_ = (lo_.is_integer() && span_.is_integer()) ? static_cast<std::size_t>(span_.raw().get_num().get_ui()) : 4;
    }
  }
  Weight operator()(std::mt19937_64& rng) const {
    if (steps_ == 0) return lo_;
    const auto k = draw(rng, steps_ + 1);
    return lo_ + span_ * Weight::ratio(static_cast<long>(k), static_cast<long>(steps_));
  }

 private:
  Weight lo_, span_;
  std::size_t steps_ = 0;
};

std::string node_name(std::size_t i) { return i == 0 ? "r" : "v" + std::to_string(i); }

Weight tree_height(const std::vector<std::size_t>& parent, const std::vector<Weight>& w) {
  std::vector<Weight> depth(parent.size());
  Weight h;
  for (std::size_t i = 1; i < parent.size(); ++i) {
    depth[i] = depth[parent[i]] + w[i];
    if (depth[i] > h) h = depth[i];
  }
  return h;
}

Weight pick_budget(const std::optional<Weight>& requested, const Weight& height) {
  Weight b = requested ? *requested : Weight(2) * height;
  if (b <= Weight(1)) throw PreconditionFailed("budget " + b.str() + " must exceed 1");
  return b;
}

Instance assemble(const std::vector<std::size_t>& parent, std::vector<Weight> w, const std::optional<Weight>& budget,
                  bool rescale) {
  auto h = tree_height(parent, w);
  if (rescale && budget && Weight(2) * h > *budget) {
    const auto factor = *budget / (Weight(2) * h);
    for (auto& x : w) x *= factor;
    h = *budget / Weight(2);
  }
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 1; i < parent.size(); ++i) edges.push_back({node_name(parent[i]), node_name(i), w[i]});
  return Instance(pick_budget(budget, h), edges);
}

// Recursive attachment; once the leaf cap is reached new nodes only extend
// existing leaves.
Instance random_tree(const GeneratorSpec& spec) {
  if (spec.size == 0) throw PreconditionFailed("random trees need at least one edge");
  std::mt19937_64 rng(spec.seed);
  const WeightSampler sample(spec);
  std::vector<std::size_t> parent{0};
  std::vector<Weight> w{Weight(0)};
  std::vector<bool> has_child{false};
  std::size_t leaves = 0;
  for (std::size_t i = 1; i <= spec.size; ++i) {
    std::size_t p;
    if (spec.max_leaves == 0 || leaves < spec.max_leaves) {
      p = draw(rng, i);
    } else {
      std::vector<std::size_t> open;
      for (std::size_t j = 1; j < i; ++j) {
        if (!has_child[j]) open.push_back(j);
      }
      p = open[draw(rng, open.size())];
    }
    if (p == 0 || has_child[p]) ++leaves;
    has_child[p] = true;
    parent.push_back(p);
    has_child.push_back(false);
    w.push_back(sample(rng));
  }
  return assemble(parent, std::move(w), spec.budget, true);
}

Instance star(const GeneratorSpec& spec) {
  if (spec.size == 0) throw PreconditionFailed("star needs at least one leaf");
  if (spec.length.sign() <= 0) throw PreconditionFailed("length must be positive");
  std::vector<std::size_t> parent(spec.size + 1, 0);
  std::vector<Weight> w(spec.size + 1, spec.length);
  w[0] = Weight(0);
  return assemble(parent, std::move(w), spec.budget, false);
}

Instance caterpillar(const GeneratorSpec& spec) {
  if (spec.size == 0) throw PreconditionFailed("caterpillar needs a spine");
  if (spec.length.sign() <= 0) throw PreconditionFailed("length must be positive");
  std::mt19937_64 rng(spec.seed);
  const WeightSampler sample(spec);
  std::vector<std::size_t> parent{0};
  std::vector<Weight> w{Weight(0)};
  std::size_t spine = 0;
  for (std::size_t i = 0; i < spec.size; ++i) {
    parent.push_back(spine);
    w.push_back(spec.length);
    spine = parent.size() - 1;
    parent.push_back(spine);
    w.push_back(sample(rng));
  }
  return assemble(parent, std::move(w), spec.budget, false);
}

// A spine from the root whose vertices carry 0..2 light leaves (at least one
// vertex carries 2), ending in a vertex with 2..3 leaves.
Instance heavy_path_tree(const GeneratorSpec& spec) {
  if (spec.size == 0) throw PreconditionFailed("heavy-path needs a spine");
  std::mt19937_64 rng(spec.seed);
  const WeightSampler sample(spec);
  std::vector<std::size_t> parent{0};
  std::vector<Weight> w{Weight(0)};
  const auto doubled = draw(rng, spec.size);
  std::size_t at = 0;
  for (std::size_t i = 0; i < spec.size; ++i) {
    const auto lights = i == doubled ? 2 : draw(rng, 3);
    std::vector<std::pair<std::size_t, Weight>> kids;
    for (std::size_t k = 0; k < lights; ++k) kids.emplace_back(1, sample(rng));
    const auto spine_slot = draw(rng, lights + 1);
    kids.insert(kids.begin() + static_cast<std::ptrdiff_t>(spine_slot), {0, sample(rng)});
    std::size_t next = 0;
    for (auto& [is_light, weight] : kids) {
      parent.push_back(at);
      w.push_back(weight);
      if (!is_light) next = parent.size() - 1;
    }
    at = next;
  }
  const auto tail = 2 + draw(rng, 2);
  for (std::size_t k = 0; k < tail; ++k) {
    parent.push_back(at);
    w.push_back(sample(rng));
  }
  return assemble(parent, std::move(w), spec.budget, true);
}

Instance lower_bound_branches(const GeneratorSpec& spec) {
  if (!spec.budget) throw PreconditionFailed("lower-bound-branches needs a budget");
  const auto& b = *spec.budget;
  if (b <= Weight(1)) throw PreconditionFailed("budget must exceed 1");
  const Weight quarter = b / Weight(4);
  const std::vector<EdgeSpec> edges{{"r", "a", quarter}, {"r", "b", quarter}, {"r", "c", b / Weight(2)}};
  return Instance(b, edges);
}

}  // namespace

std::optional<Family> family_from_string(std::string_view name) {
  for (const auto& [f, n] : kFamilies) {
    if (n == name) return f;
  }
  return std::nullopt;
}

std::string to_string(Family family) {
  for (const auto& [f, n] : kFamilies) {
    if (f == family) return std::string(n);
  }
  return "?";
}

Instance generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::random: return random_tree(spec);
    case Family::star: return star(spec);
    case Family::caterpillar: return caterpillar(spec);
    case Family::heavy_path: return heavy_path_tree(spec);
    case Family::subdivided: return subdivide_for_pdfs(random_tree(spec));
    case Family::lower_bound_branches: return lower_bound_branches(spec);
  }
  throw PreconditionFailed("unknown family");
}

Instance subdivide_for_pdfs(const Instance& tree) {
  Instance current = tree;
  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < tree.size(); ++i) names.insert(tree.name(node_at(i)));
  std::size_t counter = 0;
  for (;;) {
    const auto tour = dfs_tour(current);
    const auto trace = pdfs(current, tour);
    std::optional<std::size_t> short_route;
    for (std::size_t i = 0; i + 1 < trace.route_count(); ++i) {
      if (trace.lengths[i] < current.budget()) {
        short_route = i;
        break;
      }
    }
    if (!short_route) return current;
    // A route never stops before an ascent (ascents keep the reach constant),
    // so the next tour step descends into `below` and is too long by itself.
    const auto stop = trace.stops[*short_route + 1];
    const auto below = tour.vertices[stop + 1];
    const auto offset = (current.budget() - trace.lengths[*short_route]) / Weight(2);
    std::string mid;
    do {
      mid = "s" + std::to_string(++counter);
    } while (names.contains(mid));
    names.insert(mid);
    std::vector<EdgeSpec> edges;
    for (const auto& e : current.edges()) {
      if (e.child == current.name(below)) {
        edges.push_back({e.parent, mid, offset});
        edges.push_back({mid, e.child, e.weight - offset});
      } else {
        edges.push_back(e);
      }
    }
    current = Instance(current.budget(), edges);
  }
}

namespace {

// Unordered weighted rooted trees up to isomorphism. A tree is a sorted
// multiset of branch ids; branch (w, t) has 1 + |t| edges. Branch ids are
// assigned in order of size, so canonical multisets are non-decreasing id
// sequences.
struct Catalog {
  std::vector<std::vector<std::vector<std::size_t>>> trees;  // by edge count
  struct Branch {
    std::size_t size;
    std::size_t weight;
    std::size_t subtree;  // index into trees[size - 1]
  };
  std::vector<Branch> branches;

  Catalog(std::size_t max_edges, std::size_t weight_count) {
    trees.resize(max_edges + 1);
    trees[0].push_back({});
    for (std::size_t n = 1; n <= max_edges; ++n) {
      for (std::size_t t = 0; t < trees[n - 1].size(); ++t) {
        for (std::size_t w = 0; w < weight_count; ++w) branches.push_back({n, w, t});
      }
      std::vector<std::size_t> current;
      const std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t from, std::size_t left) {
        if (left == 0) {
          trees[n].push_back(current);
          return;
        }
        for (std::size_t b = from; b < branches.size() && branches[b].size <= left; ++b) {
          current.push_back(b);
          extend(b, left - branches[b].size);
          current.pop_back();
        }
      };
      extend(0, n);
    }
  }
};

}  // namespace

std::vector<Instance> exhaustive_corpus(std::size_t max_edges, const std::vector<Weight>& weights) {
  const Catalog catalog(max_edges, weights.size());
  std::vector<Instance> out;
  for (std::size_t n = 1; n <= max_edges; ++n) {
    for (const auto& tree : catalog.trees[n]) {
      std::vector<std::size_t> parent{0};
      std::vector<Weight> w{Weight(0)};
      const std::function<void(std::size_t, const std::vector<std::size_t>&)> build =
          [&](std::size_t at, const std::vector<std::size_t>& branch_ids) {
            for (auto b : branch_ids) {
              const auto& br = catalog.branches[b];
              parent.push_back(at);
              w.push_back(weights[br.weight]);
              build(parent.size() - 1, catalog.trees[br.size - 1][br.subtree]);
            }
          };
      build(0, tree);
      out.push_back(assemble(parent, std::move(w), std::nullopt, false));
    }
  }
  return out;
}

std::vector<Instance> random_corpus(std::size_t count, std::uint64_t seed, std::size_t max_edges,
                                    std::size_t max_leaves, long max_weight) {
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(seed + i);
    GeneratorSpec spec;
    spec.seed = rng();
    spec.size = 1 + draw(rng, max_edges);
    spec.max_leaves = max_leaves;
    spec.weight_min = Weight(1);
    spec.weight_max = Weight(max_weight);
    const auto base = random_tree(spec);
    const auto h = base.height();
    const auto extra = draw(rng, static_cast<std::uint64_t>(h.ceil().raw().get_num().get_ui()) + 1);
    out.push_back(base.with_budget(Weight(2) * h + Weight(static_cast<long>(extra))));
  }
  return out;
}

}  // namespace ecte
