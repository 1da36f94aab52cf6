#include "ecte/certificates.hpp"

#include <algorithm>
#include <sstream>

namespace ecte {

HeavyPathReport heavy_path(const Instance& tree, std::size_t leaf_cap) {
  const auto heavy = classify(tree);
  if (!heavy.tree_heavy()) throw PreconditionFailed("tree is light");
  if (heavy.degree(tree.root()) != 1) {
    throw PreconditionFailed("heavydeg(root) = " + std::to_string(heavy.degree(tree.root())) + ", expected 1");
  }
  HeavyPathReport report;
  report.phi_root = potential(tree, tree.root());
  auto v = tree.root();
  report.path.push_back(v);
  while (heavy.degree(v) == 1) {
    NodeId next{};
    for (auto c : tree.children(v)) {
      if (heavy.heavy_edge(c)) {
        next = c;
      } else {
        report.light_edges.push_back({c, potential(tree, v), tree.parent_weight(c) + tree.subtree_weight(c)});
      }
    }
    report.path_weight += tree.parent_weight(next);
    v = next;
    report.path.push_back(v);
  }
  report.r_prime = v;
  report.phi_r_prime = potential(tree, v);
  std::stable_sort(report.light_edges.begin(), report.light_edges.end(),
                   [](const LightEdge& a, const LightEdge& b) { return a.potential < b.potential; });
  for (std::size_t i = 1; i < report.light_edges.size(); ++i) {
    if (report.light_edges[i].potential == report.light_edges[i - 1].potential) report.potential_ties = true;
  }
  report.w0 = opt_cost(subtree_instance(tree, v), leaf_cap).cost / Weight(2);
  return report;
}

YSequence y_sequence(const HeavyPathReport& report) {
  if (report.potential_ties) throw PreconditionFailed("light-edge potentials tie; rearrange the tree first");
  // (potential, weight) with w_0 at φ_0, ascending
  std::vector<std::pair<Weight, Weight>> levels{{report.phi_r_prime, report.w0}};
  Weight total = report.w0;
  for (const auto& e : report.light_edges) {
    levels.emplace_back(e.potential, e.weight);
    total += e.weight;
  }
  YSequence out;
  Weight sum;
  while (sum < total) {
    Weight below;
    for (const auto& [phi, w] : levels) {
      below += w;
      if (below > sum) {
        out.values.push_back(phi);
        sum += phi;
        break;
      }
    }
  }
  out.d = out.values.size();
  return out;
}

namespace {

std::vector<std::size_t> path_levels(const Instance& tree, const HeavyPathReport& report) {
  // position on P + 1, or 0 when off the path
  std::vector<std::size_t> at(tree.size(), 0);
  for (std::size_t i = 0; i < report.path.size(); ++i) at[idx(report.path[i])] = i + 1;
  return at;
}

Weight lowest_on_path(const Instance& tree, const Route& route, const std::vector<std::size_t>& levels,
                      const HeavyPathReport& report) {
  std::size_t deepest = 1;
  for (auto v : route.vertices) deepest = std::max(deepest, levels[idx(v)]);
  return potential(tree, report.path[deepest - 1]);
}

struct Regions {
  EdgeSet light;
  EdgeSet deep;
  EdgeSet path;
};

Regions regions(const Instance& tree, const HeavyPathReport& report) {
  Regions r{EdgeSet(tree), EdgeSet(tree), EdgeSet(tree)};
  for (const auto& e : report.light_edges) {
    r.light.insert(e.lower);
    r.light.insert_subtree(tree, e.lower);
  }
  r.deep.insert_subtree(tree, report.r_prime);
  r.path.insert_path(tree, report.path);
  return r;
}

}  // namespace

std::vector<Weight> x_sequence(const Instance& tree, const Strategy& strategy, const HeavyPathReport& report) {
  const auto levels = path_levels(tree, report);
  std::vector<Weight> xs;
  for (const auto& route : strategy.routes) xs.push_back(lowest_on_path(tree, route, levels, report));
  std::sort(xs.begin(), xs.end());
  return xs;
}

std::vector<Weight> z_sequence(const Instance& tree, const PdfsTrace& trace, const HeavyPathReport& report) {
  const auto levels = path_levels(tree, report);
  std::vector<Weight> zs;
  for (const auto& route : trace.strategy.routes) {
    if (route_visits(route, report.r_prime)) break;
    zs.push_back(lowest_on_path(tree, route, levels, report));
  }
  std::reverse(zs.begin(), zs.end());
  return zs;
}

OptDecomposition decompose_opt_cost(const Instance& tree, const Strategy& strategy, const HeavyPathReport& report) {
  const auto reg = regions(tree, report);
  OptDecomposition out;
  for (const auto& route : strategy.routes) {
    out.light += restricted_length(tree, route, reg.light);
    out.deep += restricted_length(tree, route, reg.deep);
    auto on_path = restricted_length(tree, route, reg.path);
    (route_visits(route, report.r_prime) ? out.flat : out.path) += on_path;
  }
  return out;
}

AdfsDecomposition decompose_adfs_cost(const Instance& tree, const Strategy& strategy,
                                      const HeavyPathReport& report) {
  const auto reg = regions(tree, report);
  const auto& routes = strategy.routes;
  std::size_t first = routes.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < routes.size(); ++i) {
    if (!route_visits(routes[i], report.r_prime)) continue;
    first = std::min(first, i);
    last = i;
  }
  AdfsDecomposition out;
  for (std::size_t i = 0; i < routes.size(); ++i) {
    out.light += restricted_length(tree, routes[i], reg.light);
    out.deep += restricted_length(tree, routes[i], reg.deep);
    auto on_path = restricted_length(tree, routes[i], reg.path);
    if (i < first) {
      out.desc += on_path;
    } else if (i <= last) {
      out.flat += on_path;
    } else {
      out.asc += on_path;
    }
  }
  return out;
}

bool CertificateReport::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::fail; });
}

const Check* CertificateReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::size_t CertificateReport::count(CheckStatus status) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [&](const Check& c) { return c.status == status; }));
}

namespace {

Check compare(std::string name, const Weight& lhs, std::string relation, const Weight& rhs, std::string note = {}) {
  bool holds = false;
  if (relation == "<") holds = lhs < rhs;
  if (relation == "<=") holds = lhs <= rhs;
  if (relation == "==") holds = lhs == rhs;
  if (relation == ">=") holds = lhs >= rhs;
  return {std::move(name), holds ? CheckStatus::pass : CheckStatus::fail, render(lhs), std::move(relation), render(rhs),
          std::move(note)};
}

Check skipped(std::string name, std::string reason) {
  return {std::move(name), CheckStatus::skipped, {}, {}, {}, std::move(reason)};
}

std::string join(const std::vector<Weight>& values) {
  std::string s = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ",";
    s += values[i].str();
  }
  return s + ")";
}

Weight adfs_cost(const Instance& tree, const EulerTour& tour) { return adversarial_dfs(tree, tour).trace.cost(); }

// Additivity over downward edges at every internal node, reported once with
// the root's values or the first failing node.
void decomposition_checks(const Instance& tree, const EulerTour& tour, std::size_t cap, CertificateReport& report) {
  std::optional<Check> opt_failure;
  std::optional<Check> adfs_failure;
  std::optional<Check> opt_root;
  std::optional<Check> adfs_root;
  std::size_t nodes = 0;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const auto v = node_at(i);
    if (tree.is_leaf(v)) continue;
    ++nodes;
    const auto sub = subtree_instance(tree, v);
    const auto sub_tour = project_tour(tree, tour, sub);
    Weight opt_sum, adfs_sum;
    for (auto c : tree.children(v)) {
      const auto edge = edge_subtree_instance(tree, c);
      opt_sum += opt_cost(edge, cap).cost;
      adfs_sum += adfs_cost(edge, project_tour(tree, tour, edge));
    }
    auto opt_check = compare("opt-additivity", opt_cost(sub, cap).cost, "==", opt_sum, "at " + tree.name(v));
    auto adfs_check = compare("adfs-subadditivity", adfs_cost(sub, sub_tour), "<=", adfs_sum, "at " + tree.name(v));
    if (opt_check.status == CheckStatus::fail && !opt_failure) opt_failure = opt_check;
    if (adfs_check.status == CheckStatus::fail && !adfs_failure) adfs_failure = adfs_check;
    if (tree.is_root(v)) {
      opt_root = opt_check;
      adfs_root = adfs_check;
    }
  }
  const auto suffix = " (" + std::to_string(nodes) + " internal nodes)";
  auto pick = [&](std::optional<Check>& failure, std::optional<Check>& root) {
    auto c = failure ? *failure : *root;
    c.note += suffix;
    report.checks.push_back(std::move(c));
  };
  pick(opt_failure, opt_root);
  pick(adfs_failure, adfs_root);
}

void heavy_path_checks(const Instance& tree, const OptimalSolution& opt,
                       const AdversarialOutcome& adfs, std::size_t cap, CertificateReport& report) {
  const auto hp = heavy_path(tree, cap);
  const auto xs = x_sequence(tree, opt.witness, hp);
  const std::size_t c = xs.size();
  report.checks.push_back(
      {"heavy-path", CheckStatus::pass, {}, {}, {},
       "r'=" + tree.name(hp.r_prime) + " w(P)=" + hp.path_weight.str() + " w0=" + hp.w0.str() +
           " light edges=" + std::to_string(hp.light_edges.size()) + " x=" + join(xs) + " (sorted)"});

  // covering budget of the first j-1 optimal routes, j = 1..c+1
  {
    std::optional<Check> failure;
    Weight covered, budget;
    for (std::size_t j = 1; j <= c + 1; ++j) {
      covered = Weight(0);
      const bool unbounded = j == c + 1;
      if (unbounded || hp.phi_r_prime < xs[j - 1]) covered += hp.w0;
      for (const auto& e : hp.light_edges) {
        if (unbounded || e.potential < xs[j - 1]) covered += e.weight;
      }
      if (j > 1) budget += xs[j - 2];
      auto check = compare("route-cover-budget", covered, "<=", budget, "j=" + std::to_string(j));
      if (check.status == CheckStatus::fail) {
        failure = std::move(check);
        break;
      }
    }
    report.checks.push_back(failure ? *failure
                                    : compare("route-cover-budget", covered, "<=", budget,
                                              "all j up to c+1=" + std::to_string(c + 1)));
  }

  const auto opt_parts = decompose_opt_cost(tree, opt.witness, hp);
  const auto adfs_parts = decompose_adfs_cost(tree, adfs.trace.strategy, hp);
  report.checks.push_back(compare("opt-decomposition-sum", opt_parts.total(), "==", opt.cost,
                                  "light=" + opt_parts.light.str() + " deep=" + opt_parts.deep.str() +
                                      " path=" + opt_parts.path.str() + " flat=" + opt_parts.flat.str()));
  report.checks.push_back(compare("adfs-decomposition-sum", adfs_parts.total(), "==", adfs.trace.cost(),
                                  "light=" + adfs_parts.light.str() + " deep=" + adfs_parts.deep.str() +
                                      " desc=" + adfs_parts.desc.str() + " flat=" + adfs_parts.flat.str() +
                                      " asc=" + adfs_parts.asc.str()));

  const auto& phi0 = hp.phi_r_prime;
  report.checks.push_back(
      compare("flat-lower-bound", opt_parts.flat, ">=", hp.path_weight / phi0 * opt_parts.deep));
  const Weight deep_ratio = adfs_parts.deep / (Weight(2) * phi0);
  report.checks.push_back(compare("flat-upper-bound", adfs_parts.flat, "<=",
                                  Weight(2) * hp.path_weight * (deep_ratio + Weight(1)).ceil()));
  report.checks.push_back(compare("flat-upper-bound-relaxed", adfs_parts.flat, "<=",
                                  Weight(4) * hp.path_weight + hp.path_weight * adfs_parts.deep / phi0));
  std::size_t containing = 0;
  for (const auto& r : adfs.trace.strategy.routes) containing += route_visits(r, hp.r_prime) ? 1 : 0;
  report.checks.push_back(compare("flat-route-count", Weight(containing), "<=", deep_ratio.ceil() + Weight(1),
                                  "routes of the adversarial run containing r'"));

  const auto zs = z_sequence(tree, adfs.trace, hp);
  {
    bool ordered = zs.empty() || zs.front() > phi0;
    for (std::size_t i = 1; i < zs.size(); ++i) ordered = ordered && zs[i - 1] <= zs[i];
    ordered = ordered && (zs.empty() || zs.back() <= hp.phi_root);
    report.checks.push_back({"z-ordering", ordered ? CheckStatus::pass : CheckStatus::fail, join(zs), "in",
                             "(" + phi0.str() + ", " + hp.phi_root.str() + "] non-decreasing", {}});
  }

  if (hp.potential_ties) {
    for (auto name : {"greedy-length", "greedy-dominance", "two-step"}) {
      report.checks.push_back(skipped(name, "light-edge potentials tie"));
    }
    return;
  }
  const auto ys = y_sequence(hp);
  report.checks.push_back(compare("greedy-length", Weight(ys.d), "<=", Weight(c), "y=" + join(ys.values)));
  {
    std::optional<Check> failure;
    for (std::size_t j = 0; j < std::min(ys.d, c) && !failure; ++j) {
      auto check = compare("greedy-dominance", ys.values[j], ">=", xs[j], "j=" + std::to_string(j + 1));
      if (check.status == CheckStatus::fail) failure = std::move(check);
    }
    if (failure) {
      report.checks.push_back(*failure);
    } else {
      report.checks.push_back(
          {"greedy-dominance", CheckStatus::pass, join(ys.values), ">=", join(xs), "componentwise up to d"});
    }
  }
  {
    std::optional<Check> failure;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i + 1 < zs.size() && !failure; ++i) {
      for (std::size_t j = 0; j + 1 < ys.d && !failure; ++j) {
        if (!(zs[i] > ys.values[j])) continue;
        ++pairs;
        if (zs[i + 1] < ys.values[j + 1]) {
          failure = Check{"two-step", CheckStatus::fail, zs[i + 1].str(), ">=", ys.values[j + 1].str(),
                          "z_" + std::to_string(i + 1) + "=" + zs[i].str() + " > y_" + std::to_string(j + 1) + "=" +
                              ys.values[j].str()};
        }
      }
    }
    if (failure) {
      report.checks.push_back(*failure);
    } else {
      report.checks.push_back({"two-step", CheckStatus::pass, "z=" + join(zs), "=>", "y=" + join(ys.values),
                               std::to_string(pairs) + " premises checked"});
    }
  }
}

}  // namespace

CertificateReport check_inequalities(const Instance& tree, const CertificateOptions& options) {
  CertificateReport report;
  const auto cap = options.leaf_cap;
  const auto& factor = options.bound_factor;
  const auto tour = dfs_tour(tree, options.order);
  const auto pd = pdfs(tree, tour);
  const auto adfs = adversarial_dfs(tree, tour);
  const auto best = opt_cost(tree, cap);
  const auto fewest = opt_routes(tree, cap);
  const auto heavy = classify(tree);
  const Weight ten(10);
  const auto& phi = potential(tree, tree.root());

  report.checks.push_back(compare("adfs-dominates-pdfs", pd.cost(), "<=", adfs.trace.cost()));
  report.checks.push_back(compare("cost-ratio", adfs.trace.cost(), "<=", factor * ten * best.cost));
  report.checks.push_back(
      compare("route-ratio", Weight(pd.route_count()), "<=", factor * ten * Weight(fewest.routes)));
  report.checks.push_back(compare("route-count-lower-bound", Weight(fewest.routes), ">=",
                                  (best.cost / tree.budget()).ceil()));

  if (heavy.tree_heavy()) {
    report.checks.push_back(skipped("light-ratio", "tree is heavy"));
  } else {
    report.checks.push_back(compare("light-ratio", adfs.trace.cost(), "<", Weight(2) * best.cost));
  }
  {
    // maximal light edge subtrees: light edges below a heavy vertex
    std::optional<Check> failure;
    std::size_t count = 0;
    for (std::size_t i = 1; i < tree.size() && !failure; ++i) {
      const auto v = node_at(i);
      if (heavy.heavy_edge(v) || !heavy.heavy(tree.parent(v))) continue;
      ++count;
      const auto edge = edge_subtree_instance(tree, v);
      auto check = compare("light-subtree-ratio", adfs_cost(edge, project_tour(tree, tour, edge)), "<",
                           Weight(2) * opt_cost(edge, cap).cost, "edge to " + tree.name(v));
      if (check.status == CheckStatus::fail) failure = std::move(check);
    }
    if (failure) {
      report.checks.push_back(*failure);
    } else if (count == 0) {
      report.checks.push_back(skipped("light-subtree-ratio", "no light edge below a heavy vertex"));
    } else {
      report.checks.push_back({"light-subtree-ratio", CheckStatus::pass, {}, {}, {},
                               std::to_string(count) + " light edge subtrees"});
    }
  }

  decomposition_checks(tree, tour, cap, report);

  if (!heavy.tree_heavy()) {
    report.checks.push_back(skipped("heavy-bound", "tree is light"));
  } else {
    const auto deg = heavy.degree(tree.root());
    const Weight slack = deg == 1 ? Weight(8) : Weight(16);
    report.checks.push_back(compare("heavy-bound", adfs.trace.cost(), "<", factor * ten * best.cost - slack * phi,
                                    "heavydeg(root)=" + std::to_string(deg)));
  }

  if (heavy.tree_heavy() && heavy.degree(tree.root()) == 1) {
    heavy_path_checks(tree, best, adfs, cap, report);
  } else {
    report.checks.push_back(skipped("heavy-path", "needs a heavy tree with heavydeg(root)=1"));
  }
  return report;
}

std::string format_report(const CertificateReport& report) {
  std::ostringstream os;
  for (const auto& c : report.checks) {
    switch (c.status) {
      case CheckStatus::pass: os << "PASS "; break;
      case CheckStatus::fail: os << "FAIL "; break;
      case CheckStatus::skipped: os << "SKIP "; break;
    }
    os << c.name;
    if (!c.relation.empty()) os << ": " << c.lhs << ' ' << c.relation << ' ' << c.rhs;
    if (!c.note.empty()) os << (c.relation.empty() ? ": " : " ; ") << c.note;
    os << '\n';
  }
  return os.str();
}

}  // namespace ecte
