#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "ecte/certificates.hpp"
#include "ecte/instances.hpp"
#include "ecte/online.hpp"
#include "ecte/oracle.hpp"
#include "ecte/piecemeal.hpp"
#include "ecte/rearrange.hpp"
#include "ecte/traversal.hpp"

namespace {

using namespace ecte;

constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Weight weight_arg(const std::string& text, const char* flag) {
  try {
    return Weight::parse(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": bad number '" + text + "'");
  }
}

ChildOrder order_arg(const std::string& order, std::uint64_t seed) {
  if (order == "file") return FileOrder{};
  if (order == "lex") return LexicographicOrder{};
  if (order == "random") return SeededRandomOrder{seed};
  throw UsageError("--order must be file, lex or random");
}

void header(std::ostream& os, const std::string& echo, const Instance& tree) {
  os << "command: " << echo << "\n";
  os << "instance: " << digest(tree) << " nodes=" << tree.size() << " leaves=" << tree.leaves().size()
     << " B=" << render(tree.budget()) << "\n";
}

void print_routes(std::ostream& os, const Instance& tree, const Strategy& s, const std::vector<Weight>& lengths) {
  for (std::size_t i = 0; i < s.routes.size(); ++i) {
    os << "route " << i + 1 << ": " << format_route(tree, s.routes[i]) << " length " << render(lengths[i]) << "\n";
  }
}

void print_trace(std::ostream& os, const Instance& tree, const PdfsTrace& trace) {
  print_routes(os, tree, trace.strategy, trace.lengths);
  os << "routes: " << trace.route_count() << "\n";
  os << "cost: " << render(trace.cost()) << "\n";
}

std::vector<Weight> lengths_of(const Instance& tree, const Strategy& s) {
  std::vector<Weight> out;
  for (const auto& r : s.routes) out.push_back(route_length(tree, r));
  return out;
}

struct Common {
  std::string file;
  std::string order = "file";
  std::uint64_t seed = 0;
};

void add_order(CLI::App* cmd, Common& c) {
  cmd->add_option("--order", c.order, "child order: file, lex or random")->check(CLI::IsMember({"file", "lex", "random"}));
  cmd->add_option("--seed", c.seed, "seed for --order random");
}

int run_explore(const Common& c, const std::string& echo, std::ostream& os) {
  const auto tree = load_instance(c.file);
  const auto tour = dfs_tour(tree, order_arg(c.order, c.seed));
  header(os, echo, tree);
  os << "order: " << tour.policy << "\n";
  print_trace(os, tree, pdfs(tree, tour));
  return kOk;
}

int run_adversarial(const Common& c, const std::optional<std::string>& bprime, bool max, const std::string& echo,
                    std::ostream& os) {
  if (bprime.has_value() == max) throw UsageError("give exactly one of --bprime and --max");
  const auto tree = load_instance(c.file);
  const auto tour = dfs_tour(tree, order_arg(c.order, c.seed));
  header(os, echo, tree);
  os << "order: " << tour.policy << "\n";
  if (max) {
    const auto out = adversarial_dfs(tree, tour);
    os << "thresholds:";
    for (const auto& t : thresholds(tree, tour).values) os << ' ' << t.str();
    os << "\n";
    os << "first budget: " << render(out.first_budget) << " (smallest maximizer)\n";
    print_trace(os, tree, out.trace);
  } else {
    const auto b = weight_arg(*bprime, "--bprime");
    if (b.sign() < 0 || b > tree.budget()) throw UsageError("--bprime must lie in [0, B]");
    os << "first budget: " << render(b) << "\n";
    print_trace(os, tree, adversarial_pdfs(tree, tour, b));
  }
  return kOk;
}

int run_optimal(const Common& c, const std::string& objective, const std::string& echo, std::ostream& os) {
  const auto tree = load_instance(c.file);
  header(os, echo, tree);
  const auto sol = objective == "routes" ? opt_routes(tree) : opt_cost(tree);
  os << "objective: " << objective << "\n";
  print_routes(os, tree, sol.witness, lengths_of(tree, sol.witness));
  os << "routes: " << sol.routes << "\n";
  os << "cost: " << render(sol.cost) << "\n";
  return kOk;
}

int run_certify(const Common& c, const std::string& factor, const std::string& echo, std::ostream& os) {
  const auto tree = load_instance(c.file);
  header(os, echo, tree);
  CertificateOptions options;
  options.order = order_arg(c.order, c.seed);
  options.bound_factor = weight_arg(factor, "--bound-factor");
  const auto report = check_inequalities(tree, options);
  os << format_report(report);
  os << "summary: " << report.count(CheckStatus::pass) << " pass, " << report.count(CheckStatus::fail) << " fail, "
     << report.count(CheckStatus::skipped) << " skipped\n";
  return report.ok() ? kOk : kViolated;
}

int run_rearrange(const Common& c, const std::string& epsilon, const std::string& output, const std::string& echo,
                  std::ostream& os) {
  const auto tree = load_instance(c.file);
  header(os, echo, tree);
  const auto eps = epsilon == "auto" ? compute_epsilon(tree) : weight_arg(epsilon, "--epsilon");
  os << "epsilon: " << render(eps) << (epsilon == "auto" ? " (auto)" : "") << "\n";
  const auto result = build_t_prime(tree, eps);
  if (!result.changed()) {
    os << "no vertex with heavydeg 1 and two or more light edges; tree unchanged\n";
  }
  for (const auto& u : result.processed) os << "split: " << u << "\n";
  for (const auto& m : result.moved) {
    os << "moved: " << m.child << " under " << m.new_parent << " weight " << render(m.weight) << "\n";
  }
  os << "note: light edges are spread along the subdivided heavy edge below u\n";
  const auto cond = verify_conditions(tree, result);
  os << "P1: " << (cond.p1 ? "pass" : "fail") << (cond.p1_witness ? " at " + *cond.p1_witness : "") << "\n";
  os << "P2: " << (cond.p2 ? "pass" : "fail") << "\n";
  os << "skinny: " << (cond.skinny ? "yes" : "no") << "\n";
  if (!cond.p3) {
    os << "P3: skipped (leaf cap)\n";
  } else {
    os << "P3: " << (*cond.p3 ? "pass" : "fail") << " (" << cond.p3_routes_checked << " potential routes, "
       << cond.p3_flips << " verdict flips, " << cond.p3_flips_at_subdivisions << " ending at subdivision vertices)\n";
    if (cond.p3_counterexample) {
      const auto& cx = *cond.p3_counterexample;
      const auto& r = cx.strategy.routes.front();
      os << "  counterexample route: leaves";
      for (auto l : r.leaves) os << ' ' << result.tree.name(l);
      os << " anchor " << result.tree.name(r.anchor) << "; length " << render(cx.length_in_t) << " in T, "
         << render(cx.length_in_t_prime) << " in T'; bound "
         << render(cx.first_budget ? *cx.first_budget : tree.budget()) << "\n";
    }
  }
  const auto bounds = perturbation_bounds(tree, result);
  os << "adfs: " << render(bounds.adfs_t) << " <= " << render(bounds.adfs_t_prime) << " + " << render(bounds.slack)
     << (bounds.adfs_ok() ? " pass" : " FAIL") << "\n";
  os << "potential: " << render(bounds.phi_t_prime) << " <= " << render(bounds.phi_t)
     << (bounds.phi_ok() ? " pass" : " FAIL") << "\n";
  os << "opt: " << render(bounds.opt_t_prime) << " <= " << render(bounds.opt_t) << (bounds.opt_ok() ? " pass" : " FAIL")
     << "\n";
  const auto mismatch = adfs_order_mismatch(tree, result);
  os << "adfs visit order: " << (mismatch ? "differs at B'=" + mismatch->str() : std::string("identical")) << "\n";
  if (!output.empty()) {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw Error("cannot write '" + output + "'");
    out << serialize(result.tree);
  } else {
    os << "--- T'\n" << serialize(result.tree);
  }
  return kOk;
}

int run_simulate(const Common& c, const std::string& policy, const std::string& echo, std::ostream& os) {
  const auto tree = load_instance(c.file);
  header(os, echo, tree);
  OnlinePolicy p = RevealOrderPolicy{};
  if (policy == "random") p = RandomChildPolicy{c.seed};
  const auto sim = simulate(tree, p);
  os << "policy: " << describe(p) << "\n";
  for (const auto& e : sim.log.events) {
    os << "reveal step " << e.step << ": " << tree.name(e.node);
    for (const auto& edge : e.edges) os << ' ' << tree.name(edge.child) << '=' << edge.weight.str();
    os << "\n";
  }
  print_routes(os, tree, sim.strategy, sim.lengths);
  Weight cost;
  for (const auto& l : sim.lengths) cost += l;
  os << "routes: " << sim.strategy.routes.size() << "\n";
  os << "recharges: " << sim.log.recharges << "\n";
  os << "cost: " << render(cost) << "\n";
  os << "gate violations: " << sim.violations << "\n";
  const auto offline = pdfs(tree, tour_from_vertices(tree, sim.tour, describe(p)));
  const bool same = offline.strategy == sim.strategy;
  os << "offline pdfs on induced tour: " << (same ? "identical" : "DIFFERENT") << "\n";
  return same && sim.violations == 0 ? kOk : kViolated;
}

struct RatioRow {
  std::string line;
};

RatioRow ratio_row(const Instance& tree) {
  const auto tour = dfs_tour(tree);
  const auto pd = pdfs(tree, tour);
  const auto adfs = adversarial_dfs(tree, tour).trace.cost();
  const auto best = opt_cost(tree);
  const auto fewest = opt_routes(tree);
  std::ostringstream os;
  os << digest(tree) << ',' << tree.size() << ',' << tree.leaves().size() << ',' << tree.budget().str() << ','
     << pd.cost().str() << ',' << adfs.str() << ',' << best.cost.str() << ',' << pd.route_count() << ','
     << fewest.routes << ',' << (pd.cost() / best.cost).exact() << ','
     << (Weight(pd.route_count()) / Weight(fewest.routes)).exact();
  return {os.str()};
}

int run_ratio(std::size_t count, std::uint64_t seed, std::size_t max_leaves, std::size_t max_edges,
              std::size_t threads, std::ostream& os) {
  if (max_leaves == 0 || max_leaves > kOptimumLeafCap) {
    throw UsageError("--max-leaves must be in 1.." + std::to_string(kOptimumLeafCap));
  }
  const auto corpus = random_corpus(count, seed, max_edges, max_leaves, 5);
  std::vector<RatioRow> rows(corpus.size());
  std::atomic<std::size_t> next{0};
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, corpus.size()));
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_lock;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < corpus.size();) {
        try {
          rows[i] = ratio_row(corpus[i]);
        } catch (...) {
          std::lock_guard lock(failure_lock);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  os << "# seed=" << seed << " count=" << count << " max-leaves=" << max_leaves << " max-edges=" << max_edges << "\n";
  os << "digest,n,leaves,B,pdfs_cost,adfs_cost,opt_cost,pdfs_routes,opt_routes,cost_ratio,route_ratio\n";
  for (const auto& r : rows) os << r.line << "\n";
  return kOk;
}

int run_verify(const Common& c, const std::string& factor, const std::string& echo, std::ostream& os) {
  const auto tree = load_instance(c.file);
  header(os, echo, tree);
  const auto order = order_arg(c.order, c.seed);
  const auto tour = dfs_tour(tree, order);
  bool ok = true;
  auto line = [&](bool pass, const std::string& name, const std::string& detail) {
    ok = ok && pass;
    os << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
  };
  line(tour.length() == Weight(2) * tree.total_weight(), "tour-length",
       render(tour.length()) + " == 2*" + render(tree.total_weight()));
  const auto pd = pdfs(tree, tour);
  line(is_feasible(validate_strategy(tree, pd.strategy)), "pdfs-feasible", std::to_string(pd.route_count()) + " routes");
  {
    std::vector<NodeId> joined;
    for (const auto& seg : progress_segments(tour, pd)) {
      joined.insert(joined.end(), seg.begin() + (joined.empty() ? 0 : 1), seg.end());
    }
    line(joined == tour.vertices, "progress-segments", "concatenation reproduces the tour");
  }
  const auto adfs = adversarial_dfs(tree, tour);
  {
    Weight grid_max;
    for (int i = 0; i < 1000; ++i) {
      const auto b = tree.budget() * Weight::ratio(i, 999);
      const auto c2 = adversarial_pdfs(tree, tour, b).cost();
      if (c2 > grid_max) grid_max = c2;
    }
    line(grid_max == adfs.trace.cost(), "threshold-grid",
         render(adfs.trace.cost()) + " == max over 1000 budgets " + render(grid_max));
  }
  {
    const auto sim = simulate(tree, RevealOrderPolicy{});
    line(sim.violations == 0 && sim.strategy == pdfs(tree, tour_from_vertices(tree, sim.tour, "online")).strategy,
         "online-equivalence", std::to_string(sim.strategy.routes.size()) + " routes, " +
                                   std::to_string(sim.violations) + " gate violations");
  }
  CertificateOptions options;
  options.order = order;
  options.bound_factor = weight_arg(factor, "--bound-factor");
  const auto report = check_inequalities(tree, options);
  os << format_report(report);
  ok = ok && report.ok();
  os << "verdict: " << (ok ? "all checks hold" : "violated") << "\n";
  return ok ? kOk : kViolated;
}

struct GenArgs {
  std::string family = "random";
  std::uint64_t seed = 0;
  std::size_t size = 6;
  std::size_t max_leaves = 0;
  std::string weight_min = "1";
  std::string weight_max = "3";
  std::size_t weight_steps = 0;
  std::string length = "5";
  std::string budget;
  std::string output;
};

int run_gen(const GenArgs& a, std::ostream& os) {
  GeneratorSpec spec;
  const auto family = family_from_string(a.family);
  if (!family) throw UsageError("unknown family '" + a.family + "'");
  spec.family = *family;
  spec.seed = a.seed;
  spec.size = a.size;
  spec.max_leaves = a.max_leaves;
  spec.weight_min = weight_arg(a.weight_min, "--weight-min");
  spec.weight_max = weight_arg(a.weight_max, "--weight-max");
  spec.weight_steps = a.weight_steps;
  spec.length = weight_arg(a.length, "--length");
  if (!a.budget.empty()) spec.budget = weight_arg(a.budget, "--budget");
  const auto tree = generate(spec);
  const auto text = "# family=" + a.family + " seed=" + std::to_string(a.seed) + "\n" + serialize(tree);
  if (a.output.empty()) {
    os << text;
  } else {
    std::ofstream out(a.output, std::ios::binary);
    if (!out) throw Error("cannot write '" + a.output + "'");
    out << text;
  }
  return kOk;
}

std::string echo_of(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-constrained tree exploration toolkit"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "print wall-clock time at the end");

  Common common;
  auto add_file = [&](CLI::App* cmd) { cmd->add_option("instance", common.file, "instance file")->required(); };

  auto* explore = app.add_subcommand("explore", "piecemeal DFS");
  add_file(explore);
  add_order(explore, common);

  auto* adversarial = app.add_subcommand("adversarial", "first route capped at B'");
  add_file(adversarial);
  add_order(adversarial, common);
  std::optional<std::string> bprime;
  bool max = false;
  adversarial->add_option("--bprime", bprime, "first-route budget");
  adversarial->add_flag("--max", max, "maximize cost over all first-route budgets");

  auto* optimal = app.add_subcommand("optimal", "exact optimum by leaf partitions");
  add_file(optimal);
  std::string objective = "cost";
  optimal->add_option("--objective", objective)->check(CLI::IsMember({"cost", "routes"}));

  std::string factor = "1";
  auto* certify = app.add_subcommand("certify", "cost-analysis inequality suite");
  add_file(certify);
  add_order(certify, common);
  certify->add_option("--bound-factor", factor, "scale the ratio bounds (values below 1 inject violations)");

  auto* rearrange = app.add_subcommand("rearrange", "skinny-tree rearrangement");
  add_file(rearrange);
  std::string epsilon = "auto";
  std::string output;
  rearrange->add_option("--epsilon", epsilon, "perturbation size or 'auto'");
  rearrange->add_option("-o,--output", output, "write the rearranged instance here");

  auto* sim = app.add_subcommand("simulate", "online exploration behind a reveal gate");
  add_file(sim);
  std::string policy = "reveal";
  sim->add_option("--policy", policy)->check(CLI::IsMember({"reveal", "random"}));
  sim->add_option("--seed", common.seed);

  auto* ratio = app.add_subcommand("ratio", "batch ratio study, CSV on stdout");
  std::size_t count = 100;
  std::uint64_t ratio_seed = 1;
  std::size_t max_leaves = 8;
  std::size_t max_edges = 10;
  std::size_t threads = 0;
  ratio->add_option("--count", count);
  ratio->add_option("--seed", ratio_seed);
  ratio->add_option("--max-leaves", max_leaves);
  ratio->add_option("--max-edges", max_edges)->check(CLI::PositiveNumber);
  ratio->add_option("--threads", threads, "worker count (0 = hardware)");

  auto* verify = app.add_subcommand("verify", "full invariant suite on one instance");
  add_file(verify);
  add_order(verify, common);
  verify->add_option("--bound-factor", factor, "scale the ratio bounds (values below 1 inject violations)");

  auto* gen = app.add_subcommand("gen", "generate an instance");
  GenArgs g;
  gen->add_option("--family", g.family, "random, star, caterpillar, heavy-path, subdivided, lower-bound-branches");
  gen->add_option("--seed", g.seed);
  gen->add_option("--size", g.size, "edges, leaves or spine length depending on the family");
  gen->add_option("--max-leaves", g.max_leaves);
  gen->add_option("--weight-min", g.weight_min);
  gen->add_option("--weight-max", g.weight_max);
  gen->add_option("--weight-steps", g.weight_steps);
  gen->add_option("--length", g.length);
  gen->add_option("--budget", g.budget);
  gen->add_option("-o,--output", g.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const auto echo = echo_of(argc, argv);
  const auto started = std::chrono::steady_clock::now();
  int status = kOk;
  std::ostringstream os;
  try {
    if (*explore) status = run_explore(common, echo, os);
    if (*adversarial) status = run_adversarial(common, bprime, max, echo, os);
    if (*optimal) status = run_optimal(common, objective, echo, os);
    if (*certify) status = run_certify(common, factor, echo, os);
    if (*rearrange) status = run_rearrange(common, epsilon, output, echo, os);
    if (*sim) status = run_simulate(common, policy, echo, os);
    if (*ratio) status = run_ratio(count, ratio_seed, max_leaves, max_edges, threads, os);
    if (*verify) status = run_verify(common, factor, echo, os);
    if (*gen) status = run_gen(g, os);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ecte::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  std::cout << os.str();
  if (timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    std::cout << "time: " << ms << " ms\n";
  }
  return status;
}
