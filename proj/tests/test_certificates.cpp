#include "support.hpp"

#include "ecte/certificates.hpp"
#include "ecte/error.hpp"
#include "ecte/oracle.hpp"
#include "ecte/piecemeal.hpp"
#include "ecte/traversal.hpp"

using namespace ecte;
using testing::fixture;

TEST_CASE("heavy path of the fixture") {
  const auto t = fixture("t_hp.ecte");
  const auto hp = heavy_path(t);
  CHECK(t.name(hp.r_prime) == "r'");
  CHECK(hp.path_weight == Weight(2));
  CHECK(hp.w0 == Weight(10));
  CHECK(hp.phi_root == Weight(10));
  CHECK(hp.phi_r_prime == Weight(8));
  REQUIRE(hp.light_edges.size() == 1);
  CHECK(hp.light_edges[0].potential == Weight(9));
  CHECK(hp.light_edges[0].weight == Weight(3));
  CHECK_FALSE(hp.potential_ties);
}

TEST_CASE("heavy path needs heavydeg(root) = 1") {
  CHECK_THROWS_AS(heavy_path(fixture("star3.ecte")), PreconditionFailed);
  CHECK_THROWS_AS(heavy_path(parse_instance("ECTE1 20\nr a 1\n")), PreconditionFailed);
}

TEST_CASE("sequences and decompositions on the fixture") {
  const auto t = fixture("t_hp.ecte");
  const auto hp = heavy_path(t);
  const auto ys = y_sequence(hp);
  CHECK(ys.values == std::vector<Weight>{8, 8});
  CHECK(ys.d == 2);
  const auto opt = opt_cost(t);
  CHECK(x_sequence(t, opt.witness, hp) == std::vector<Weight>{8, 8});
  const auto od = decompose_opt_cost(t, opt.witness, hp);
  CHECK(od.light == Weight(6));
  CHECK(od.deep == Weight(20));
  CHECK(od.path == Weight(0));
  CHECK(od.flat == Weight(8));
  CHECK(od.total() == opt.cost);
  const auto run = adversarial_pdfs(t, dfs_tour(t), Weight(8));
  const auto dd = decompose_adfs_cost(t, run.strategy, hp);
  CHECK(dd.light == Weight(6));
  CHECK(dd.deep == Weight(20));
  CHECK(dd.desc == Weight(2));
  CHECK(dd.flat == Weight(8));
  CHECK(dd.asc == Weight(0));
  CHECK(dd.total() == run.cost());
  CHECK(z_sequence(t, run, hp) == std::vector<Weight>{9});
}

TEST_CASE("y sequence rejects tied potentials") {
  const auto t = fixture("t_hp2.ecte");
  const auto hp = heavy_path(t);
  CHECK(hp.potential_ties);
  CHECK_THROWS_AS(y_sequence(hp), PreconditionFailed);
}

TEST_CASE("report on the fixture holds") {
  const auto report = check_inequalities(fixture("t_hp.ecte"), {});
  CHECK(report.ok());
  CHECK(report.count(CheckStatus::fail) == 0);
  REQUIRE(report.find("heavy-bound") != nullptr);
  CHECK(report.find("heavy-bound")->status == CheckStatus::pass);
  CHECK(report.find("light-ratio")->status == CheckStatus::skipped);
  CHECK(format_report(report).find("PASS cost-ratio: 38 <= 340") != std::string::npos);
}

TEST_CASE("bound factor injects violations") {
  CertificateOptions options;
  options.bound_factor = Weight::ratio(1, 100);
  const auto report = check_inequalities(fixture("t_fig2.ecte"), options);
  CHECK_FALSE(report.ok());
  CHECK(report.find("cost-ratio")->status == CheckStatus::fail);
}

TEST_CASE("light instance takes the light branch") {
  const auto report = check_inequalities(parse_instance("ECTE1 20\nr a 2\nr b 3\n"), {});
  CHECK(report.find("light-ratio")->status == CheckStatus::pass);
  CHECK(report.find("heavy-bound")->status == CheckStatus::skipped);
  CHECK(report.find("heavy-path")->status == CheckStatus::skipped);
}

TEST_CASE("flat upper bound fails on a granular heavy path") {
  // Leaf edges that do not pack into 2 phi(r') leave PDFS routes inside T_r'
  // short, so more routes cross the path than the bound allows.
  const auto t = parse_instance("ECTE1 8\nr q 1\nq a 3\nq b 2\nq c 2\nq d 2\nq e 2\n");
  const auto report = check_inequalities(t, {});
  CHECK(report.find("flat-upper-bound")->status == CheckStatus::fail);
  CHECK(report.find("flat-lower-bound")->status == CheckStatus::pass);
  CHECK(report.find("heavy-bound")->status == CheckStatus::pass);
}

TEST_CASE("seeded property: global checks hold") {
  for (const auto& t : random_corpus(60, 5, 8, 5, 3)) {
    const auto report = check_inequalities(t, {});
    for (const char* name : {"adfs-dominates-pdfs", "cost-ratio", "route-ratio", "route-count-lower-bound",
                             "opt-additivity", "adfs-subadditivity", "light-ratio", "light-subtree-ratio"}) {
      const auto* c = report.find(name);
      REQUIRE(c != nullptr);
      CHECK_MESSAGE(c->status != CheckStatus::fail, name, " on ", serialize(t));
    }
  }
}
