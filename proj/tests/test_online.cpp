#include "support.hpp"

#include "ecte/error.hpp"
#include "ecte/online.hpp"
#include "ecte/piecemeal.hpp"
#include "ecte/traversal.hpp"

using namespace ecte;
using testing::fixture;

TEST_CASE("reveal gate") {
  const auto t = fixture("t_fig2.ecte");
  RevealGate gate(t);
  CHECK(gate.revealed(t.root()));
  CHECK_FALSE(gate.revealed(t.at("c")));
  CHECK_THROWS_AS(gate.name(t.at("c")), InvalidRoute);
  CHECK(gate.violations() == 1);
  const auto edges = gate.visit(t.root(), 0);
  CHECK(edges.size() == 2);
  CHECK(gate.revealed(t.at("b")));
  CHECK_FALSE(gate.revealed(t.at("c")));
  gate.visit(t.root(), 5);
  CHECK(gate.log().events.size() == 1);
}

TEST_CASE("reveal order matches file order pdfs") {
  const auto t = fixture("t_fig2.ecte");
  const auto sim = simulate(t);
  CHECK(sim.violations == 0);
  CHECK(sim.strategy == pdfs(t, dfs_tour(t)).strategy);
  CHECK(sim.log.recharges == 1);
  CHECK(sim.log.events.size() == t.size());
}

TEST_CASE("adversary with an invalid pick") {
  const auto t = fixture("t_fig2.ecte");
  const auto root = t.root();
  CHECK_THROWS_AS(simulate(t, AdversarialPolicy{[&](NodeId, std::span<const NodeId>) { return root; }}),
                  PreconditionFailed);
  const auto hidden = t.at("c");
  CHECK_THROWS_AS(simulate(t, AdversarialPolicy{[&](NodeId, std::span<const NodeId>) { return hidden; }}),
                  InvalidRoute);
}

TEST_CASE("seeded property: online runs equal offline pdfs") {
  std::size_t i = 0;
  for (const auto& t : random_corpus(80, 31, 10, 7, 3)) {
    OnlinePolicy policy = RandomChildPolicy{i++};
    const auto sim = simulate(t, policy);
    const auto offline = pdfs(t, tour_from_vertices(t, sim.tour, "induced"));
    CHECK(sim.violations == 0);
    CHECK(sim.strategy == offline.strategy);
    CHECK(sim.lengths == offline.lengths);
    CHECK(sim.log.recharges + 1 == sim.strategy.routes.size());
  }
}
