#include "support.hpp"

#include "ecte/error.hpp"
#include "ecte/oracle.hpp"

using namespace ecte;
using testing::fixture;

TEST_CASE("steiner weights") {
  const auto t = fixture("t_fig2.ecte");
  const NodeId cd[] = {t.at("c"), t.at("d")};
  CHECK(steiner_weight(t, cd) == Weight(9));
  const NodeId none[] = {t.root()};
  CHECK(steiner_weight(t, none) == Weight(0));
}

TEST_CASE("optimum on small fixtures") {
  const auto star = fixture("star3.ecte");
  CHECK(opt_cost(star).cost == Weight(30));
  CHECK(opt_routes(star).routes == 3);
  const auto fig1 = fixture("t_fig1.ecte");
  const auto best = opt_cost(fig1);
  CHECK(best.cost == Weight(46));
  CHECK(is_feasible(validate_strategy(fig1, best.witness)));
  CHECK(strategy_cost(fig1, best.witness) == best.cost);
}

TEST_CASE("route objective prefers fewer routes") {
  const auto t = parse_instance("ECTE1 8\nr a 1\na b 1\na c 1\nr d 2\n");
  const auto fewest = opt_routes(t);
  const auto cheapest = opt_cost(t);
  CHECK(fewest.routes <= cheapest.routes);
  CHECK(fewest.cost >= cheapest.cost);
  CHECK(is_feasible(validate_strategy(t, fewest.witness)));
}

TEST_CASE("leaf cap") {
  std::string text = "ECTE1 4\n";
  for (int i = 0; i < 11; ++i) text += "r l" + std::to_string(i) + " 1\n";
  CHECK_THROWS_AS(opt_cost(parse_instance(text)), CapExceeded);
}

TEST_CASE("potential routes translate to walks") {
  const auto t = fixture("t_fig2.ecte");
  const PotentialRoute pr{{t.at("c"), t.at("d")}, t.at("b")};
  const auto route = translate_potential_route(t, pr);
  CHECK(route_length(t, route) == potential_route_length(t, pr));
  CHECK(potential_route_length(t, pr) == Weight(18));
  CHECK_THROWS_AS(translate_potential_route(t, {{t.at("b")}, t.root()}), InvalidRoute);
  CHECK_THROWS_AS(translate_potential_route(t, {{}, t.root()}), InvalidRoute);
  CHECK(leaf_sequences(t).size() == 4 + 12 + 24 + 24);
}

TEST_CASE("cover search agrees with literal enumeration") {
  for (const char* text : {"ECTE1 10\nr a 5\nr b 5\n", "ECTE1 6\nr a 1\na b 2\na c 2\n",
                           "ECTE1 8\nr a 1\na b 1\na c 3\nr d 2\n"}) {
    const auto t = parse_instance(text);
    Weight best;
    bool found = false;
    enumerate_potential_strategies(t, t.leaves().size(), [&](const PotentialStrategy& s, const Verdict& v) {
      if (!is_feasible(v)) return true;
      const auto c = strategy_cost(t, translate_potential_strategy(t, s));
      if (!found || c < best) best = c;
      found = true;
      return true;
    });
    REQUIRE(found);
    CHECK(best == min_potential_strategy_cost(t));
    CHECK(best == opt_cost(t).cost);
  }
}

TEST_CASE("seeded property: optimum is a feasible lower bound") {
  for (const auto& t : random_corpus(120, 9, 8, 5, 3)) {
    const auto best = opt_cost(t);
    CHECK(is_feasible(validate_strategy(t, best.witness)));
    CHECK(best.cost >= Weight(2) * t.total_weight());
    CHECK(Weight(opt_routes(t).routes) >= (best.cost / t.budget()).ceil());
    CHECK(best.cost == min_potential_strategy_cost(t));
  }
}
