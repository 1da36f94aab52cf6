#include "support.hpp"

#include "ecte/error.hpp"
#include "ecte/tree.hpp"

using namespace ecte;
using testing::fixture;

TEST_CASE("weights are exact rationals") {
  CHECK(Weight::parse("2.5") == Weight::ratio(5, 2));
  CHECK(Weight::parse("10/4") == Weight::ratio(5, 2));
  CHECK(Weight::ratio(1, 3) + Weight::ratio(2, 3) == Weight(1));
  CHECK(Weight::ratio(7, 2).ceil() == Weight(4));
  CHECK(Weight(6).str() == "6");
  CHECK(render(Weight::ratio(1, 3)).starts_with("1/3 (~0.333"));
  CHECK_THROWS_AS(Weight::parse("abc"), std::invalid_argument);
}

TEST_CASE("instance invariants") {
  const EdgeSpec cycle[] = {{"a", "b", Weight(1)}, {"b", "a", Weight(1)}};
  CHECK_THROWS_AS(Instance(Weight(10), cycle), InvalidInstance);
  const EdgeSpec deep[] = {{"a", "b", Weight(3)}, {"b", "c", Weight(3)}};
  CHECK_THROWS_AS(Instance(Weight(10), deep), InvalidInstance);
  CHECK_NOTHROW(Instance(Weight(12), deep));
  const EdgeSpec zero[] = {{"a", "b", Weight(0)}};
  CHECK_THROWS_AS(Instance(Weight(10), zero), InvalidInstance);
}

TEST_CASE("preorder ids and subtree queries") {
  const auto t = fixture("t_fig2.ecte");
  CHECK(t.size() == 7);
  CHECK(t.name(t.root()) == "a");
  CHECK(t.total_weight() == Weight(17));
  const auto b = t.at("b"), c = t.at("c"), d = t.at("d"), f = t.at("f");
  CHECK(t.subtree_weight(b) == Weight(6));
  CHECK(t.depth(c) == Weight(7));
  CHECK(t.lca(c, d) == b);
  CHECK(t.lca(c, f) == t.root());
  CHECK(distance(t, c, f) == Weight(13));
  CHECK(potential(t, c) == Weight(3));
  CHECK(t.is_ancestor_or_self(b, d));
  CHECK_FALSE(t.is_ancestor_or_self(d, b));
  CHECK(t.leaves().size() == 4);
  CHECK(t.height() == Weight(7));
  CHECK(tree_path(t, c, f).size() == 5);
  CHECK_THROWS_AS(t.at("zz"), UnknownNode);
}

TEST_CASE("heaviness") {
  const auto t = fixture("t_hp.ecte");
  const auto h = classify(t);
  CHECK(h.tree_heavy());
  CHECK(h.degree(t.root()) == 1);
  CHECK(h.heavy(t.at("r'")));
  CHECK_FALSE(h.heavy_edge(t.at("x")));
  CHECK(h.degree(t.at("r'")) == 0);
  for (std::size_t i = 1; i < t.size(); ++i) {
    const auto v = node_at(i);
    if (!h.heavy_edge(v)) CHECK_FALSE(h.heavy(v));
  }
}

TEST_CASE("sub-instances") {
  const auto t = fixture("t_fig2.ecte");
  const auto sub = subtree_instance(t, t.at("b"));
  CHECK(sub.budget() == Weight(14));
  CHECK(sub.total_weight() == Weight(6));
  const auto edge = edge_subtree_instance(t, t.at("e"));
  CHECK(edge.total_weight() == Weight(8));
  CHECK(edge.budget() == Weight(20));
  CHECK_THROWS(subtree_instance(t, t.at("c")));
}

TEST_CASE("strategy validation") {
  const auto t = fixture("star3.ecte");
  const auto r = t.root(), l1 = t.at("l1"), l2 = t.at("l2"), l3 = t.at("l3");
  Strategy s{{Route{{r, l1, r}}, Route{{r, l2, r}}, Route{{r, l3, r}}}, std::nullopt};
  CHECK(is_feasible(validate_strategy(t, s)));
  CHECK(strategy_cost(t, s) == Weight(30));
  Strategy long_route{{Route{{r, l1, r, l2, r}}, Route{{r, l3, r}}}, std::nullopt};
  const auto v = validate_strategy(t, long_route);
  REQUIRE(std::holds_alternative<Overlong>(v));
  CHECK(std::get<Overlong>(v).excess == Weight(10));
  Strategy missing{{Route{{r, l1, r}}}, std::nullopt};
  CHECK(std::get<Uncovered>(validate_strategy(t, missing)).nodes.size() == 2);
  Strategy first{{Route{{r, l1, r}}, Route{{r, l2, r}}, Route{{r, l3, r}}}, Weight(5)};
  CHECK(std::holds_alternative<Overlong>(validate_strategy(t, first)));
  CHECK_THROWS_AS(route_length(t, Route{{r, l1, l2, r}}), InvalidRoute);
  CHECK_THROWS_AS(route_length(t, Route{{l1, r, l1}}), InvalidRoute);
}

TEST_CASE("restricted costs") {
  const auto t = fixture("t_fig2.ecte");
  EdgeSet below_b(t);
  below_b.insert_subtree(t, t.at("b"));
  const Route full{{t.at("a"), t.at("b"), t.at("c"), t.at("b"), t.at("d"), t.at("b"), t.at("a")}};
  CHECK(restricted_length(t, full, below_b) == Weight(12));
  CHECK(route_visits(full, t.at("d")));
  CHECK(format_route(t, full) == "(a,b,c,b,d,b,a)");
}
