#include "support.hpp"

#include "ecte/error.hpp"
#include "ecte/rearrange.hpp"

using namespace ecte;
using testing::fixture;

TEST_CASE("skinny property") {
  CHECK(satisfies_st(fixture("t_hp.ecte")));
  const auto t = fixture("t_hp2.ecte");
  REQUIRE(skinny_violation(t).has_value());
  CHECK(t.name(*skinny_violation(t)) == "p1");
}

TEST_CASE("epsilon for the two-light fixture") {
  const auto t = fixture("t_hp2.ecte");
  const auto eps = compute_epsilon(t);
  CHECK(eps == Weight::ratio(1, 162));
  CHECK(eps <= Weight::ratio(1, 128));
}

TEST_CASE("construction on the two-light fixture") {
  const auto t = fixture("t_hp2.ecte");
  const auto eps = Weight::ratio(1, 162);
  const auto result = build_t_prime(t, eps);
  CHECK(result.changed());
  CHECK(result.processed == std::vector<std::string>{"p1"});
  CHECK(result.subdivisions.size() == 1);
  const auto& tp = result.tree;
  CHECK(tp.size() == t.size() + 1);
  CHECK(satisfies_st(tp));
  CHECK(distance(tp, tp.root(), tp.at("r'")) == distance(t, t.root(), t.at("r'")));
  REQUIRE(result.moved.size() == 2);
  CHECK(result.moved[0].weight == Weight(2) - eps);
  CHECK(result.moved[1].weight == Weight(3) - eps);
  CHECK(tp.name(tp.parent(tp.at("x2"))) == result.subdivisions[0]);
  CHECK(tp.name(result.original_ancestor(t, tp.at(result.subdivisions[0]))) == "p1");

  const auto cond = verify_conditions(t, result);
  CHECK(cond.p1);
  CHECK(cond.p2);
  CHECK(cond.skinny);
  REQUIRE(cond.p3.has_value());
  CHECK(*cond.p3);
  CHECK_FALSE(adfs_order_mismatch(t, result).has_value());
  const auto pb = perturbation_bounds(t, result);
  CHECK(pb.adfs_ok());
  CHECK(pb.phi_ok());
  CHECK(pb.opt_ok());
}

TEST_CASE("epsilon range") {
  const auto t = fixture("t_hp2.ecte");
  CHECK_THROWS_AS(build_t_prime(t, Weight(0)), PreconditionFailed);
  CHECK_THROWS_AS(build_t_prime(t, Weight(1)), PreconditionFailed);
}

TEST_CASE("skinny trees are left alone") {
  const auto t = fixture("t_hp.ecte");
  const auto result = build_t_prime(t, Weight::ratio(1, 100));
  CHECK_FALSE(result.changed());
  CHECK(serialize(result.tree) == serialize(t));
}

TEST_CASE("coarse epsilon can break route verdicts") {
  const auto t = fixture("t_hp2.ecte");
  const auto result = build_t_prime(t, Weight::ratio(9, 10));
  const auto cond = verify_conditions(t, result);
  CHECK(cond.p1);
  CHECK(cond.p2);
  REQUIRE(cond.p3.has_value());
  if (!*cond.p3) {
    REQUIRE(cond.p3_counterexample.has_value());
    CHECK(cond.p3_counterexample->length_in_t != cond.p3_counterexample->length_in_t_prime);
  }
}

TEST_CASE("deficiency") {
  const auto t = fixture("star3.ecte");
  PotentialStrategy ps;
  ps.routes.push_back({{t.at("l1"), t.at("l2")}, t.root()});
  ps.routes.push_back({{t.at("l3")}, t.root()});
  CHECK(deficiency(t, ps) == Weight(10));
  PotentialStrategy ok;
  for (const char* l : {"l1", "l2", "l3"}) ok.routes.push_back({{t.at(l)}, t.at(l)});
  CHECK_THROWS_AS(deficiency(t, ok), PreconditionFailed);
  CHECK(deficiency(t, ok, Weight(4)) == Weight(6));
}
