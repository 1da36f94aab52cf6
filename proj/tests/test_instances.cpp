#include "support.hpp"

#include <set>

#include "ecte/error.hpp"
#include "ecte/piecemeal.hpp"
#include "ecte/traversal.hpp"

using namespace ecte;
using testing::fixture;

namespace {

std::size_t error_line(const char* text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parsing") {
  const auto t = parse_instance("# comment\n\nECTE1 12.5\nr a 1/2  # trailing\nr b 3\n");
  CHECK(t.budget() == Weight::ratio(25, 2));
  CHECK(t.parent_weight(t.at("a")) == Weight::ratio(1, 2));
  CHECK(error_line("ECTE1 10\nr a 1\nr b\n") == 3);
  CHECK(error_line("ECTE1 10\nr a 0\n") == 2);
  CHECK(error_line("ECTE1 10\nr r 1\n") == 2);
  CHECK(error_line("ECTE1 10\nr a 1\nr a 2\n") == 3);
  CHECK(error_line("ECTE1 1\nr a 1/4\n") == 1);
  CHECK(error_line("ECTE2 10\nr a 1\n") == 1);
  CHECK(error_line("ECTE1 10\nr a x\n") == 2);
  CHECK(error_line("ECTE1 10\nr a 1\ns b 1\n") != 0);
  CHECK_THROWS_AS(parse_instance("ECTE1 4\nr a 3\n"), InvalidInstance);
  CHECK_THROWS_AS(load_instance("/nonexistent/file.ecte"), Error);
}

TEST_CASE("canonical text round trips") {
  const auto t = fixture("t_fig1.ecte");
  const auto text = serialize(t);
  CHECK(text.starts_with("ECTE1 20\n"));
  const auto again = parse_instance(text);
  CHECK(serialize(again) == text);
  CHECK(digest(again) == digest(t));
  CHECK(digest(t).size() == 16);
  CHECK(digest(t) != digest(fixture("t_fig2.ecte")));
}

TEST_CASE("generators are deterministic") {
  for (auto family : {Family::random, Family::star, Family::caterpillar, Family::heavy_path, Family::subdivided}) {
    GeneratorSpec spec;
    spec.family = family;
    spec.seed = 17;
    CHECK(serialize(generate(spec)) == serialize(generate(spec)));
    CHECK(family_from_string(to_string(family)) == family);
    spec.seed = 18;
    CHECK_NOTHROW(generate(spec));
  }
  CHECK_FALSE(family_from_string("bogus").has_value());
}

TEST_CASE("family shapes") {
  GeneratorSpec star;
  star.family = Family::star;
  star.size = 4;
  const auto s = generate(star);
  CHECK(s.leaves().size() == 4);
  CHECK(s.budget() == Weight(10));

  GeneratorSpec lb;
  lb.family = Family::lower_bound_branches;
  CHECK_THROWS_AS(generate(lb), PreconditionFailed);
  lb.budget = Weight(8);
  const auto l = generate(lb);
  CHECK(l.total_weight() == Weight(8));

  GeneratorSpec r;
  r.size = 8;
  r.max_leaves = 3;
  r.budget = Weight(5);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    r.seed = seed;
    const auto t = generate(r);
    CHECK(t.leaves().size() <= 3);
    CHECK(t.edge_count() == 8);
    CHECK(t.height() * Weight(2) <= Weight(5));
  }

  GeneratorSpec bad;
  bad.weight_min = Weight(3);
  bad.weight_max = Weight(1);
  CHECK_THROWS_AS(generate(bad), PreconditionFailed);
}

TEST_CASE("subdivision makes every route but the last full") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    GeneratorSpec spec;
    spec.family = Family::subdivided;
    spec.seed = seed;
    spec.size = 7;
    const auto t = generate(spec);
    const auto trace = pdfs(t, dfs_tour(t));
    for (std::size_t i = 0; i + 1 < trace.lengths.size(); ++i) CHECK(trace.lengths[i] == t.budget());
  }
}

TEST_CASE("exhaustive corpus counts") {
  const std::vector<Weight> w{1, 2, 3};
  CHECK(exhaustive_corpus(1, w).size() == 3);
  // Paths: 9 weightings; cherries: 6 weight multisets.
  CHECK(exhaustive_corpus(2, w).size() == 3 + 15);
  std::set<std::string> digests;
  for (const auto& t : exhaustive_corpus(4, w)) {
    CHECK(t.budget() == Weight(2) * t.height());
    digests.insert(digest(t));
  }
  CHECK(digests.size() == exhaustive_corpus(4, w).size());
}
