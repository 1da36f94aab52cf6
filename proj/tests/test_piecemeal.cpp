#include "support.hpp"

#include "ecte/piecemeal.hpp"
#include "ecte/traversal.hpp"

using namespace ecte;
using testing::fixture;

TEST_CASE("pdfs on the two-branch fixture") {
  const auto t = fixture("t_fig2.ecte");
  const auto trace = pdfs(t, dfs_tour(t));
  CHECK(trace.lengths == std::vector<Weight>{18, 16});
  CHECK(trace.cost() == Weight(34));
  CHECK(is_feasible(validate_strategy(t, trace.strategy)));
}

TEST_CASE("adversarial first route") {
  const auto t = fixture("t_fig2.ecte");
  const auto tour = dfs_tour(t);
  CHECK(adversarial_pdfs(t, tour, Weight(16)).lengths == std::vector<Weight>{14, 18, 16});
  CHECK(adversarial_pdfs(t, tour, Weight(20)).cost() == Weight(34));
  // B' = 0 yields an empty first route at the root.
  CHECK(adversarial_pdfs(t, tour, Weight(0)).lengths.front() == Weight(0));
  CHECK_THROWS(adversarial_pdfs(t, tour, Weight(21)));
  CHECK_THROWS(adversarial_pdfs(t, tour, Weight(-1)));
}

TEST_CASE("threshold set") {
  const auto t = fixture("t_fig2.ecte");
  const auto tour = dfs_tour(t);
  CHECK(thresholds(t, tour).values == std::vector<Weight>{0, 6, 14, 18});
  const auto out = adversarial_dfs(t, tour);
  CHECK(out.first_budget == Weight(14));
  CHECK(out.trace.cost() == Weight(48));

  const auto hp = fixture("t_hp.ecte");
  const auto hp_tour = dfs_tour(hp);
  CHECK(thresholds(hp, hp_tour).values == std::vector<Weight>{0, 2, 8, 10, 15, 20});
  CHECK(adversarial_dfs(hp, hp_tour).trace.cost() == Weight(38));
  CHECK(adversarial_pdfs(hp, hp_tour, Weight(8)).lengths == std::vector<Weight>{8, 19, 9});
}

TEST_CASE("progress segments tile the tour") {
  const auto t = fixture("t_fig1.ecte");
  const auto tour = dfs_tour(t);
  const auto trace = pdfs(t, tour);
  CHECK(trace.route_count() == 3);
  std::vector<NodeId> joined;
  for (const auto& seg : progress_segments(tour, trace)) {
    CHECK(seg.size() >= 2);
    joined.insert(joined.end(), seg.begin() + (joined.empty() ? 0 : 1), seg.end());
  }
  CHECK(joined == tour.vertices);
}

TEST_CASE("seeded property: pdfs is feasible and piecewise optimal") {
  for (const auto& t : random_corpus(150, 42, 9, 6, 4)) {
    for (std::uint64_t seed : {0u, 1u}) {
      const auto tour = dfs_tour(t, SeededRandomOrder{seed});
      const auto trace = pdfs(t, tour);
      CHECK(is_feasible(validate_strategy(t, trace.strategy)));
      CHECK(trace.cost() >= Weight(2) * t.total_weight());
      const auto adv = adversarial_dfs(t, tour);
      CHECK(adv.trace.cost() >= trace.cost());
      for (const auto& b : thresholds(t, tour).values) {
        const auto c = adversarial_pdfs(t, tour, b).cost();
        CHECK(c <= adv.trace.cost());
        CHECK(is_feasible(validate_strategy(t, adversarial_pdfs(t, tour, b).strategy)));
      }
    }
  }
}
