#include <catch2/catch_amalgamated.hpp>

#include "property_suite.hpp"

// Reduced-volume randomized pass over every standard ring; the acceptance
// binary runs the full plan.
TEST_CASE("randomized invariants hold on every standard ring", "[props]") {
  propsuite::SuitePlan plan;
  plan.dual = 8;
  plan.dual_mpc = 6;
  plan.sandwich = 6;
  plan.equality = 5;
  plan.prop42 = 6;
  plan.lemma46 = 3;

  auto rings = propsuite::standard_rings();
  REQUIRE(rings.size() == 6);
  for (std::size_t i = 0; i < rings.size(); ++i) {
    DYNAMIC_SECTION(rings[i].name) {
      propsuite::Counters c =
          propsuite::run_property_suite(rings[i], 0xC0FFEEull + i, plan);
      CHECK(c.total > 30);
      for (const auto& f : c.failures) {
        INFO(f);
        CHECK(false);
      }
      CHECK(c.failures.empty());
    }
  }
}
