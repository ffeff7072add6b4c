#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fstsp/oracle.hpp"
#include "fstsp/search.hpp"
#include "fstsp/tsp_seed.hpp"
#include "helpers.hpp"

using namespace fstsp;

TEST_CASE("zero endurance collapses to the exact TSP") {
  Instance inst = test::line3_instance();
  inst.endurance_e = 0.0;
  const auto [cost, sol] = solve_exact(inst);
  CHECK(sol.sorties.empty());
  CHECK(cost == doctest::Approx(tour_cost(solve_exact_dp(inst), inst.truck_time)));
}

TEST_CASE("an obviously beneficial trip is taken") {
  const Instance inst = test::line3_instance();
  const auto [cost, sol] = solve_exact(inst);
  CHECK(cost == doctest::Approx(13.1));
  REQUIRE(sol.sorties.size() == 1);
  CHECK(sol.sorties[0] == Sortie{0, 2, 0});
  // the mid-route variant from the construction figure is strictly worse
  Solution mid;
  mid.tour = {0, 2, 0};
  mid.sorties = {{0, 1, 2}};
  CHECK(completion_time(mid, inst) == doctest::Approx(21.1));
}

TEST_CASE("oracle size guard") {
  const Instance inst = test::small_instance(10, 90);
  CHECK_THROWS_AS(solve_exact(inst), std::invalid_argument);
}

TEST_CASE("pruning does not change the optimum") {
  for (std::uint64_t seed : {91ull, 92ull}) {
    const Instance inst = test::small_instance(7, seed);
    CHECK(solve_exact(inst, true).first == doctest::Approx(solve_exact(inst, false).first));
  }
}

TEST_CASE("optimum is invariant under customer relabeling") {
  const Instance inst = test::small_instance(7, 93);
  // swap customer labels 2 and 5 everywhere
  Instance perm = inst;
  auto swap_idx = [](int v) { return v == 2 ? 5 : v == 5 ? 2 : v; };
  for (int i = 0; i < inst.n; ++i) {
    perm.coords[swap_idx(i)] = inst.coords[i];
    perm.eligible[swap_idx(i)] = inst.eligible[i];
    for (int j = 0; j < inst.n; ++j) {
      perm.truck_time(swap_idx(i), swap_idx(j)) = inst.truck_time(i, j);
      perm.drone_time(swap_idx(i), swap_idx(j)) = inst.drone_time(i, j);
    }
  }
  CHECK(solve_exact(perm).first == doctest::Approx(solve_exact(inst).first));
}

TEST_CASE("oracle dominates the heuristic pipeline on micro instances") {
  for (std::uint64_t seed : {94ull, 95ull, 96ull}) {
    for (auto family : {Family::Ponza, Family::AgatzUniform}) {
      const Instance inst = test::small_instance(7, seed, family, 2.0);
      const auto [opt, sol] = solve_exact(inst);
      CHECK(check_feasible(sol, inst).empty());
      SearchConfig cfg;
      cfg.rng_seed = seed;
      const RunReport rep = hgvns(inst, SeedSpec{}, cfg);
      CHECK(opt <= rep.final_cost + 1e-9);
    }
  }
}

TEST_CASE("TSP-D semantics: loops allowed, services free") {
  // Two far customers and one close by: with launch == return permitted the
  // drone can serve the close one while the truck idles.
  Instance inst;
  inst.n = 4;
  inst.name = "tspd-loop";
  inst.variant = Variant::TSPD;
  inst.coords = {{0, 0}, {10, 0}, {10, 1}, {20, 0}};
  inst.eligible = {false, true, true, true};
  inst.truck_speed_kmh = 60.0;
  inst.drone_speed_kmh = 120.0;
  TimeMatrix drone(4), truck(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double dx = inst.coords[i][0] - inst.coords[j][0];
      const double dy = inst.coords[i][1] - inst.coords[j][1];
      drone(i, j) = std::hypot(dx, dy) / 2.0;
      truck(i, j) = 2.0 * drone(i, j);
    }
  inst.truck_time = truck;
  inst.drone_time = drone;
  inst.endurance_e = kInfinity;
  inst.service_launch_sl = inst.service_return_sr = 0.0;

  const auto [cost, sol] = solve_exact(inst);
  CHECK(check_feasible(sol, inst).empty());
  // strictly better than the best truck-only tour
  CHECK(cost < tour_cost(solve_exact_dp(inst), inst.truck_time) - 1e-9);
}
