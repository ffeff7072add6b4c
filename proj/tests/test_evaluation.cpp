#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fstsp/evaluation.hpp"
#include "fstsp/tsp_seed.hpp"
#include "helpers.hpp"

using namespace fstsp;

TEST_CASE("hand timeline: 3-node line with one sortie") {
  const Instance inst = test::line3_instance();
  Solution sol;
  sol.tour = {0, 2, 0};
  sol.sorties = {{0, 1, 2}};
  REQUIRE(structural_errors(sol, inst).empty());

  const Timeline tl = evaluate(sol, inst);
  CHECK(tl.drone_launch_t[0] == doctest::Approx(0.6));
  CHECK(tl.drone_return_t[0] == doctest::Approx(6.6));
  CHECK(tl.truck_arrive[1] == doctest::Approx(10.6));
  CHECK(tl.wait_drone[0] == doctest::Approx(4.0));
  CHECK(tl.wait_truck[0] == 0.0);
  CHECK(tl.endurance_used[0] == doctest::Approx(10.0));
  CHECK(tl.makespan == doctest::Approx(21.1));
  CHECK(completion_time(sol, inst) == doctest::Approx(21.1));
  CHECK(check_feasible(sol, inst).empty());
}

TEST_CASE("truck-only makespan is the tour time, no services") {
  const Instance inst = test::small_instance(8, 31);
  Rng rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    const Solution sol = truck_only_solution(test::random_tour(inst.n, rng), inst);
    const Timeline tl = evaluate(sol, inst);
    CHECK(tl.makespan == doctest::Approx(tour_cost(sol.tour, inst.truck_time)));
    CHECK(check_feasible(sol, inst).empty());
  }
}

TEST_CASE("TSPD loop: truck waits out the full flight") {
  Instance inst = test::small_instance(4, 7, Family::AgatzUniform);  // TSPD: all eligible
  Solution sol;
  sol.tour = {0, 1, 3, 0};
  sol.sorties = {{1, 2, 1}};
  REQUIRE(structural_errors(sol, inst).empty());
  const Timeline tl = evaluate(sol, inst);
  const double flight = inst.drone_time(1, 2) * 2.0;
  CHECK(tl.wait_truck[0] == doctest::Approx(flight));
  CHECK(tl.makespan ==
        doctest::Approx(tour_cost(sol.tour, inst.truck_time) + flight));
  CHECK(completion_time(sol, inst) == doctest::Approx(tl.makespan));
}

TEST_CASE("endurance bound is closed") {
  Instance inst = test::line3_instance();
  Solution sol;
  sol.tour = {0, 2, 0};
  sol.sorties = {{0, 1, 2}};
  inst.endurance_e = 10.0;  // airborne time is exactly 10.0
  CHECK(check_feasible(sol, inst).empty());
  inst.endurance_e = 9.999;
  auto v = check_feasible(sol, inst);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::Endurance);
  CHECK(v[0].used == doctest::Approx(10.0));
  CHECK(v[0].limit == doctest::Approx(9.999));
}

TEST_CASE("recovery time can be charged to the battery by option") {
  Instance inst = test::line3_instance();
  Solution sol;
  sol.tour = {0, 2, 0};
  sol.sorties = {{0, 1, 2}};
  EvalOptions opts;
  opts.endurance_includes_recovery = true;
  const Timeline tl = evaluate(sol, inst, opts);
  CHECK(tl.endurance_used[0] == doctest::Approx(10.5));
  inst.endurance_e = 10.2;
  CHECK(check_feasible(sol, inst).empty());
  CHECK(!check_feasible(sol, inst, opts).empty());
}

namespace {

// Seven customers on the tour, two spare for drone visits.
Instance prohibition_instance() { return test::all_eligible(test::small_instance(9, 77)); }

Solution prohibition_solution(std::pair<int, int> ia, std::pair<int, int> ib) {
  // tour positions: 0:depot 1..6 customers 7:depot
  Solution sol;
  sol.tour = {0, 1, 2, 3, 4, 5, 6, 0};
  auto mk = [&](std::pair<int, int> iv, int visit) {
    return Sortie{sol.tour[iv.first], visit, sol.tour[iv.second]};
  };
  sol.sorties = {mk(ia, 7), mk(ib, 8)};
  return sol;
}

}  // namespace

TEST_CASE("interleaved trips are prohibition 1") {
  const Instance inst = prohibition_instance();
  const Solution sol = prohibition_solution({1, 4}, {2, 6});
  const auto v = check_feasible(sol, inst);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::Prohibition1);
}

TEST_CASE("nested trips are prohibition 2") {
  const Instance inst = prohibition_instance();
  const Solution sol = prohibition_solution({1, 6}, {2, 4});
  const auto v = check_feasible(sol, inst);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::Prohibition2);
}

TEST_CASE("chained trips sharing one node are legal") {
  const Instance inst = prohibition_instance();
  Instance relaxed = inst;
  relaxed.endurance_e = kInfinity;
  const Solution sol = prohibition_solution({1, 3}, {3, 6});
  CHECK(check_feasible(sol, relaxed).empty());
}

TEST_CASE("every violation kind is detectable") {
  const Instance inst = prohibition_instance();

  Solution missing;
  missing.tour = {0, 1, 2, 3, 4, 5, 0};  // 6,7,8 unserved
  auto v = check_feasible(missing, inst);
  CHECK(v.size() == 3);
  CHECK(v[0].kind == ViolationKind::Coverage);

  Instance strict = inst;
  strict.eligible[7] = false;
  Solution bad_visit = prohibition_solution({1, 3}, {4, 6});
  strict.endurance_e = kInfinity;
  v = check_feasible(bad_visit, strict);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::Eligibility);
  CHECK(v[0].node == 7);

  // Two launches from the depot: the drone cannot be relaunched there.
  Solution relaunch;
  relaunch.tour = {0, 1, 2, 3, 4, 5, 0};
  relaunch.sorties = {{0, 7, 2}, {0, 8, 5}};
  Instance roomy = inst;
  roomy.endurance_e = kInfinity;
  v = check_feasible(relaunch, roomy);
  bool tagged = false;
  for (const auto& viol : v) tagged = tagged || viol.kind == ViolationKind::DepotRelaunch;
  CHECK(tagged);
}

TEST_CASE("timeline simulation agrees with the separable cost on random walks") {
  Rng rng(2024);
  for (int rep = 0; rep < 30; ++rep) {
    const Instance inst = rep % 2 == 0 ? test::small_instance(12, 100 + rep)
                                       : test::small_instance(12, 100 + rep, Family::AgatzUniform);
    const Solution sol = test::random_solution(inst, rng, 25);
    REQUIRE(structural_errors(sol, inst).empty());
    const double sim = evaluate(sol, inst).makespan;
    const double closed = completion_time(sol, inst);
    CHECK(sim == doctest::Approx(closed).epsilon(1e-10));
  }
}

TEST_CASE("makespan is monotone in truck edge times") {
  Rng rng(55);
  Instance inst = test::small_instance(10, 8);
  const Solution sol = test::random_solution(inst, rng, 15);
  const double base = completion_time(sol, inst);
  for (int rep = 0; rep < 20; ++rep) {
    Instance bumped = inst;
    const int i = 1 + rng.bounded(inst.n - 1);
    const int j = rng.bounded(inst.n);
    if (i == j) continue;
    bumped.truck_time(i, j) += 3.0;
    bumped.truck_time(j, i) += 3.0;
    CHECK(completion_time(sol, bumped) >= base - 1e-12);
  }
}

TEST_CASE("depot full-span trip under FSTSP") {
  // Drone leaves the depot with the truck and lands back at the depot.
  Instance inst = test::all_eligible(test::small_instance(5, 14));
  inst.endurance_e = kInfinity;
  Solution sol;
  sol.tour = {0, 1, 2, 3, 0};
  sol.sorties = {{0, 4, 0}};
  REQUIRE(structural_errors(sol, inst).empty());
  CHECK(check_feasible(sol, inst).empty());
  const Timeline tl = evaluate(sol, inst);
  const double flight = inst.drone_time(0, 4) + inst.drone_time(4, 0);
  const double truck_d = tour_cost(sol.tour, inst.truck_time);
  CHECK(tl.makespan == doctest::Approx(inst.service_launch_sl + std::max(flight, truck_d) +
                                       inst.service_return_sr));
}
