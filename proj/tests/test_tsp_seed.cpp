#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fstsp/tsp_seed.hpp"
#include "helpers.hpp"

using namespace fstsp;

namespace {

Instance manual_instance(const std::vector<std::array<double, 2>>& coords, Metric truck_metric) {
  Instance inst;
  inst.name = "manual";
  inst.n = static_cast<int>(coords.size());
  inst.coords = coords;
  inst.eligible.assign(inst.n, true);
  inst.eligible[0] = false;
  inst.truck_speed_kmh = 60.0;  // time == distance
  inst.drone_speed_kmh = 60.0;
  auto [tm, dm] = build_matrices(coords, 60.0, 60.0, truck_metric, Metric::Euclidean);
  inst.truck_time = std::move(tm);
  inst.drone_time = std::move(dm);
  inst.endurance_e = kInfinity;
  return inst;
}

double brute_force_tsp(const Instance& inst) {
  std::vector<int> perm(inst.n - 1);
  std::iota(perm.begin(), perm.end(), 1);
  double best = kInfinity;
  do {
    std::vector<int> tour{0};
    tour.insert(tour.end(), perm.begin(), perm.end());
    tour.push_back(0);
    best = std::min(best, tour_cost(tour, inst.truck_time));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("unit square: optimal tour is the perimeter") {
  const Instance inst =
      manual_instance({{0, 0}, {0, 1}, {1, 1}, {1, 0}}, Metric::Manhattan);
  const auto tour = solve_exact_dp(inst);
  CHECK(tour_cost(tour, inst.truck_time) == doctest::Approx(4.0));
}

TEST_CASE("exact DP equals permutation enumeration at n=10") {
  for (std::uint64_t seed : {1ull, 2ull}) {
    const Instance inst = test::small_instance(10, seed);
    const auto tour = solve_exact_dp(inst);
    CHECK(tour.front() == 0);
    CHECK(tour.back() == 0);
    CHECK(tour.size() == 11);
    CHECK(tour_cost(tour, inst.truck_time) == doctest::Approx(brute_force_tsp(inst)));
  }
}

TEST_CASE("exact DP refuses oversized instances") {
  const Instance inst = test::small_instance(19, 3);
  CHECK_THROWS_WITH_AS(solve_exact_dp(inst), doctest::Contains("exact seed limited to n <= 18"),
                       std::invalid_argument);
}

TEST_CASE("heuristic tour: valid, no 2-opt improvement left, dominated by DP") {
  for (std::uint64_t seed : {5ull, 6ull, 7ull}) {
    const Instance inst = test::small_instance(10, seed);
    const auto tour = solve_heuristic(inst, seed);
    const auto exact = solve_exact_dp(inst);
    CHECK(tour_cost(tour, inst.truck_time) >=
          tour_cost(exact, inst.truck_time) - 1e-9);
    // exhaustive 2-opt scan of the output
    const int m = static_cast<int>(tour.size());
    const auto& T = inst.truck_time;
    for (int i = 1; i <= m - 3; ++i)
      for (int j = i + 1; j <= m - 2; ++j) {
        const double gain = T(tour[i - 1], tour[i]) + T(tour[j], tour[j + 1]) -
                            T(tour[i - 1], tour[j]) - T(tour[i], tour[j + 1]);
        CHECK(gain <= kImproveEps);
      }
  }
}

TEST_CASE("collinear points: heuristic finds the sweep") {
  const Instance inst = manual_instance({{0, 0}, {1, 0}, {2, 0}}, Metric::Euclidean);
  const auto tour = solve_heuristic(inst, 0);
  CHECK(tour_cost(tour, inst.truck_time) == doctest::Approx(4.0));
}

TEST_CASE("tour import: anchoring, rotation, validation") {
  const Instance inst = test::small_instance(4, 9);
  CHECK(parse_tour(inst, "0 3 1 2") == std::vector<int>{0, 3, 1, 2, 0});
  CHECK(parse_tour(inst, "1 2 3 0") == std::vector<int>{0, 1, 2, 3, 0});
  // rotation preserves cost under symmetric times
  CHECK(tour_cost(parse_tour(inst, "1 2 3 0"), inst.truck_time) ==
        doctest::Approx(tour_cost(std::vector<int>{1, 2, 3, 0, 1}, inst.truck_time)));
  CHECK_THROWS_WITH_AS(parse_tour(inst, "0 1 1 2"), doctest::Contains("duplicates"),
                       std::invalid_argument);
  CHECK_THROWS_AS(parse_tour(inst, "0 1 2 7"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tour(inst, "0 1 2"), std::invalid_argument);
}
