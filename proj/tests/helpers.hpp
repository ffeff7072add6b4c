#ifndef FSTSP_TESTS_HELPERS_HPP
#define FSTSP_TESTS_HELPERS_HPP

#include <numeric>
#include <vector>

#include "fstsp/instance.hpp"
#include "fstsp/model.hpp"
#include "fstsp/neighborhoods.hpp"
#include "fstsp/util.hpp"

namespace fstsp::test {

// 3-node line: tau(0,2)=10, tau'(0,1)=tau'(1,2)=3, sl=0.6, sr=0.5, e=24.
inline Instance line3_instance() {
  Instance inst;
  inst.name = "line3";
  inst.n = 3;
  inst.variant = Variant::FSTSP;
  inst.coords = {{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.0}};
  inst.eligible = {false, true, true};
  inst.truck_time = TimeMatrix(3);
  inst.drone_time = TimeMatrix(3);
  auto set = [](TimeMatrix& m, int i, int j, double v) { m(i, j) = m(j, i) = v; };
  set(inst.truck_time, 0, 1, 6.0);
  set(inst.truck_time, 1, 2, 6.0);
  set(inst.truck_time, 0, 2, 10.0);
  set(inst.drone_time, 0, 1, 3.0);
  set(inst.drone_time, 1, 2, 3.0);
  set(inst.drone_time, 0, 2, 5.0);
  inst.endurance_e = 24.0;
  inst.service_launch_sl = 0.6;
  inst.service_return_sr = 0.5;
  inst.truck_speed_kmh = 1.0;
  inst.drone_speed_kmh = 1.0;
  return inst;
}

inline Instance small_instance(int n, std::uint64_t seed, Family family = Family::Ponza,
                               double alpha = 2.0) {
  GeneratorParams p;
  p.family = family;
  p.n = n;
  p.rng_seed = seed;
  p.alpha = alpha;
  return generate(p);
}

// For fixtures that pin explicit sorties regardless of the eligibility draw.
inline Instance all_eligible(Instance inst) {
  inst.eligible.assign(inst.n, true);
  inst.eligible[0] = false;
  return inst;
}

inline std::vector<int> identity_tour(int n) {
  std::vector<int> tour(n);
  std::iota(tour.begin(), tour.end(), 0);
  tour.push_back(0);
  return tour;
}

inline std::vector<int> random_tour(int n, Rng& rng) {
  std::vector<int> customers(n - 1);
  std::iota(customers.begin(), customers.end(), 1);
  rng.shuffle(customers);
  std::vector<int> tour{0};
  tour.insert(tour.end(), customers.begin(), customers.end());
  tour.push_back(0);
  return tour;
}

// Truck-only start walked away by random feasible moves.
inline Solution random_solution(const Instance& inst, Rng& rng, int nmoves) {
  Solution sol = truck_only_solution(random_tour(inst.n, rng), inst);
  const auto& nbs = all_neighborhoods();
  for (int i = 0; i < nmoves; ++i) {
    const auto* nb = nbs[rng.bounded(static_cast<int>(nbs.size()))];
    if (auto mv = nb->random(sol, inst, rng)) apply_move(sol, *mv, inst);
  }
  return sol;
}

}  // namespace fstsp::test

#endif
