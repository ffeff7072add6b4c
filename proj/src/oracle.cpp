#include "fstsp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>

namespace fstsp {

std::pair<double, Solution> solve_exact(const Instance& inst, bool prune) {
  if (inst.n > kOracleLimit)
    throw std::invalid_argument("exact oracle limited to n <= " + std::to_string(kOracleLimit));
  const int n = inst.n;
  const bool tspd = inst.variant == Variant::TSPD;
  const double services = inst.service_launch_sl + inst.service_return_sr;
  const auto& T = inst.truck_time;
  const auto& D = inst.drone_time;

  const std::vector<int> eligible = inst.eligible_customers();
  const int ne = static_cast<int>(eligible.size());

  double best_cost = kInfinity;
  Solution best;

  std::vector<int> drones, rest, tour;
  std::vector<double> prefix;
  std::vector<Sortie> cur;

  for (int mask = 0; mask < (1 << ne); ++mask) {
    drones.clear();
    for (int b = 0; b < ne; ++b)
      if (mask & (1 << b)) drones.push_back(eligible[b]);
    rest.clear();
    for (int v = 1; v < n; ++v)
      if (std::find(drones.begin(), drones.end(), v) == drones.end()) rest.push_back(v);

    const int kd = static_cast<int>(drones.size());
    const unsigned all_used = (1u << kd) - 1;

    std::vector<int> perm = rest;  // ascending start for next_permutation
    do {
      tour.assign(1, 0);
      tour.insert(tour.end(), perm.begin(), perm.end());
      tour.push_back(0);
      const int m = static_cast<int>(tour.size());
      prefix.assign(m, 0.0);
      for (int p = 0; p + 1 < m; ++p) prefix[p + 1] = prefix[p] + T(tour[p], tour[p + 1]);
      const double tour_len = prefix[m - 1];
      if (prune && tour_len + kd * services >= best_cost - kEqualEps) continue;

      cur.clear();
      auto rec = [&](auto&& self, unsigned used, int last_l, int last_r, int last_d,
                     double acc) -> void {
        if (used == all_used) {
          if (acc < best_cost) {
            best_cost = acc;
            best.tour = tour;
            best.sorties = cur;
          }
          return;
        }
        int remaining = kd - static_cast<int>(std::popcount(used));
        if (prune && acc + remaining * services >= best_cost - kEqualEps) return;
        for (int di = 0; di < kd; ++di) {
          if (used & (1u << di)) continue;
          const int d = drones[di];
          for (int l = std::max(0, last_r); l <= m - 2; ++l) {
            const int r_lo = tspd && tour[l] != 0 ? l : l + 1;
            for (int r = r_lo; r <= m - 1; ++r) {
              if (l == last_l && r == last_r && di <= last_d) continue;
              const double flight = D(tour[l], d) + D(d, tour[r]);
              const double span = prefix[r] - prefix[l];
              const double used_endurance = std::max(flight, span);
              if (used_endurance > inst.endurance_e + kEqualEps) continue;
              const double extra = services + std::max(0.0, flight - span);
              cur.push_back({tour[l], d, tour[r]});
              self(self, used | (1u << di), l, r, di, acc + extra);
              cur.pop_back();
            }
          }
        }
      };
      rec(rec, 0u, -1, 0, -1, tour_len);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

#ifndef NDEBUG
  if (best_cost != kInfinity) {
    assert(is_feasible(best, inst));
    assert(std::abs(completion_time(best, inst) - best_cost) < 1e-7);
  }
#endif
  return {best_cost, best};
}

}  // namespace fstsp
