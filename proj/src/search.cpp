#include "fstsp/search.hpp"

#include <cassert>
#include <chrono>
#include <numeric>

#include "fstsp/tsp_seed.hpp"

namespace fstsp {

namespace {
double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}
}  // namespace

Solution rvnd(Solution sol, const Instance& inst, Rng& rng, int k_max,
              std::array<long, 7>* counters) {
  const auto& neighborhoods = all_neighborhoods();
  if (k_max < 0 || k_max > static_cast<int>(neighborhoods.size()))
    throw std::invalid_argument("k_max exceeds the registered neighborhood count");
  std::vector<int> order(k_max);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  int k = 1;
  while (k <= static_cast<int>(order.size())) {
    const int which = order[k - 1];
    const auto mv = neighborhoods[which]->best(sol, inst);
    if (mv && mv->delta < -kImproveEps) {
      apply_move(sol, *mv, inst);
      if (counters) (*counters)[which]++;
#ifndef NDEBUG
      assert(is_feasible(sol, inst));
#endif
      rng.shuffle(order);
      k = 1;
    } else {
      ++k;
    }
  }
  return sol;
}

Solution gvns(Solution sol, const Instance& inst, const SearchConfig& cfg, Rng& rng,
              RunReport* report) {
  const auto& neighborhoods = all_neighborhoods();
  if (cfg.k_max < 0 || cfg.k_max > static_cast<int>(neighborhoods.size()))
    throw std::invalid_argument("k_max exceeds the registered neighborhood count");
  const auto t0 = std::chrono::steady_clock::now();
  double cost = completion_time(sol, inst);
  for (int restart = 0; restart < std::max(1, cfg.outer_restarts); ++restart) {
    int k = 1;
    while (k <= cfg.k_max) {
      if (cfg.time_budget_s && seconds_since(t0) > *cfg.time_budget_s) return sol;
      Solution trial = sol;
      if (const auto mv = neighborhoods[k - 1]->random(trial, inst, rng)) {
        apply_move(trial, *mv, inst);
        if (report) report->shakes[k - 1]++;
      }
      trial = rvnd(std::move(trial), inst, rng, cfg.k_max,
                   report ? &report->improving_moves : nullptr);
      const double trial_cost = completion_time(trial, inst);
      if (trial_cost < cost - cfg.improvement_eps) {
        sol = std::move(trial);
        cost = trial_cost;
#ifndef NDEBUG
        assert(is_feasible(sol, inst));
#endif
        k = 1;
      } else {
        ++k;
      }
    }
  }
  return sol;
}

std::vector<int> make_seed_tour(const Instance& inst, const SeedSpec& seed,
                                std::uint64_t rng_seed) {
  switch (seed.strategy) {
    case SeedStrategy::ExactDp: return solve_exact_dp(inst);
    case SeedStrategy::Heuristic: return solve_heuristic(inst, rng_seed);
    case SeedStrategy::Import: return import_tour(inst, seed.import_path);
    case SeedStrategy::Auto:
      return inst.n <= 13 ? solve_exact_dp(inst) : solve_heuristic(inst, rng_seed);
  }
  throw std::logic_error("unknown seed strategy");
}

RunReport hgvns(const Instance& inst, const SeedSpec& seed, const SearchConfig& cfg) {
  RunReport rep;
  rep.instance = inst.name;
  rep.seed = cfg.rng_seed;

  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<int> seed_tour = make_seed_tour(inst, seed, cfg.rng_seed);
  rep.seed_time_s = seconds_since(t0);
  rep.s_tsp_cost = tour_cost(seed_tour, inst.truck_time);

  Solution init = create_initial_solution(seed_tour, inst);
  rep.initial_cost = completion_time(init, inst);

  Rng rng(cfg.rng_seed);
  Solution out = gvns(std::move(init), inst, cfg, rng, &rep);
  rep.final_cost = completion_time(out, inst);
  rep.gap_vs_tsp = rep.s_tsp_cost > 0.0 ? (rep.final_cost - rep.s_tsp_cost) / rep.s_tsp_cost : 0.0;
  rep.best = std::move(out);
  rep.wall_time_s = seconds_since(t0);
  return rep;
}

}  // namespace fstsp
