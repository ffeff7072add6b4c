#ifndef FSTSP_SEARCH_HPP
#define FSTSP_SEARCH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "fstsp/construction.hpp"
#include "fstsp/neighborhoods.hpp"

namespace fstsp {

enum class SeedStrategy { Auto, ExactDp, Heuristic, Import };

struct SeedSpec {
  SeedStrategy strategy = SeedStrategy::Auto;
  std::string import_path;
};

struct SearchConfig {
  std::uint64_t rng_seed = 0;
  int k_max = 7;
  int outer_restarts = 1;
  std::optional<double> time_budget_s;
  double improvement_eps = kImproveEps;
};

struct RunReport {
  std::string instance;
  std::uint64_t seed = 0;
  double s_tsp_cost = 0.0;
  double initial_cost = 0.0;
  double final_cost = 0.0;
  double gap_vs_tsp = 0.0;  // (final - s_tsp) / s_tsp
  double wall_time_s = 0.0;
  double seed_time_s = 0.0;
  std::array<long, 7> improving_moves{};
  std::array<long, 7> shakes{};
  Solution best;
};

// Descent with the neighborhood order reshuffled after every improvement;
// returns a local optimum for all k_max registered neighborhoods.
Solution rvnd(Solution sol, const Instance& inst, Rng& rng, int k_max = 7,
              std::array<long, 7>* counters = nullptr);

// Shake with neighborhood k, descend, accept on improvement (k resets);
// one sweep ends when k exceeds k_max.
Solution gvns(Solution sol, const Instance& inst, const SearchConfig& cfg, Rng& rng,
              RunReport* report = nullptr);

// Seed tour -> savings construction -> GVNS.
RunReport hgvns(const Instance& inst, const SeedSpec& seed, const SearchConfig& cfg);

std::vector<int> make_seed_tour(const Instance& inst, const SeedSpec& seed,
                                std::uint64_t rng_seed);

}  // namespace fstsp

#endif  // FSTSP_SEARCH_HPP
