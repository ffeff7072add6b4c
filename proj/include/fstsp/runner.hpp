#ifndef FSTSP_RUNNER_HPP
#define FSTSP_RUNNER_HPP

#include <ostream>

#include "fstsp/search.hpp"

namespace fstsp {

struct RunOptions {
  int runs = 10;
  std::uint64_t base_seed = 0;
  SeedSpec seed;
  SearchConfig search;  // rng_seed is overwritten per run from base_seed
  int jobs = 1;
};

struct ExperimentResult {
  std::vector<RunReport> runs;  // ordered by run index
  int best_run = -1;
  double best_cost = kInfinity;
};

// Ten-runs-per-instance style experiment; run r uses derive_seed(base, r).
// Deterministic in everything except wall times, independent of jobs.
ExperimentResult run_experiment(const Instance& inst, const RunOptions& opts);

// CSV rows instance,n,seed,run,s_tsp,s_fstsp,gap_pct,time_s plus an
// aggregate line with mean cost and gap.
void write_run_csv(std::ostream& out, const Instance& inst, const ExperimentResult& result,
                   bool header = true);

}  // namespace fstsp

#endif  // FSTSP_RUNNER_HPP
