#include "fstsp/runner.hpp"

#include <atomic>
#include <thread>

namespace fstsp {

ExperimentResult run_experiment(const Instance& inst, const RunOptions& opts) {
  if (opts.runs < 1) throw std::invalid_argument("need at least one run");
  ExperimentResult result;
  result.runs.resize(opts.runs);

  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      const int r = next.fetch_add(1);
      if (r >= opts.runs) return;
      SearchConfig cfg = opts.search;
      cfg.rng_seed = derive_seed(opts.base_seed, static_cast<std::uint64_t>(r));
      result.runs[r] = hgvns(inst, opts.seed, cfg);
    }
  };
  const int jobs = std::max(1, std::min(opts.jobs, opts.runs));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (int r = 0; r < opts.runs; ++r)
    if (result.runs[r].final_cost < result.best_cost) {
      result.best_cost = result.runs[r].final_cost;
      result.best_run = r;
    }
  return result;
}

void write_run_csv(std::ostream& out, const Instance& inst, const ExperimentResult& result,
                   bool header) {
  if (header) out << "instance,n,seed,run,s_tsp,s_fstsp,gap_pct,time_s\n";
  double sum_cost = 0.0, sum_gap = 0.0, sum_time = 0.0;
  for (size_t r = 0; r < result.runs.size(); ++r) {
    const RunReport& rep = result.runs[r];
    out << inst.name << "," << inst.n << "," << rep.seed << "," << r << ","
        << format_fixed(rep.s_tsp_cost, 2) << "," << format_fixed(rep.final_cost, 2) << ","
        << format_fixed(rep.gap_vs_tsp * 100.0, 2) << "," << format_fixed(rep.wall_time_s, 2)
        << "\n";
    sum_cost += rep.final_cost;
    sum_gap += rep.gap_vs_tsp * 100.0;
    sum_time += rep.wall_time_s;
  }
  const double k = static_cast<double>(result.runs.size());
  out << inst.name << "," << inst.n << ",," << "avg" << ","
      << format_fixed(result.runs.empty() ? 0.0 : result.runs[0].s_tsp_cost, 2) << ","
      << format_fixed(sum_cost / k, 2) << "," << format_fixed(sum_gap / k, 2) << ","
      << format_fixed(sum_time / k, 2) << "\n";
}

}  // namespace fstsp
