#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "fstsp/evaluation.hpp"
#include "fstsp/instance.hpp"
#include "fstsp/model.hpp"
#include "fstsp/oracle.hpp"
#include "fstsp/plot.hpp"
#include "fstsp/runner.hpp"
#include "fstsp/search.hpp"

namespace fs = std::filesystem;
using namespace fstsp;

namespace {

// Exit codes: 0 ok, 1 infeasible/validation, 2 usage, 3 IO.
constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::vector<std::array<double, 2>> read_xy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coordinates file: " + path);
  std::vector<std::array<double, 2>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double x, y;
    if (ls >> x >> y) out.push_back({x, y});
  }
  return out;
}

Family parse_family(const std::string& name) {
  if (name == "ponza") return Family::Ponza;
  if (name == "agatz-uniform") return Family::AgatzUniform;
  if (name == "agatz-single") return Family::AgatzSingleCenter;
  if (name == "agatz-double") return Family::AgatzDoubleCenter;
  if (name == "tsplib") return Family::TsplibDerived;
  throw CLI::ValidationError("family", "unknown family '" + name + "'");
}

SeedStrategy parse_strategy(const std::string& name) {
  if (name == "auto") return SeedStrategy::Auto;
  if (name == "exact") return SeedStrategy::ExactDp;
  if (name == "heuristic") return SeedStrategy::Heuristic;
  if (name == "import") return SeedStrategy::Import;
  throw CLI::ValidationError("strategy", "unknown seed strategy '" + name + "'");
}

int cmd_gen(const std::string& family_name, int n, std::uint64_t seed, const std::string& out,
            double alpha, const std::string& coords_path, double scale, double elig_lo,
            double elig_hi, const std::string& name_override) {
  GeneratorParams p;
  p.family = parse_family(family_name);
  p.n = n;
  p.rng_seed = seed;
  p.alpha = alpha;
  p.eligible_lo = elig_lo;
  p.eligible_hi = elig_hi;
  p.coord_scale = scale;
  if (p.family == Family::TsplibDerived) {
    if (coords_path.empty()) throw CLI::ValidationError("--coords", "tsplib family needs --coords");
    p.tsplib_coords = read_xy(coords_path);
    if (n == 0) p.n = static_cast<int>(p.tsplib_coords.size());
  }
  Instance inst = generate(p);
  if (!name_override.empty()) inst.name = name_override;

  std::string path = out;
  if (path.empty()) path = ".";
  if (fs::is_directory(path) || path.back() == '/') {
    fs::create_directories(path);
    path = (fs::path(path) / (inst.name + ".fstsp")).string();
  }
  save_instance(inst, path);
  std::cout << path << "\n";
  return kExitOk;
}

int cmd_run(const std::string& instance_path, const RunOptions& opts, const std::string& csv_path,
            const std::string& best_path) {
  const Instance inst = load_instance(instance_path);
  const ExperimentResult res = run_experiment(inst, opts);
  if (csv_path.empty()) {
    write_run_csv(std::cout, inst, res);
  } else {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write CSV: " + csv_path);
    write_run_csv(out, inst, res);
  }
  if (!best_path.empty()) save_solution(res.runs[res.best_run].best, best_path);
  return kExitOk;
}

int cmd_verify(const std::string& instance_path, const std::string& solution_path) {
  const Instance inst = load_instance(instance_path);
  const Solution sol = load_solution(solution_path);
  const auto structural = structural_errors(sol, inst);
  if (!structural.empty()) {
    for (const auto& e : structural) std::cerr << e << "\n";
    return kExitInfeasible;
  }
  const Timeline tl = evaluate(sol, inst);
  std::cout << "position,node,truck_arrive,truck_depart\n";
  for (size_t p = 0; p < sol.tour.size(); ++p)
    std::cout << p << "," << sol.tour[p] << "," << format_fixed(tl.truck_arrive[p], 4) << ","
              << format_fixed(tl.truck_depart[p], 4) << "\n";
  std::cout << "makespan," << format_fixed(tl.makespan, 4) << "\n";
  const auto violations = check_feasible(sol, inst);
  for (const auto& v : violations) std::cerr << v.describe() << "\n";
  return violations.empty() ? kExitOk : kExitInfeasible;
}

int cmd_plot(const std::string& instance_path, const std::string& solution_path,
             const std::string& svg_path) {
  const Instance inst = load_instance(instance_path);
  const Solution sol = load_solution(solution_path);
  const auto structural = structural_errors(sol, inst);
  if (!structural.empty()) {
    for (const auto& e : structural) std::cerr << e << "\n";
    return kExitInfeasible;
  }
  const auto violations = check_feasible(sol, inst);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << v.describe() << "\n";
    return kExitInfeasible;
  }
  std::ofstream out(svg_path);
  if (!out) throw std::runtime_error("cannot write SVG: " + svg_path);
  write_route_svg(inst, sol, out);
  return kExitOk;
}

int cmd_oracle(const std::string& instance_path, const std::string& out_path) {
  const Instance inst = load_instance(instance_path);
  const auto [cost, sol] = solve_exact(inst);
  std::ostringstream cert;
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(serialize(inst))));
  cert << "INSTANCE_HASH " << hex << "\n";
  cert << "COST " << format_exact(cost) << "\n";
  cert << serialize_solution(sol);
  if (out_path.empty()) {
    std::cout << cert.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write certificate: " + out_path);
    out << cert.str();
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FSTSP / TSP-D solver and benchmark tool"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a benchmark instance");
  std::string g_family, g_out = ".", g_coords, g_name;
  int g_n = 0;
  std::uint64_t g_seed = 0;
  double g_alpha = 1.0, g_scale = 0.01, g_lo = 0.85, g_hi = 0.90;
  gen->add_option("family", g_family, "ponza|agatz-uniform|agatz-single|agatz-double|tsplib")
      ->required();
  gen->add_option("n", g_n, "node count (depot included)")->required();
  gen->add_option("seed", g_seed, "generator seed")->required();
  gen->add_option("out", g_out, "output file or directory");
  gen->add_option("--alpha", g_alpha, "drone/truck speed ratio (agatz families)");
  gen->add_option("--coords", g_coords, "xy coordinates file (tsplib family)");
  gen->add_option("--scale", g_scale, "km per coordinate unit (tsplib family)");
  gen->add_option("--eligible-lo", g_lo, "eligible fraction lower bound (tsplib family)");
  gen->add_option("--eligible-hi", g_hi, "eligible fraction upper bound (tsplib family)");
  gen->add_option("--name", g_name, "override the instance name");

  auto* run = app.add_subcommand("run", "run the HGVNS experiment on an instance");
  std::string r_instance, r_csv, r_best, r_strategy = "auto", r_import;
  int r_runs = 10, r_jobs = 1, r_restarts = 1;
  std::uint64_t r_seed = 0;
  double r_budget = 0.0;
  run->add_option("instance", r_instance, "instance file")->required();
  run->add_option("--runs", r_runs, "independent runs");
  run->add_option("--seed", r_seed, "base seed")->envname("FSTSP_SEED");
  run->add_option("--budget-s", r_budget, "per-run time budget, seconds")
      ->envname("FSTSP_BUDGET_S");
  run->add_option("--strategy", r_strategy, "TSP seed: auto|exact|heuristic|import");
  run->add_option("--import-tour", r_import, "tour file for --strategy import");
  run->add_option("--restarts", r_restarts, "outer GVNS sweeps per run");
  run->add_option("--jobs", r_jobs, "parallel runs");
  run->add_option("--out", r_csv, "CSV output file (default stdout)");
  run->add_option("--best", r_best, "write the best solution here");

  auto* verify = app.add_subcommand("verify", "check a solution and print its timeline");
  std::string v_instance, v_solution;
  verify->add_option("instance", v_instance)->required();
  verify->add_option("solution", v_solution)->required();

  auto* plot = app.add_subcommand("plot", "render the routes as SVG");
  std::string p_instance, p_solution, p_svg;
  plot->add_option("instance", p_instance)->required();
  plot->add_option("solution", p_solution)->required();
  plot->add_option("svg", p_svg, "output SVG path")->required();

  auto* oracle = app.add_subcommand("oracle", "exact optimum certificate for a micro instance");
  std::string o_instance, o_out;
  oracle->add_option("instance", o_instance)->required();
  oracle->add_option("--out", o_out, "certificate file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed())
      return cmd_gen(g_family, g_n, g_seed, g_out, g_alpha, g_coords, g_scale, g_lo, g_hi, g_name);
    if (run->parsed()) {
      RunOptions opts;
      opts.runs = r_runs;
      opts.base_seed = r_seed;
      opts.jobs = r_jobs;
      opts.seed.strategy = parse_strategy(r_strategy);
      opts.seed.import_path = r_import;
      opts.search.outer_restarts = r_restarts;
      if (r_budget > 0.0) opts.search.time_budget_s = r_budget;
      return cmd_run(r_instance, opts, r_csv, r_best);
    }
    if (verify->parsed()) return cmd_verify(v_instance, v_solution);
    if (plot->parsed()) return cmd_plot(p_instance, p_solution, p_svg);
    if (oracle->parsed()) return cmd_oracle(o_instance, o_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
