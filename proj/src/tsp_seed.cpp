#include "fstsp/tsp_seed.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fstsp/util.hpp"

namespace fstsp {

double tour_cost(const std::vector<int>& tour, const TimeMatrix& m) {
  double c = 0.0;
  for (size_t p = 0; p + 1 < tour.size(); ++p) c += m(tour[p], tour[p + 1]);
  return c;
}

std::vector<int> solve_exact_dp(const Instance& inst) {
  const int n = inst.n;
  if (n > kExactTspLimit)
    throw std::invalid_argument("exact seed limited to n <= " + std::to_string(kExactTspLimit));
  if (n == 1) return {0, 0};
  const int c = n - 1;  // customers 1..n-1 mapped to bits 0..c-1
  const auto& T = inst.truck_time;
  const size_t full = size_t(1) << c;
  std::vector<double> dp(full * c, kInfinity);
  std::vector<int> parent(full * c, -1);
  for (int j = 0; j < c; ++j) dp[(size_t(1) << j) * c + j] = T(0, j + 1);
  for (size_t mask = 1; mask < full; ++mask) {
    for (int j = 0; j < c; ++j) {
      if (!(mask & (size_t(1) << j))) continue;
      const double cur = dp[mask * c + j];
      if (cur == kInfinity) continue;
      for (int k = 0; k < c; ++k) {
        if (mask & (size_t(1) << k)) continue;
        const size_t next = mask | (size_t(1) << k);
        const double cand = cur + T(j + 1, k + 1);
        if (cand < dp[next * c + k]) {
          dp[next * c + k] = cand;
          parent[next * c + k] = j;
        }
      }
    }
  }
  double best = kInfinity;
  int last = -1;
  for (int j = 0; j < c; ++j) {
    const double cand = dp[(full - 1) * c + j] + T(j + 1, 0);
    if (cand < best) {
      best = cand;
      last = j;
    }
  }
  std::vector<int> tour;
  size_t mask = full - 1;
  while (last >= 0) {
    tour.push_back(last + 1);
    const int prev = parent[mask * c + last];
    mask &= ~(size_t(1) << last);
    last = prev;
  }
  std::reverse(tour.begin(), tour.end());
  tour.insert(tour.begin(), 0);
  tour.push_back(0);
  return tour;
}

static void two_opt_descend(std::vector<int>& tour, const TimeMatrix& T) {
  const int m = static_cast<int>(tour.size());
  bool improved = true;
  while (improved) {
    improved = false;
    double best_gain = -kImproveEps;
    int bi = -1, bj = -1;
    for (int i = 1; i <= m - 3; ++i)
      for (int j = i + 1; j <= m - 2; ++j) {
        const double gain = T(tour[i - 1], tour[i]) + T(tour[j], tour[j + 1]) -
                            T(tour[i - 1], tour[j]) - T(tour[i], tour[j + 1]);
        if (gain > best_gain + kEqualEps) {
          best_gain = gain;
          bi = i;
          bj = j;
        }
      }
    if (bi >= 0 && best_gain > kImproveEps) {
      std::reverse(tour.begin() + bi, tour.begin() + bj + 1);
      improved = true;
    }
  }
}

std::vector<int> solve_heuristic(const Instance& inst, std::uint64_t rng_seed) {
  (void)rng_seed;  // construction is already deterministic; kept for the interface
  const int n = inst.n;
  if (n < 2) return {0, 0};
  const auto& T = inst.truck_time;
  std::vector<bool> used(n, false);
  std::vector<int> tour{0};
  used[0] = true;
  int cur = 0;
  for (int step = 1; step < n; ++step) {
    int best = -1;
    double best_d = kInfinity;
    for (int v = 1; v < n; ++v) {
      if (used[v]) continue;
      if (T(cur, v) < best_d) {
        best_d = T(cur, v);
        best = v;
      }
    }
    tour.push_back(best);
    used[best] = true;
    cur = best;
  }
  tour.push_back(0);
  two_opt_descend(tour, T);
  return tour;
}

std::vector<int> parse_tour(const Instance& inst, const std::string& text) {
  std::istringstream in(text);
  std::vector<int> ids;
  int v;
  while (in >> v) ids.push_back(v);
  if (static_cast<int>(ids.size()) != inst.n)
    throw std::invalid_argument("tour file lists " + std::to_string(ids.size()) +
                                " nodes, expected " + std::to_string(inst.n));
  std::vector<int> seen(inst.n, 0);
  for (int id : ids) {
    if (id < 0 || id >= inst.n)
      throw std::invalid_argument("tour file references unknown node " + std::to_string(id));
    if (seen[id]++)
      throw std::invalid_argument("tour file duplicates node " + std::to_string(id));
  }
  auto depot = std::find(ids.begin(), ids.end(), 0);
  std::rotate(ids.begin(), depot, ids.end());
  ids.push_back(0);
  return ids;
}

std::vector<int> import_tour(const Instance& inst, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tour file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tour(inst, buf.str());
}

}  // namespace fstsp
