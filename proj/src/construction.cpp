#include "fstsp/construction.hpp"

#include <algorithm>

namespace fstsp {

double compute_savings(const Solution& sol, const Instance& inst, int j) {
  const auto pos = tour_positions(sol.tour, inst.n);
  if (j <= 0 || j >= inst.n || pos[j] < 0)
    throw std::invalid_argument("customer " + std::to_string(j) + " is not on the truck tour");
  const int p = pos[j];
  const auto& T = inst.truck_time;
  return T(sol.tour[p - 1], j) + T(j, sol.tour[p + 1]) - T(sol.tour[p - 1], sol.tour[p + 1]);
}

std::optional<Move> best_insertion_as_truck(const Solution& sol, const Instance& inst, int j,
                                            const Segment& seg) {
  if (!seg.paired) return std::nullopt;
  SolutionCosting C(sol, inst);
  const int pj = j > 0 && j < inst.n ? C.positions()[j] : -1;
  if (pj < 0 || C.anchored(pj)) return std::nullopt;
  return best_reinsertion_into_range(C, pj, seg.begin_pos, seg.end_pos - 1);
}

std::optional<Move> best_assignment_as_drone(const Solution& sol, const Instance& inst, int j,
                                             const Segment& seg) {
  if (seg.paired) return std::nullopt;
  SolutionCosting C(sol, inst);
  const int pj = j > 0 && j < inst.n ? C.positions()[j] : -1;
  if (pj < 0 || C.anchored(pj) || !inst.eligible[j]) return std::nullopt;
  if (pj < seg.begin_pos || pj > seg.end_pos) return std::nullopt;
  return best_sortie_within(C, pj, seg.begin_pos, seg.end_pos);
}

Solution create_initial_solution(const std::vector<int>& tsp_tour, const Instance& inst) {
  Solution sol = truck_only_solution(tsp_tour, inst);
  if (inst.n <= 2) return sol;

  while (true) {
    SolutionCosting C(sol, inst);
    const auto segs = subroutes(sol);
    std::optional<Move> best;
    for (int j = 1; j < inst.n; ++j) {
      if (!inst.eligible[j]) continue;
      const int pj = C.positions()[j];
      if (pj < 0 || C.anchored(pj)) continue;  // flown already, or anchoring a trip
      for (const auto& seg : segs) {
        std::optional<Move> cand;
        if (seg.paired) {
          cand = best_reinsertion_into_range(C, pj, seg.begin_pos, seg.end_pos - 1);
        } else if (pj >= seg.begin_pos && pj <= seg.end_pos) {
          cand = best_sortie_within(C, pj, seg.begin_pos, seg.end_pos);
        }
        if (cand && (!best || cand->delta < best->delta)) best = std::move(cand);
      }
    }
    if (!best || best->delta >= -kImproveEps) break;
    apply_move(sol, *best, inst);
  }
  return sol;
}

}  // namespace fstsp
