#include "fstsp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fstsp {

std::string Violation::describe() const {
  std::ostringstream out;
  switch (kind) {
    case ViolationKind::Endurance:
      out << "Endurance: sortie " << sortie_a << " airborne " << used << " min > limit " << limit;
      break;
    case ViolationKind::Prohibition1:
      out << "Prohibition1: sorties " << sortie_a << " and " << sortie_b << " interleave";
      break;
    case ViolationKind::Prohibition2:
      if (sortie_a == sortie_b)
        out << "Prohibition2: sortie " << sortie_a << " launch/return degenerate or reversed";
      else
        out << "Prohibition2: sortie " << sortie_b << " nested inside sortie " << sortie_a;
      break;
    case ViolationKind::Eligibility:
      out << "Eligibility: node " << node << " is not drone-eligible";
      break;
    case ViolationKind::Coverage:
      out << "Coverage: node " << node << " is not served exactly once";
      break;
    case ViolationKind::DepotRelaunch:
      out << "DepotRelaunch: sortie " << sortie_a << " reuses the depot anchor";
      break;
  }
  return out.str();
}

namespace {

struct LegView {
  int index;
  int lpos;
  int rpos;
  double flight;
};

std::vector<LegView> make_legs(const Solution& sol, const Instance& inst,
                               const std::vector<int>& pos) {
  const int m = static_cast<int>(sol.tour.size());
  std::vector<LegView> legs;
  legs.reserve(sol.sorties.size());
  for (int k = 0; k < static_cast<int>(sol.sorties.size()); ++k) {
    const Sortie& s = sol.sorties[k];
    legs.push_back({k, launch_position(pos, s.launch), return_position(pos, s.ret, m),
                    inst.drone_time(s.launch, s.visit) + inst.drone_time(s.visit, s.ret)});
  }
  std::sort(legs.begin(), legs.end(), [](const LegView& a, const LegView& b) {
    if (a.lpos != b.lpos) return a.lpos < b.lpos;
    if (a.rpos != b.rpos) return a.rpos < b.rpos;
    return a.index < b.index;
  });
  return legs;
}

}  // namespace

Timeline evaluate(const Solution& sol, const Instance& inst, const EvalOptions& opts) {
  const int m = static_cast<int>(sol.tour.size());
  const int K = static_cast<int>(sol.sorties.size());
  auto pos = tour_positions(sol.tour, inst.n);
  auto legs = make_legs(sol, inst, pos);

  Timeline tl;
  tl.truck_arrive.assign(m, 0.0);
  tl.truck_depart.assign(m, 0.0);
  tl.drone_launch_t.assign(K, 0.0);
  tl.drone_return_t.assign(K, 0.0);
  tl.wait_truck.assign(K, 0.0);
  tl.wait_drone.assign(K, 0.0);
  tl.endurance_used.assign(K, 0.0);

  // Events per position, in temporal order: the inbound return lands first,
  // then any loop trips, then the outbound launch departs.
  std::vector<std::vector<int>> returns_at(m), loops_at(m), launches_at(m);
  for (int i = 0; i < static_cast<int>(legs.size()); ++i) {
    const auto& leg = legs[i];
    if (leg.lpos == leg.rpos) loops_at[leg.lpos].push_back(i);
    else {
      launches_at[leg.lpos].push_back(i);
      returns_at[leg.rpos].push_back(i);
    }
  }

  double t = 0.0;
  std::vector<double> depart_time(legs.size(), 0.0);
  for (int p = 0; p < m; ++p) {
    tl.truck_arrive[p] = t;
    for (int i : returns_at[p]) {
      const auto& leg = legs[i];
      const double drone_arrive = depart_time[i] + leg.flight;
      tl.drone_return_t[leg.index] = drone_arrive;
      tl.wait_truck[leg.index] = std::max(0.0, drone_arrive - t);
      tl.wait_drone[leg.index] = std::max(0.0, t - drone_arrive);
      tl.endurance_used[leg.index] = leg.flight + tl.wait_drone[leg.index] +
                                     (opts.endurance_includes_recovery ? inst.service_return_sr : 0.0);
      t = std::max(t, drone_arrive) + inst.service_return_sr;
    }
    for (int i : loops_at[p]) {
      const auto& leg = legs[i];
      t += inst.service_launch_sl;
      tl.drone_launch_t[leg.index] = t;
      const double drone_arrive = t + leg.flight;
      tl.drone_return_t[leg.index] = drone_arrive;
      tl.wait_truck[leg.index] = leg.flight;
      tl.wait_drone[leg.index] = 0.0;
      tl.endurance_used[leg.index] = leg.flight +
                                     (opts.endurance_includes_recovery ? inst.service_return_sr : 0.0);
      t = drone_arrive + inst.service_return_sr;
    }
    for (int i : launches_at[p]) {
      t += inst.service_launch_sl;
      tl.drone_launch_t[legs[i].index] = t;
      depart_time[i] = t;
    }
    tl.truck_depart[p] = t;
    if (p + 1 < m) t += inst.truck_time(sol.tour[p], sol.tour[p + 1]);
  }
  tl.makespan = tl.truck_depart[m - 1];
  return tl;
}

double completion_time(const Solution& sol, const Instance& inst) {
  return SolutionCosting(sol, inst).cost();
}

SolutionCosting::SolutionCosting(const Solution& sol, const Instance& inst)
    : sol_(&sol), inst_(&inst), m_(static_cast<int>(sol.tour.size())) {
  pos_ = tour_positions(sol.tour, inst.n);
  prefix_.assign(m_, 0.0);
  for (int p = 0; p + 1 < m_; ++p)
    prefix_[p + 1] = prefix_[p] + inst.truck_time(sol.tour[p], sol.tour[p + 1]);

  covering_.assign(std::max(0, m_ - 1), -1);
  anchor_prefix_.assign(m_ + 1, 0);
  legs_.clear();
  for (int k = 0; k < static_cast<int>(sol.sorties.size()); ++k) {
    const Sortie& s = sol.sorties[k];
    SortieLeg leg;
    leg.index = k;
    leg.lpos = launch_position(pos_, s.launch);
    leg.rpos = return_position(pos_, s.ret, m_);
    leg.flight = inst.drone_time(s.launch, s.visit) + inst.drone_time(s.visit, s.ret);
    leg.truck_d = prefix_[leg.rpos] - prefix_[leg.lpos];
    legs_.push_back(leg);
  }
  std::sort(legs_.begin(), legs_.end(), [](const SortieLeg& a, const SortieLeg& b) {
    if (a.lpos != b.lpos) return a.lpos < b.lpos;
    if (a.rpos != b.rpos) return a.rpos < b.rpos;
    return a.index < b.index;
  });
  for (int i = 0; i < static_cast<int>(legs_.size()); ++i) {
    const auto& leg = legs_[i];
    for (int p = leg.lpos; p < leg.rpos; ++p) covering_[p] = i;
    anchor_prefix_[leg.lpos + 1]++;
    if (leg.rpos != leg.lpos) anchor_prefix_[leg.rpos + 1]++;
  }
  for (int p = 0; p < m_; ++p) anchor_prefix_[p + 1] += anchor_prefix_[p];

  cost_ = prefix_[m_ - 1];
  const double services = inst.service_launch_sl + inst.service_return_sr;
  for (const auto& leg : legs_) cost_ += services + wait_term(leg.flight, leg.truck_d);
}

std::vector<Violation> check_feasible(const Solution& sol, const Instance& inst,
                                      const EvalOptions& opts) {
  std::vector<Violation> out;
  const int m = static_cast<int>(sol.tour.size());

  // Coverage and eligibility are meaningful even for malformed inputs.
  if (m < 2 || sol.tour.front() != 0 || sol.tour.back() != 0)
    out.push_back({ViolationKind::Coverage, -1, -1, 0});
  std::vector<int> seen(inst.n, 0);
  bool ids_ok = true;
  for (int v : sol.tour) {
    if (v < 0 || v >= inst.n) {
      out.push_back({ViolationKind::Coverage, -1, -1, v});
      ids_ok = false;
      continue;
    }
    if (v != 0) seen[v]++;
  }
  for (int k = 0; k < static_cast<int>(sol.sorties.size()); ++k) {
    const Sortie& s = sol.sorties[k];
    for (int v : {s.launch, s.visit, s.ret})
      if (v < 0 || v >= inst.n) {
        out.push_back({ViolationKind::Coverage, k, -1, v});
        ids_ok = false;
      }
    if (!ids_ok) return out;
    seen[s.visit]++;
    if (!inst.eligible[s.visit]) out.push_back({ViolationKind::Eligibility, k, -1, s.visit});
  }
  for (int v = 1; v < inst.n; ++v)
    if (seen[v] != 1) out.push_back({ViolationKind::Coverage, -1, -1, v});

  auto pos = tour_positions(sol.tour, inst.n);
  struct Iv {
    int k, l, r;
    double flight;
  };
  std::vector<Iv> ivs;
  int depot_launches = 0, depot_returns = 0;
  for (int k = 0; k < static_cast<int>(sol.sorties.size()); ++k) {
    const Sortie& s = sol.sorties[k];
    if ((s.launch != 0 && pos[s.launch] < 0) || (s.ret != 0 && pos[s.ret] < 0)) {
      out.push_back({ViolationKind::Coverage, k, -1, pos[s.launch] < 0 ? s.launch : s.ret});
      continue;
    }
    const int l = launch_position(pos, s.launch);
    const int r = return_position(pos, s.ret, m);
    if (inst.variant == Variant::FSTSP) {
      if (s.launch == 0 && ++depot_launches > 1) {
        out.push_back({ViolationKind::DepotRelaunch, k});
        continue;
      }
      if (s.ret == 0 && ++depot_returns > 1) {
        out.push_back({ViolationKind::DepotRelaunch, k});
        continue;
      }
      if (l >= r) {
        out.push_back({ViolationKind::Prohibition2, k, k});
        continue;
      }
    } else if (l > r) {
      out.push_back({ViolationKind::Prohibition2, k, k});
      continue;
    }
    ivs.push_back({k, l, r, inst.drone_time(s.launch, s.visit) + inst.drone_time(s.visit, s.ret)});
  }

  std::sort(ivs.begin(), ivs.end(), [](const Iv& a, const Iv& b) {
    if (a.l != b.l) return a.l < b.l;
    if (a.r != b.r) return a.r < b.r;
    return a.k < b.k;
  });
  for (size_t i = 0; i < ivs.size(); ++i)
    for (size_t j = i + 1; j < ivs.size(); ++j) {
      const Iv& a = ivs[i];
      const Iv& b = ivs[j];
      if (a.r <= b.l) continue;  // shared endpoint = legal chaining
      if (b.r <= a.r) out.push_back({ViolationKind::Prohibition2, a.k, b.k});
      else out.push_back({ViolationKind::Prohibition1, a.k, b.k});
    }

  // Endurance over the synchronized timeline only when the trips are well
  // formed enough for the waits to mean anything.
  if (out.empty() && inst.endurance_e != kInfinity) {
    Timeline tl = evaluate(sol, inst, opts);
    for (int k = 0; k < static_cast<int>(sol.sorties.size()); ++k)
      if (tl.endurance_used[k] > inst.endurance_e + kEqualEps) {
        Violation v{ViolationKind::Endurance, k, -1, sol.sorties[k].visit};
        v.used = tl.endurance_used[k];
        v.limit = inst.endurance_e;
        out.push_back(v);
      }
  }
  return out;
}

bool is_feasible(const Solution& sol, const Instance& inst) {
  return check_feasible(sol, inst).empty();
}

}  // namespace fstsp
