#ifndef FSTSP_EVALUATION_HPP
#define FSTSP_EVALUATION_HPP

#include <string>
#include <vector>

#include "fstsp/model.hpp"

namespace fstsp {

struct EvalOptions {
  // When true the recovery service s^r also drains the battery.
  bool endurance_includes_recovery = false;
};

struct Timeline {
  std::vector<double> truck_arrive;   // per tour position
  std::vector<double> truck_depart;   // per tour position; last entry = makespan
  std::vector<double> drone_launch_t; // per sortie: both vehicles depart the launch node
  std::vector<double> drone_return_t; // per sortie: drone reaches the return node
  std::vector<double> wait_truck;     // per sortie
  std::vector<double> wait_drone;     // per sortie
  std::vector<double> endurance_used; // per sortie
  double makespan = 0.0;
};

enum class ViolationKind {
  Endurance,
  Prohibition1,  // interleaved trips
  Prohibition2,  // nested (or degenerate) trips
  Eligibility,
  Coverage,
  DepotRelaunch,
};

struct Violation {
  ViolationKind kind;
  int sortie_a = -1;
  int sortie_b = -1;
  int node = -1;
  double used = 0.0;
  double limit = 0.0;
  std::string describe() const;
};

// Full synchronization timeline. Requires a structurally valid solution.
Timeline evaluate(const Solution& sol, const Instance& inst, const EvalOptions& opts = {});

// Makespan via the separable form
//   tour_length + sum_k (sl + sr + max(0, flight_k - truck_leg_k)).
// Agrees with evaluate(...).makespan; the two routes check each other.
double completion_time(const Solution& sol, const Instance& inst);

// Total function: reports every rule broken by the given solution.
std::vector<Violation> check_feasible(const Solution& sol, const Instance& inst,
                                      const EvalOptions& opts = {});

bool is_feasible(const Solution& sol, const Instance& inst);

// Precomputed per-solution state shared by the delta engine: positions,
// tour prefix times, per-sortie legs, and which sortie covers each edge.
class SolutionCosting {
 public:
  SolutionCosting(const Solution& sol, const Instance& inst);

  struct SortieLeg {
    int index = 0;   // into Solution::sorties
    int lpos = 0;
    int rpos = 0;
    double flight = 0.0;   // tau'(launch,visit) + tau'(visit,ret)
    double truck_d = 0.0;  // truck travel from launch departure to return arrival
  };

  const Instance& instance() const { return *inst_; }
  const Solution& solution() const { return *sol_; }
  int tour_size() const { return m_; }
  double cost() const { return cost_; }
  const std::vector<int>& positions() const { return pos_; }
  const std::vector<SortieLeg>& legs() const { return legs_; }

  // Sortie index covering tour edge (p, p+1), or -1 when the edge is in a gap.
  int covering_leg(int edge_pos) const { return covering_[edge_pos]; }
  // Number of sortie anchors in tour positions [a, b].
  int anchors_in(int a, int b) const { return anchor_prefix_[b + 1] - anchor_prefix_[a]; }
  bool anchored(int p) const { return anchors_in(p, p) > 0; }
  // Truck travel time from position a to b along the current tour.
  double span_time(int a, int b) const { return prefix_[b] - prefix_[a]; }

  double wait_term(double flight, double truck_d) const {
    return flight > truck_d ? flight - truck_d : 0.0;
  }
  bool endurance_ok(double flight, double truck_d) const {
    const double used = flight > truck_d ? flight : truck_d;
    return used <= inst_->endurance_e + kEqualEps;
  }

 private:
  const Solution* sol_;
  const Instance* inst_;
  int m_;
  std::vector<int> pos_;
  std::vector<double> prefix_;
  std::vector<SortieLeg> legs_;
  std::vector<int> covering_;
  std::vector<int> anchor_prefix_;
  double cost_;
};

}  // namespace fstsp

#endif  // FSTSP_EVALUATION_HPP
