#ifndef FSTSP_MODEL_HPP
#define FSTSP_MODEL_HPP

#include <string>
#include <vector>

#include "fstsp/instance.hpp"

namespace fstsp {

// One drone trip. Under TSPD launch == ret encodes a loop where the truck
// waits at that node; launch == ret == 0 is resolved positionally as a
// full-span trip (out at the start, back at the final depot).
struct Sortie {
  int launch = 0;
  int visit = 0;
  int ret = 0;
  auto operator<=>(const Sortie&) const = default;
};

enum class NodeRole { TruckOnly, DroneOnly, Mixed, Depot };

// Truck tour anchored at the depot on both ends plus the ordered drone trips.
struct Solution {
  std::vector<int> tour;
  std::vector<Sortie> sorties;  // kept sorted by launch position
  bool operator==(const Solution&) const = default;
};

// node -> tour position; node 0 maps to position 0. Size = instance n.
std::vector<int> tour_positions(const std::vector<int>& tour, int n);

// Position of a sortie anchor: a launch at the depot is the tour start, a
// return at the depot is the final tour position.
inline int launch_position(const std::vector<int>& pos_of, int node) { return pos_of[node]; }
inline int return_position(const std::vector<int>& pos_of, int node, int tour_size) {
  return node == 0 ? tour_size - 1 : pos_of[node];
}

Solution truck_only_solution(std::vector<int> tour, const Instance& inst);

NodeRole role_of(const Solution& sol, int node);

// Alternating tour pieces split at sortie boundaries. Segments share their
// boundary nodes with neighbors; a sortie inserted wholly inside an unpaired
// segment can never interleave or nest with an existing trip.
struct Segment {
  int begin_pos = 0;
  int end_pos = 0;  // inclusive
  bool paired = false;
  int sortie_index = -1;  // into Solution::sorties when paired
};

std::vector<Segment> subroutes(const Solution& sol);

// Structural sanity: coverage, anchors on tour, interval shape per variant.
// Timing (endurance) and prohibition classification live in evaluation.
std::vector<std::string> structural_errors(const Solution& sol, const Instance& inst);

// Keeps the sortie list sorted by launch position.
void sort_sorties(Solution& sol);

std::string serialize_solution(const Solution& sol);
Solution parse_solution(const std::string& text);
Solution load_solution(const std::string& path);
void save_solution(const Solution& sol, const std::string& path);

}  // namespace fstsp

#endif  // FSTSP_MODEL_HPP
