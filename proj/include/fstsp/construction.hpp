#ifndef FSTSP_CONSTRUCTION_HPP
#define FSTSP_CONSTRUCTION_HPP

#include <optional>
#include <vector>

#include "fstsp/neighborhoods.hpp"

namespace fstsp {

// Tour-time saved by splicing customer j out of the truck route.
double compute_savings(const Solution& sol, const Instance& inst, int j);

// Cheapest reinsertion of truck customer j between consecutive stops of a
// paired segment (truck slack under the covering trip absorbs part of the
// detour); keeps the covering trip endurance-feasible.
std::optional<Move> best_insertion_as_truck(const Solution& sol, const Instance& inst, int j,
                                            const Segment& seg);

// Best (launch, return) pair inside an unpaired segment turning segment
// member j into a drone customer.
std::optional<Move> best_assignment_as_drone(const Solution& sol, const Instance& inst, int j,
                                             const Segment& seg);

// Savings-driven conversion of the TSP seed into a truck+drone solution:
// repeatedly applies the best positive-savings candidate over all
// (customer, segment, action) combinations until none remains.
Solution create_initial_solution(const std::vector<int>& tsp_tour, const Instance& inst);

}  // namespace fstsp

#endif  // FSTSP_CONSTRUCTION_HPP
