#ifndef FSTSP_TSP_SEED_HPP
#define FSTSP_TSP_SEED_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fstsp/instance.hpp"

namespace fstsp {

inline constexpr int kExactTspLimit = 18;

// Held-Karp over the truck matrix; provably optimal, n <= 18.
std::vector<int> solve_exact_dp(const Instance& inst);

// Nearest neighbor from the depot polished by 2-opt to local optimality.
std::vector<int> solve_heuristic(const Instance& inst, std::uint64_t rng_seed);

// Reads "id id ..." (a permutation of all nodes), rotates to depot anchor.
std::vector<int> import_tour(const Instance& inst, const std::string& path);
std::vector<int> parse_tour(const Instance& inst, const std::string& text);

double tour_cost(const std::vector<int>& tour, const TimeMatrix& m);

}  // namespace fstsp

#endif  // FSTSP_TSP_SEED_HPP
