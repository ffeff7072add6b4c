#ifndef FSTSP_ORACLE_HPP
#define FSTSP_ORACLE_HPP

#include <utility>

#include "fstsp/evaluation.hpp"

namespace fstsp {

inline constexpr int kOracleLimit = 9;

// Exhaustive exact solver for micro-instances: every drone subset, every
// truck permutation, every prohibition-free sortie assignment. Ground truth
// for the search; n <= 9.
std::pair<double, Solution> solve_exact(const Instance& inst, bool prune = true);

}  // namespace fstsp

#endif  // FSTSP_ORACLE_HPP
