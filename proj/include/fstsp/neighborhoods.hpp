#ifndef FSTSP_NEIGHBORHOODS_HPP
#define FSTSP_NEIGHBORHOODS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fstsp/evaluation.hpp"
#include "fstsp/model.hpp"
#include "fstsp/util.hpp"

namespace fstsp {

enum class MoveKind {
  Reinsertion = 0,
  OrOpt2,
  Exchange,
  Exchange21,
  Exchange22,
  TwoOpt,
  RelocateCustomer,
};

const char* move_kind_name(MoveKind k);

struct Edge {
  int u = 0, v = 0;
  bool operator==(const Edge&) const = default;
};

struct SortieRepair {
  Sortie before;
  Sortie after;
};

// A reified neighborhood action. Tour payload (a, b) is interpreted per kind
// on the tour the move was generated for:
//   Reinsertion      a: position of the moved node, b: insert after position b
//   OrOpt2           a: first position of the moved pair, b: insert after b
//   Exchange         a, b: swapped positions
//   Exchange21       a: first position of the pair, b: position of the single
//   Exchange22       a, b: first positions of the two pairs
//   TwoOpt           reverse tour[a..b]
//   RelocateCustomer a: position of the customer leaving the tour
struct Move {
  MoveKind kind = MoveKind::Reinsertion;
  int a = -1;
  int b = -1;
  std::vector<Edge> theta_minus;
  std::vector<Edge> theta_plus;
  // When set, the whole sortie list is replaced on apply (repairs or a new
  // trip); repairs lists the per-trip changes for traceability.
  bool replaces_sorties = false;
  std::vector<Sortie> new_sorties;
  std::vector<SortieRepair> repairs;
  double delta = 0.0;

  std::string describe() const;
};

struct MoveUndo {
  std::vector<int> tour;
  std::vector<Sortie> sorties;
};

// Applies the move; the returned snapshot restores the previous state.
MoveUndo apply_move(Solution& sol, const Move& mv, const Instance& inst);
void revert_move(Solution& sol, MoveUndo undo);
Solution applied(const Solution& sol, const Move& mv, const Instance& inst);

// Recomputes the move's makespan delta from scratch-free bookkeeping (Eq.-1
// style edge terms plus per-trip wait terms). Matches
// evaluate(applied(...)).makespan - evaluate(sol).makespan.
double delta_cost(const Solution& sol, const Move& mv, const Instance& inst);

// Scores and materializes one candidate; nullopt when the candidate is
// structurally inapplicable or would break feasibility.
std::optional<Move> make_move(const Solution& sol, const Instance& inst, MoveKind kind, int a,
                              int b);
std::optional<Move> make_relocate_move(const Solution& sol, const Instance& inst, int vpos,
                                       int lpos, int rpos);

class Neighborhood {
 public:
  virtual ~Neighborhood() = default;
  virtual MoveKind kind() const = 0;
  const char* name() const { return move_kind_name(kind()); }
  // Best-improvement scan: the feasible move with minimal delta, scanning
  // positions ascending so ties go to the first candidate.
  virtual std::optional<Move> best(const Solution& sol, const Instance& inst) const = 0;
  // One uniformly sampled feasible move; rejection capped at 50 * n tries.
  virtual std::optional<Move> random(const Solution& sol, const Instance& inst, Rng& rng) const = 0;
};

// The seven generators in presentation order; GVNS indexes k over this list.
const std::array<const Neighborhood*, 7>& all_neighborhoods();

// Restricted scans against a prebuilt costing context; the savings
// construction drives these per (customer, segment) pair.
std::optional<Move> best_reinsertion_into_range(const SolutionCosting& C, int from_pos,
                                                int slot_lo, int slot_hi);
std::optional<Move> best_sortie_within(const SolutionCosting& C, int vpos, int seg_lo,
                                       int seg_hi);

}  // namespace fstsp

#endif  // FSTSP_NEIGHBORHOODS_HPP
