#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "fstsp/evaluation.hpp"
#include "fstsp/neighborhoods.hpp"
#include "helpers.hpp"

using namespace fstsp;

namespace {

constexpr MoveKind kTourKinds[] = {MoveKind::Reinsertion, MoveKind::OrOpt2, MoveKind::Exchange,
                                   MoveKind::Exchange21, MoveKind::Exchange22, MoveKind::TwoOpt};

const Neighborhood* neighborhood_of(MoveKind k) {
  for (const auto* nb : all_neighborhoods())
    if (nb->kind() == k) return nb;
  return nullptr;
}

// Every candidate of a kind, scored through the public single-move factory.
std::vector<Move> enumerate_moves(const Solution& sol, const Instance& inst, MoveKind kind) {
  const int m = static_cast<int>(sol.tour.size());
  std::vector<Move> out;
  if (kind == MoveKind::RelocateCustomer) {
    for (int v = 1; v <= m - 2; ++v)
      for (int l = 0; l <= m - 1; ++l)
        for (int r = l; r <= m - 1; ++r)
          if (auto mv = make_relocate_move(sol, inst, v, l, r)) out.push_back(std::move(*mv));
    return out;
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (auto mv = make_move(sol, inst, kind, a, b)) out.push_back(std::move(*mv));
  return out;
}

// Full re-evaluation after applying: the independent cost route.
double full_eval_delta(const Solution& sol, const Instance& inst, const Move& mv) {
  const double before = evaluate(sol, inst).makespan;
  const Solution next = applied(sol, mv, inst);
  return evaluate(next, inst).makespan - before;
}

Instance retarget_instance() {
  // Uniform truck times, hand-picked drone legs; endurance 30 forces the
  // stretched keep-variant out and leaves node 2 as the nearest retarget.
  Instance inst;
  inst.n = 10;
  inst.name = "retarget";
  inst.coords.assign(10, {0.0, 0.0});
  inst.eligible.assign(10, true);
  inst.eligible[0] = false;
  inst.truck_time = TimeMatrix(10);
  inst.drone_time = TimeMatrix(10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      if (i == j) continue;
      inst.truck_time(i, j) = 10.0;
      inst.drone_time(i, j) = 4.0;
    }
  inst.drone_time(7, 2) = inst.drone_time(2, 7) = 3.0;
  inst.drone_time(7, 6) = inst.drone_time(6, 7) = 5.0;
  inst.drone_time(7, 8) = inst.drone_time(8, 7) = 7.0;
  inst.endurance_e = 30.0;
  inst.service_launch_sl = 0.6;
  inst.service_return_sr = 0.5;
  inst.truck_speed_kmh = inst.drone_speed_kmh = 1.0;
  return inst;
}

}  // namespace

TEST_CASE("emitted moves: delta equals full re-evaluation, result stays feasible") {
  Rng rng(404);
  for (int rep = 0; rep < 8; ++rep) {
    const Instance inst = rep % 2 == 0
                              ? test::small_instance(9, 500 + rep)
                              : test::small_instance(9, 500 + rep, Family::AgatzUniform, 2.0);
    const Solution sol = test::random_solution(inst, rng, 12);
    REQUIRE(check_feasible(sol, inst).empty());
    for (MoveKind kind : kTourKinds) {
      for (const Move& mv : enumerate_moves(sol, inst, kind)) {
        CHECK(std::abs(mv.delta - full_eval_delta(sol, inst, mv)) < 1e-6);
        CHECK(check_feasible(applied(sol, mv, inst), inst).empty());
      }
    }
    for (const Move& mv : enumerate_moves(sol, inst, MoveKind::RelocateCustomer)) {
      CHECK(std::abs(mv.delta - full_eval_delta(sol, inst, mv)) < 1e-6);
      CHECK(check_feasible(applied(sol, mv, inst), inst).empty());
    }
  }
}

TEST_CASE("best() returns the argmin of the candidate set") {
  Rng rng(911);
  for (int rep = 0; rep < 6; ++rep) {
    const Instance inst = rep % 2 == 0
                              ? test::small_instance(10, 700 + rep)
                              : test::small_instance(10, 700 + rep, Family::AgatzSingleCenter, 3.0);
    const Solution sol = test::random_solution(inst, rng, 10);
    for (const auto* nb : all_neighborhoods()) {
      const auto all = enumerate_moves(sol, inst, nb->kind());
      const auto best = nb->best(sol, inst);
      if (all.empty()) {
        CHECK_FALSE(best.has_value());
        continue;
      }
      double min_delta = kInfinity;
      for (const auto& mv : all) min_delta = std::min(min_delta, mv.delta);
      REQUIRE(best.has_value());
      CHECK(best->delta == doctest::Approx(min_delta).epsilon(1e-9));
    }
  }
}

TEST_CASE("apply then revert restores the solution") {
  Rng rng(31337);
  const Instance inst = test::small_instance(11, 64);
  Solution sol = test::random_solution(inst, rng, 15);
  const Solution snapshot = sol;
  for (const auto* nb : all_neighborhoods()) {
    if (auto mv = nb->random(sol, inst, rng)) {
      MoveUndo undo = apply_move(sol, *mv, inst);
      CHECK(sol != snapshot);
      revert_move(sol, std::move(undo));
      CHECK(sol == snapshot);
    }
  }
}

TEST_CASE("or-opt2 edge bookkeeping matches the removed/reconnected sets") {
  // Tour 0-5-3-1-6-2-4-0; relocating the pair (5,3) after node 6 removes
  // {(0,5),(3,1),(6,2)} and reconnects {(0,1),(6,5),(3,2)}.
  const Instance inst = test::small_instance(7, 19);
  const Solution sol = truck_only_solution({0, 5, 3, 1, 6, 2, 4, 0}, inst);
  const auto mv = make_move(sol, inst, MoveKind::OrOpt2, 1, 4);
  REQUIRE(mv.has_value());
  const std::set<std::pair<int, int>> minus(
      {{0, 5}, {3, 1}, {6, 2}});
  const std::set<std::pair<int, int>> plus({{0, 1}, {6, 5}, {3, 2}});
  std::set<std::pair<int, int>> got_minus, got_plus;
  for (const auto& e : mv->theta_minus) got_minus.insert({e.u, e.v});
  for (const auto& e : mv->theta_plus) got_plus.insert({e.u, e.v});
  CHECK(got_minus == minus);
  CHECK(got_plus == plus);
  const auto& T = inst.truck_time;
  const double expected =
      (T(0, 1) + T(6, 5) + T(3, 2)) - (T(0, 5) + T(3, 1) + T(6, 2));
  CHECK(mv->delta == doctest::Approx(expected));
  CHECK(applied(sol, *mv, inst).tour == std::vector<int>{0, 1, 6, 5, 3, 2, 4, 0});
}

TEST_CASE("identity-slot reinsertion candidates are excluded") {
  const Instance inst = test::small_instance(6, 77);
  const Solution sol = truck_only_solution(test::identity_tour(6), inst);
  CHECK_FALSE(make_move(sol, inst, MoveKind::Reinsertion, 2, 1).has_value());
  CHECK_FALSE(make_move(sol, inst, MoveKind::Reinsertion, 2, 2).has_value());
  CHECK(make_move(sol, inst, MoveKind::Reinsertion, 2, 3).has_value());
}

TEST_CASE("exchange drags a trip away: return retargeted to the nearest neighbor") {
  const Instance inst = retarget_instance();
  Solution sol;
  sol.tour = {0, 5, 3, 2, 1, 8, 6, 9, 0};
  sol.sorties = {{5, 7, 1}, {1, 4, 6}};
  REQUIRE(check_feasible(sol, inst).empty());

  // Swap customers 1 and 6 (tour positions 4 and 6).
  const auto mv = make_move(sol, inst, MoveKind::Exchange, 4, 6);
  REQUIRE(mv.has_value());
  REQUIRE(mv->replaces_sorties);
  REQUIRE(mv->new_sorties.size() == 2);
  // First trip keeps its launch, returns at 2; second trip is inverted.
  CHECK(mv->new_sorties[0] == Sortie{5, 7, 2});
  CHECK(mv->new_sorties[1] == Sortie{6, 4, 1});
  CHECK(check_feasible(applied(sol, *mv, inst), inst).empty());
}

TEST_CASE("2-opt reverses trips wholly inside the reversed span") {
  Instance inst = test::all_eligible(test::small_instance(7, 23));
  inst.endurance_e = kInfinity;
  Solution sol;
  sol.tour = {0, 1, 2, 3, 4, 5, 0};
  sol.sorties = {{2, 6, 4}};
  REQUIRE(structural_errors(sol, inst).empty());
  const auto mv = make_move(sol, inst, MoveKind::TwoOpt, 1, 5);
  REQUIRE(mv.has_value());
  REQUIRE(mv->replaces_sorties);
  CHECK(mv->new_sorties[0] == Sortie{4, 6, 2});
  const Solution next = applied(sol, *mv, inst);
  CHECK(next.tour == std::vector<int>{0, 5, 4, 3, 2, 1, 0});
  CHECK(check_feasible(next, inst).empty());
}

TEST_CASE("random sampling is deterministic and covers the candidate space") {
  const Instance inst = test::small_instance(6, 3);
  Rng walk(9);
  const Solution sol = test::random_solution(inst, walk, 6);

  for (const auto* nb : all_neighborhoods()) {
    // determinism
    Rng r1(42), r2(42);
    for (int i = 0; i < 20; ++i) {
      const auto a = nb->random(sol, inst, r1);
      const auto b = nb->random(sol, inst, r2);
      CHECK(a.has_value() == b.has_value());
      if (a && b) {
        CHECK(a->a == b->a);
        CHECK(a->b == b->b);
        CHECK(a->delta == b->delta);
      }
    }
    // support: every enumerable candidate shows up across 10^4 draws
    std::set<std::pair<int, std::vector<Sortie>>> want;
    for (const auto& mv : enumerate_moves(sol, inst, nb->kind()))
      want.insert({mv.a * 1000 + mv.b, mv.new_sorties});
    if (want.empty()) continue;
    std::set<std::pair<int, std::vector<Sortie>>> seen;
    Rng rs(7);
    for (int i = 0; i < 10000 && seen.size() < want.size(); ++i)
      if (const auto mv = nb->random(sol, inst, rs))
        seen.insert({mv->a * 1000 + mv->b, mv->new_sorties});
    CHECK(seen == want);
  }
}

TEST_CASE("delta_cost recomputes a stored move against the same solution") {
  Rng rng(5150);
  const Instance inst = test::small_instance(9, 41);
  const Solution sol = test::random_solution(inst, rng, 10);
  for (const auto* nb : all_neighborhoods())
    if (const auto mv = nb->best(sol, inst))
      CHECK(delta_cost(sol, *mv, inst) == doctest::Approx(mv->delta));
}
