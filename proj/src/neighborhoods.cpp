#include "fstsp/neighborhoods.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace fstsp {

const char* move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::Reinsertion: return "reinsertion";
    case MoveKind::OrOpt2: return "or-opt2";
    case MoveKind::Exchange: return "exchange";
    case MoveKind::Exchange21: return "exchange-2-1";
    case MoveKind::Exchange22: return "exchange-2-2";
    case MoveKind::TwoOpt: return "two-opt";
    case MoveKind::RelocateCustomer: return "relocate-customer";
  }
  return "?";
}

std::string Move::describe() const {
  std::ostringstream out;
  out << move_kind_name(kind) << " a=" << a << " b=" << b << " delta=" << delta;
  for (const auto& e : theta_minus) out << " -(" << e.u << "," << e.v << ")";
  for (const auto& e : theta_plus) out << " +(" << e.u << "," << e.v << ")";
  for (const auto& r : repairs)
    out << " [" << r.before.launch << "," << r.before.visit << "," << r.before.ret << "]->["
        << r.after.launch << "," << r.after.visit << "," << r.after.ret << "]";
  return out.str();
}

namespace {

bool valid_payload(int m, MoveKind kind, int a, int b) {
  switch (kind) {
    case MoveKind::Reinsertion:
      return a >= 1 && a <= m - 2 && b >= 0 && b <= m - 2 && b != a && b != a - 1;
    case MoveKind::OrOpt2:
      return a >= 1 && a + 1 <= m - 2 && b >= 0 && b <= m - 2 && b != a - 1 && b != a && b != a + 1;
    case MoveKind::Exchange:
      return a >= 1 && b > a && b <= m - 2;
    case MoveKind::Exchange21:
      return a >= 1 && a + 1 <= m - 2 && b >= 1 && b <= m - 2 && b != a && b != a + 1;
    case MoveKind::Exchange22:
      return a >= 1 && a + 1 <= m - 2 && b >= a + 2 && b + 1 <= m - 2;
    case MoveKind::TwoOpt:
      return a >= 1 && b > a && b <= m - 2;
    case MoveKind::RelocateCustomer:
      return false;  // separate payload
  }
  return false;
}

std::vector<int> edit_tour(const std::vector<int>& t, MoveKind kind, int a, int b) {
  const int m = static_cast<int>(t.size());
  std::vector<int> out;
  out.reserve(m);
  switch (kind) {
    case MoveKind::Reinsertion: {
      const int x = t[a];
      for (int p = 0; p < m; ++p)
        if (p != a) out.push_back(t[p]);
      out.insert(out.begin() + (b < a ? b : b - 1) + 1, x);
      break;
    }
    case MoveKind::OrOpt2: {
      const int x1 = t[a], x2 = t[a + 1];
      for (int p = 0; p < m; ++p)
        if (p != a && p != a + 1) out.push_back(t[p]);
      const int at = (b < a ? b : b - 2) + 1;
      out.insert(out.begin() + at, {x1, x2});
      break;
    }
    case MoveKind::Exchange:
      out = t;
      std::swap(out[a], out[b]);
      break;
    case MoveKind::Exchange21:
      if (b > a + 1) {
        out.insert(out.end(), t.begin(), t.begin() + a);
        out.push_back(t[b]);
        out.insert(out.end(), t.begin() + a + 2, t.begin() + b);
        out.push_back(t[a]);
        out.push_back(t[a + 1]);
        out.insert(out.end(), t.begin() + b + 1, t.end());
      } else {
        out.insert(out.end(), t.begin(), t.begin() + b);
        out.push_back(t[a]);
        out.push_back(t[a + 1]);
        out.insert(out.end(), t.begin() + b + 1, t.begin() + a);
        out.push_back(t[b]);
        out.insert(out.end(), t.begin() + a + 2, t.end());
      }
      break;
    case MoveKind::Exchange22:
      out.insert(out.end(), t.begin(), t.begin() + a);
      out.push_back(t[b]);
      out.push_back(t[b + 1]);
      out.insert(out.end(), t.begin() + a + 2, t.begin() + b);
      out.push_back(t[a]);
      out.push_back(t[a + 1]);
      out.insert(out.end(), t.begin() + b + 2, t.end());
      break;
    case MoveKind::TwoOpt:
      out = t;
      std::reverse(out.begin() + a, out.begin() + b + 1);
      break;
    case MoveKind::RelocateCustomer:
      for (int p = 0; p < m; ++p)
        if (p != a) out.push_back(t[p]);
      break;
  }
  return out;
}

// Edge bookkeeping for the record and for Eq.-1 style checks.
void collect_theta(const std::vector<int>& t, MoveKind kind, int a, int b,
                   std::vector<Edge>& minus, std::vector<Edge>& plus) {
  auto rm = [&](int u, int v) { minus.push_back({u, v}); };
  auto ad = [&](int u, int v) { plus.push_back({u, v}); };
  switch (kind) {
    case MoveKind::Reinsertion: {
      const int x = t[a];
      rm(t[a - 1], x);
      rm(x, t[a + 1]);
      ad(t[a - 1], t[a + 1]);
      rm(t[b], t[b + 1]);
      ad(t[b], x);
      ad(x, t[b + 1]);
      break;
    }
    case MoveKind::OrOpt2: {
      const int x1 = t[a], x2 = t[a + 1];
      rm(t[a - 1], x1);
      rm(x2, t[a + 2]);
      ad(t[a - 1], t[a + 2]);
      rm(t[b], t[b + 1]);
      ad(t[b], x1);
      ad(x2, t[b + 1]);
      break;
    }
    case MoveKind::Exchange: {
      const int x = t[a], y = t[b];
      if (b == a + 1) {
        rm(t[a - 1], x);
        rm(x, y);
        rm(y, t[b + 1]);
        ad(t[a - 1], y);
        ad(y, x);
        ad(x, t[b + 1]);
      } else {
        rm(t[a - 1], x);
        rm(x, t[a + 1]);
        rm(t[b - 1], y);
        rm(y, t[b + 1]);
        ad(t[a - 1], y);
        ad(y, t[a + 1]);
        ad(t[b - 1], x);
        ad(x, t[b + 1]);
      }
      break;
    }
    case MoveKind::Exchange21: {
      const int x1 = t[a], x2 = t[a + 1], c = t[b];
      if (b == a + 2) {
        rm(t[a - 1], x1);
        rm(x2, c);
        rm(c, t[b + 1]);
        ad(t[a - 1], c);
        ad(c, x1);
        ad(x2, t[b + 1]);
      } else if (b == a - 1) {
        rm(t[b - 1], c);
        rm(c, x1);
        rm(x2, t[a + 2]);
        ad(t[b - 1], x1);
        ad(x2, c);
        ad(c, t[a + 2]);
      } else {
        rm(t[a - 1], x1);
        rm(x2, t[a + 2]);
        rm(t[b - 1], c);
        rm(c, t[b + 1]);
        ad(t[a - 1], c);
        ad(c, t[a + 2]);
        ad(t[b - 1], x1);
        ad(x2, t[b + 1]);
      }
      break;
    }
    case MoveKind::Exchange22: {
      const int x1 = t[a], x2 = t[a + 1], y1 = t[b], y2 = t[b + 1];
      if (b == a + 2) {
        rm(t[a - 1], x1);
        rm(x2, y1);
        rm(y2, t[b + 2]);
        ad(t[a - 1], y1);
        ad(y2, x1);
        ad(x2, t[b + 2]);
      } else {
        rm(t[a - 1], x1);
        rm(x2, t[a + 2]);
        rm(t[b - 1], y1);
        rm(y2, t[b + 2]);
        ad(t[a - 1], y1);
        ad(y2, t[a + 2]);
        ad(t[b - 1], x1);
        ad(x2, t[b + 2]);
      }
      break;
    }
    case MoveKind::TwoOpt:
      rm(t[a - 1], t[a]);
      rm(t[b], t[b + 1]);
      ad(t[a - 1], t[b]);
      ad(t[a], t[b + 1]);
      break;
    case MoveKind::RelocateCustomer:
      rm(t[a - 1], t[a]);
      rm(t[a], t[a + 1]);
      ad(t[a - 1], t[a + 1]);
      break;
  }
}

// Accumulates the tour-length change plus per-covered-trip truck-leg changes
// of a move that touches no sortie anchor.
class DeltaAcc {
 public:
  explicit DeltaAcc(const SolutionCosting& C) : C_(C) {}

  void remove_edge(int region_pos, double tau) { add(region_pos, -tau); }
  void add_edge(int region_pos, double tau) { add(region_pos, tau); }

  bool finish(double& delta) const {
    delta = len_;
    for (int r = 0; r < cnt_; ++r) {
      const auto& leg = C_.legs()[leg_[r]];
      const double nd = leg.truck_d + dd_[r];
      if (dd_[r] > 0 && !C_.endurance_ok(leg.flight, nd)) return false;
      delta += C_.wait_term(leg.flight, nd) - C_.wait_term(leg.flight, leg.truck_d);
    }
    return true;
  }

 private:
  void add(int region_pos, double tau) {
    len_ += tau;
    const int leg = C_.covering_leg(region_pos);
    if (leg < 0) return;
    for (int r = 0; r < cnt_; ++r)
      if (leg_[r] == leg) {
        dd_[r] += tau;
        return;
      }
    leg_[cnt_] = leg;
    dd_[cnt_] = tau;
    ++cnt_;
  }

  const SolutionCosting& C_;
  double len_ = 0.0;
  int leg_[4] = {-1, -1, -1, -1};
  double dd_[4] = {0.0, 0.0, 0.0, 0.0};
  int cnt_ = 0;
};

bool pure_score(const SolutionCosting& C, MoveKind kind, int a, int b, double& delta) {
  const auto& t = C.solution().tour;
  const auto& T = C.instance().truck_time;
  DeltaAcc acc(C);
  switch (kind) {
    case MoveKind::Reinsertion: {
      const int x = t[a];
      acc.remove_edge(a - 1, T(t[a - 1], x));
      acc.remove_edge(a, T(x, t[a + 1]));
      acc.add_edge(a - 1, T(t[a - 1], t[a + 1]));
      acc.remove_edge(b, T(t[b], t[b + 1]));
      acc.add_edge(b, T(t[b], x));
      acc.add_edge(b, T(x, t[b + 1]));
      break;
    }
    case MoveKind::OrOpt2: {
      const int x1 = t[a], x2 = t[a + 1];
      acc.remove_edge(a - 1, T(t[a - 1], x1));
      acc.remove_edge(a, T(x1, x2));
      acc.remove_edge(a + 1, T(x2, t[a + 2]));
      acc.add_edge(a - 1, T(t[a - 1], t[a + 2]));
      acc.remove_edge(b, T(t[b], t[b + 1]));
      acc.add_edge(b, T(t[b], x1));
      acc.add_edge(b, T(x1, x2));
      acc.add_edge(b, T(x2, t[b + 1]));
      break;
    }
    case MoveKind::Exchange: {
      const int x = t[a], y = t[b];
      if (b == a + 1) {
        acc.remove_edge(a - 1, T(t[a - 1], x));
        acc.remove_edge(a, T(x, y));
        acc.remove_edge(b, T(y, t[b + 1]));
        acc.add_edge(a - 1, T(t[a - 1], y));
        acc.add_edge(a, T(y, x));
        acc.add_edge(b, T(x, t[b + 1]));
      } else {
        acc.remove_edge(a - 1, T(t[a - 1], x));
        acc.remove_edge(a, T(x, t[a + 1]));
        acc.add_edge(a - 1, T(t[a - 1], y));
        acc.add_edge(a, T(y, t[a + 1]));
        acc.remove_edge(b - 1, T(t[b - 1], y));
        acc.remove_edge(b, T(y, t[b + 1]));
        acc.add_edge(b - 1, T(t[b - 1], x));
        acc.add_edge(b, T(x, t[b + 1]));
      }
      break;
    }
    case MoveKind::Exchange21: {
      const int x1 = t[a], x2 = t[a + 1], c = t[b];
      if (b == a + 2) {
        acc.remove_edge(a - 1, T(t[a - 1], x1));
        acc.remove_edge(a + 1, T(x2, c));
        acc.remove_edge(b, T(c, t[b + 1]));
        acc.add_edge(a - 1, T(t[a - 1], c));
        acc.add_edge(a + 1, T(c, x1));
        acc.add_edge(b, T(x2, t[b + 1]));
      } else if (b == a - 1) {
        acc.remove_edge(b - 1, T(t[b - 1], c));
        acc.remove_edge(b, T(c, x1));
        acc.remove_edge(a + 1, T(x2, t[a + 2]));
        acc.add_edge(b - 1, T(t[b - 1], x1));
        acc.add_edge(b, T(x2, c));
        acc.add_edge(a + 1, T(c, t[a + 2]));
      } else {
        acc.remove_edge(a - 1, T(t[a - 1], x1));
        acc.remove_edge(a, T(x1, x2));
        acc.remove_edge(a + 1, T(x2, t[a + 2]));
        acc.add_edge(a - 1, T(t[a - 1], c));
        acc.add_edge(a, T(c, t[a + 2]));
        acc.remove_edge(b - 1, T(t[b - 1], c));
        acc.remove_edge(b, T(c, t[b + 1]));
        acc.add_edge(b - 1, T(t[b - 1], x1));
        acc.add_edge(b - 1, T(x1, x2));
        acc.add_edge(b, T(x2, t[b + 1]));
      }
      break;
    }
    case MoveKind::Exchange22: {
      const int x1 = t[a], x2 = t[a + 1], y1 = t[b], y2 = t[b + 1];
      if (b == a + 2) {
        acc.remove_edge(a - 1, T(t[a - 1], x1));
        acc.remove_edge(a + 1, T(x2, y1));
        acc.remove_edge(b + 1, T(y2, t[b + 2]));
        acc.add_edge(a - 1, T(t[a - 1], y1));
        acc.add_edge(a + 1, T(y2, x1));
        acc.add_edge(b + 1, T(x2, t[b + 2]));
      } else {
        acc.remove_edge(a - 1, T(t[a - 1], x1));
        acc.remove_edge(a, T(x1, x2));
        acc.remove_edge(a + 1, T(x2, t[a + 2]));
        acc.add_edge(a - 1, T(t[a - 1], y1));
        acc.add_edge(a, T(y1, y2));
        acc.add_edge(a + 1, T(y2, t[a + 2]));
        acc.remove_edge(b - 1, T(t[b - 1], y1));
        acc.remove_edge(b, T(y1, y2));
        acc.remove_edge(b + 1, T(y2, t[b + 2]));
        acc.add_edge(b - 1, T(t[b - 1], x1));
        acc.add_edge(b, T(x1, x2));
        acc.add_edge(b + 1, T(x2, t[b + 2]));
      }
      break;
    }
    case MoveKind::TwoOpt:
      acc.remove_edge(a - 1, T(t[a - 1], t[a]));
      acc.remove_edge(b, T(t[b], t[b + 1]));
      acc.add_edge(a - 1, T(t[a - 1], t[b]));
      acc.add_edge(b, T(t[a], t[b + 1]));
      break;
    case MoveKind::RelocateCustomer:
      return false;
  }
  return acc.finish(delta);
}

struct TouchedSpec {
  int lo = 0, hi = -1;
  std::array<int, 4> singles{-1, -1, -1, -1};
  int nsingles = 0;

  void add(int p) { singles[nsingles++] = p; }
  bool contains(int p) const {
    if (p >= lo && p <= hi) return true;
    for (int k = 0; k < nsingles; ++k)
      if (singles[k] == p) return true;
    return false;
  }
};

TouchedSpec touched_for(MoveKind kind, int a, int b) {
  TouchedSpec s;
  switch (kind) {
    case MoveKind::Reinsertion:
    case MoveKind::RelocateCustomer:
      s.add(a);
      break;
    case MoveKind::OrOpt2:
      s.add(a);
      s.add(a + 1);
      break;
    case MoveKind::Exchange:
      s.add(a);
      s.add(b);
      break;
    case MoveKind::Exchange21:
      s.add(a);
      s.add(a + 1);
      s.add(b);
      break;
    case MoveKind::Exchange22:
      s.add(a);
      s.add(a + 1);
      s.add(b);
      s.add(b + 1);
      break;
    case MoveKind::TwoOpt:
      s.lo = a;
      s.hi = b;
      break;
  }
  return s;
}

bool touches_anchor(const SolutionCosting& C, MoveKind kind, int a, int b) {
  switch (kind) {
    case MoveKind::Reinsertion: return C.anchored(a);
    case MoveKind::OrOpt2: return C.anchors_in(a, a + 1) > 0;
    case MoveKind::Exchange: return C.anchored(a) || C.anchored(b);
    case MoveKind::Exchange21: return C.anchors_in(a, a + 1) > 0 || C.anchored(b);
    case MoveKind::Exchange22: return C.anchors_in(a, a + 1) > 0 || C.anchors_in(b, b + 1) > 0;
    case MoveKind::TwoOpt: return C.anchors_in(a, b) > 0;
    case MoveKind::RelocateCustomer: return false;
  }
  return false;
}

struct Scratch {
  bool ok = false;
  double cost = 0.0;
  std::vector<Sortie> sorties;
};

// Carries the sortie list onto an edited tour. Untouched trips keep their
// node triple; trips whose anchors moved may keep, invert, or retarget the
// return to a node around its old spot (nearest by drone time first); the
// cheapest feasible variant wins. Rejects the edit when any trip has no
// feasible variant or the final set interleaves/nests.
Scratch repair_and_cost(const SolutionCosting& C, const std::vector<int>& nt,
                        const TouchedSpec& touched) {
  const Instance& inst = C.instance();
  const Solution& sol = C.solution();
  const int m = static_cast<int>(nt.size());
  const bool fstsp = inst.variant == Variant::FSTSP;

  std::vector<int> pos2(inst.n, -1);
  for (int p = m - 1; p >= 0; --p) pos2[nt[p]] = p;
  pos2[0] = 0;
  std::vector<double> pre2(m, 0.0);
  for (int p = 0; p + 1 < m; ++p) pre2[p + 1] = pre2[p] + inst.truck_time(nt[p], nt[p + 1]);

  struct Pick {
    Sortie s;
    int l = 0, r = 0;
    double flight = 0.0, d = 0.0;
  };

  auto eval_variant = [&](const Sortie& s, Pick& out) -> bool {
    if (s.launch == s.visit || s.ret == s.visit) return false;
    if ((s.launch != 0 && pos2[s.launch] < 0) || (s.ret != 0 && pos2[s.ret] < 0)) return false;
    const int l = s.launch == 0 ? 0 : pos2[s.launch];
    const int r = s.ret == 0 ? m - 1 : pos2[s.ret];
    if (fstsp ? l >= r : l > r) return false;
    const double flight = inst.drone_time(s.launch, s.visit) + inst.drone_time(s.visit, s.ret);
    const double d = pre2[r] - pre2[l];
    if (!C.endurance_ok(flight, d)) return false;
    out = {s, l, r, flight, d};
    return true;
  };

  // Process in edited-tour order of the kept launch anchor so the running
  // prev_r constraint matches the final interval order.
  std::vector<int> order(C.legs().size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  auto tentative_l = [&](int leg_i) {
    const Sortie& s = sol.sorties[C.legs()[leg_i].index];
    return s.launch == 0 ? 0 : pos2[s.launch];
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return tentative_l(x) < tentative_l(y); });

  std::vector<Pick> picks;
  int prev_r = 0;
  bool first = true;
  for (int leg_i : order) {
    const auto& leg = C.legs()[leg_i];
    const Sortie& orig = sol.sorties[leg.index];
    const bool was_touched = touched.contains(leg.lpos) || touched.contains(leg.rpos);

    std::vector<Sortie> variants;
    variants.push_back(orig);
    if (was_touched) {
      variants.push_back({orig.ret, orig.visit, orig.launch});
      std::vector<int> cands;
      for (int q : {leg.rpos - 1, leg.rpos, leg.rpos + 1}) {
        if (q < 0 || q >= m) continue;
        const int c = nt[q];
        if (c == orig.visit || c == orig.ret) continue;
        if (std::find(cands.begin(), cands.end(), c) == cands.end()) cands.push_back(c);
      }
      std::sort(cands.begin(), cands.end(), [&](int x, int y) {
        const double dx = inst.drone_time(orig.visit, x), dy = inst.drone_time(orig.visit, y);
        if (dx != dy) return dx < dy;
        return x < y;
      });
      for (int c : cands) variants.push_back({orig.launch, orig.visit, c});
    }

    bool found = false;
    Pick best{};
    double best_wait = 0.0;
    for (const Sortie& v : variants) {
      Pick p;
      if (!eval_variant(v, p)) continue;
      if (!first && p.l < prev_r) continue;
      const double w = C.wait_term(p.flight, p.d);
      if (!found || w < best_wait - kEqualEps) {
        best = p;
        best_wait = w;
        found = true;
      }
    }
    if (!found) return {};
    picks.push_back(best);
    prev_r = best.r;
    first = false;
  }

  std::sort(picks.begin(), picks.end(), [](const Pick& x, const Pick& y) {
    if (x.l != y.l) return x.l < y.l;
    return x.r < y.r;
  });
  int depot_launches = 0, depot_returns = 0;
  for (size_t i = 0; i < picks.size(); ++i) {
    if (i + 1 < picks.size() && picks[i].r > picks[i + 1].l) return {};
    if (picks[i].s.launch == 0 && ++depot_launches > 1 && fstsp) return {};
    if (picks[i].s.ret == 0 && ++depot_returns > 1 && fstsp) return {};
  }

  Scratch out;
  out.ok = true;
  out.cost = pre2[m - 1];
  const double services = inst.service_launch_sl + inst.service_return_sr;
  for (const auto& p : picks) out.cost += services + C.wait_term(p.flight, p.d);
  out.sorties.reserve(picks.size());
  for (const auto& p : picks) out.sorties.push_back(p.s);
  return out;
}

// Scan-time scoring: cheap bookkeeping when no anchor moves, otherwise the
// full carry-and-repair pass on the edited tour.
std::optional<double> score_candidate(const SolutionCosting& C, MoveKind kind, int a, int b) {
  if (!touches_anchor(C, kind, a, b)) {
    double delta = 0.0;
    if (!pure_score(C, kind, a, b, delta)) return std::nullopt;
    return delta;
  }
  const auto nt = edit_tour(C.solution().tour, kind, a, b);
  const Scratch sc = repair_and_cost(C, nt, touched_for(kind, a, b));
  if (!sc.ok) return std::nullopt;
  return sc.cost - C.cost();
}

std::optional<Move> materialize_move(const SolutionCosting& C, MoveKind kind, int a, int b) {
  const auto& sol = C.solution();
  Move mv;
  mv.kind = kind;
  mv.a = a;
  mv.b = b;
  if (!touches_anchor(C, kind, a, b)) {
    double delta = 0.0;
    if (!pure_score(C, kind, a, b, delta)) return std::nullopt;
    mv.delta = delta;
  } else {
    const auto nt = edit_tour(sol.tour, kind, a, b);
    const Scratch sc = repair_and_cost(C, nt, touched_for(kind, a, b));
    if (!sc.ok) return std::nullopt;
    mv.delta = sc.cost - C.cost();
    mv.replaces_sorties = true;
    mv.new_sorties = sc.sorties;
    std::vector<Sortie> before = sol.sorties;
    for (const auto& after : sc.sorties) {
      bool unchanged = false;
      for (auto it = before.begin(); it != before.end(); ++it)
        if (*it == after) {
          before.erase(it);
          unchanged = true;
          break;
        }
      if (!unchanged) mv.repairs.push_back({Sortie{}, after});
    }
    // pair leftovers with replacements in order
    size_t bi = 0;
    for (auto& rep : mv.repairs)
      if (bi < before.size()) rep.before = before[bi++];
  }
  collect_theta(sol.tour, kind, a, b, mv.theta_minus, mv.theta_plus);
  return mv;
}

// (vpos, lpos, rpos) must already sit inside one unpaired segment.
bool score_relocate_triple(const SolutionCosting& C, int vpos, int pl, int pr, double& delta,
                           Sortie& sortie_out) {
  const Instance& inst = C.instance();
  const auto& t = C.solution().tour;
  const int v = t[vpos];
  const double e1 = inst.truck_time(t[vpos - 1], v);
  const double e2 = inst.truck_time(v, t[vpos + 1]);
  const double splice = inst.truck_time(t[vpos - 1], t[vpos + 1]) - e1 - e2;
  const int lnode = t[pl];
  const int rnode = t[pr];
  const double flight = inst.drone_time(lnode, v) + inst.drone_time(v, rnode);
  double d = C.span_time(pl, pr);
  if (pl < vpos && vpos < pr) d += splice;
  if (!C.endurance_ok(flight, d)) return false;
  delta = splice + inst.service_launch_sl + inst.service_return_sr + C.wait_term(flight, d);
  sortie_out = {lnode, v, rnode};
  return true;
}

std::optional<Move> materialize_relocate(const SolutionCosting& C, int vpos, int pl, int pr) {
  double delta = 0.0;
  Sortie s;
  if (!score_relocate_triple(C, vpos, pl, pr, delta, s)) return std::nullopt;
  Move mv;
  mv.kind = MoveKind::RelocateCustomer;
  mv.a = vpos;
  mv.b = -1;
  mv.delta = delta;
  mv.replaces_sorties = true;
  mv.new_sorties = C.solution().sorties;
  mv.new_sorties.push_back(s);
  mv.repairs.push_back({Sortie{}, s});
  collect_theta(C.solution().tour, MoveKind::RelocateCustomer, vpos, -1, mv.theta_minus,
                mv.theta_plus);
  return mv;
}

// Unpaired segment [lo, hi] containing an uncovered, unanchored position.
void segment_around(const SolutionCosting& C, int p, int& lo, int& hi) {
  lo = 0;
  hi = C.tour_size() - 1;
  for (const auto& leg : C.legs()) {
    if (leg.rpos <= p) lo = std::max(lo, leg.rpos);
    if (leg.lpos >= p) hi = std::min(hi, leg.lpos);
  }
}

bool relocate_v_ok(const SolutionCosting& C, int vpos) {
  if (vpos < 1 || vpos > C.tour_size() - 2) return false;
  if (C.anchored(vpos)) return false;
  if (C.covering_leg(vpos - 1) >= 0) return false;  // strictly inside a covered span
  return C.instance().eligible[C.solution().tour[vpos]];
}

// ---------------------------------------------------------------------------
// The seven generators
// ---------------------------------------------------------------------------

class TourNeighborhood : public Neighborhood {
 public:
  explicit TourNeighborhood(MoveKind k) : kind_(k) {}
  MoveKind kind() const override { return kind_; }

  std::optional<Move> best(const Solution& sol, const Instance& inst) const override {
    const int m = static_cast<int>(sol.tour.size());
    if (m < 4) return std::nullopt;
    SolutionCosting C(sol, inst);
    double best_delta = kInfinity;
    int ba = -1, bb = -1;
    for (int a = 1; a <= m - 2; ++a)
      for (int b = 0; b <= m - 2; ++b) {
        if (!valid_payload(m, kind_, a, b)) continue;
        const auto d = score_candidate(C, kind_, a, b);
        if (d && *d < best_delta) {
          best_delta = *d;
          ba = a;
          bb = b;
        }
      }
    if (ba < 0) return std::nullopt;
    return materialize_move(C, kind_, ba, bb);
  }

  std::optional<Move> random(const Solution& sol, const Instance& inst, Rng& rng) const override {
    const int m = static_cast<int>(sol.tour.size());
    if (m < 4) return std::nullopt;
    SolutionCosting C(sol, inst);
    const int cap = 50 * std::max(2, inst.n);
    for (int tries = 0; tries < cap; ++tries) {
      const int a = 1 + rng.bounded(m - 2);
      const int b = rng.bounded(m - 1);  // [0, m-2]
      if (!valid_payload(m, kind_, a, b)) continue;
      if (!score_candidate(C, kind_, a, b)) continue;
      return materialize_move(C, kind_, a, b);
    }
    return std::nullopt;
  }

 private:
  MoveKind kind_;
};

class RelocateNeighborhood : public Neighborhood {
 public:
  MoveKind kind() const override { return MoveKind::RelocateCustomer; }

  std::optional<Move> best(const Solution& sol, const Instance& inst) const override {
    const int m = static_cast<int>(sol.tour.size());
    if (m < 3) return std::nullopt;
    SolutionCosting C(sol, inst);
    std::optional<Move> best;
    for (const auto& seg : subroutes(sol)) {
      if (seg.paired || seg.end_pos - seg.begin_pos < 1) continue;
      for (int vpos = std::max(1, seg.begin_pos); vpos <= std::min(m - 2, seg.end_pos); ++vpos) {
        auto cand = best_sortie_within(C, vpos, seg.begin_pos, seg.end_pos);
        if (cand && (!best || cand->delta < best->delta)) best = std::move(cand);
      }
    }
    return best;
  }

  std::optional<Move> random(const Solution& sol, const Instance& inst, Rng& rng) const override {
    const int m = static_cast<int>(sol.tour.size());
    if (m < 3) return std::nullopt;
    SolutionCosting C(sol, inst);
    const bool tspd = inst.variant == Variant::TSPD;
    const int cap = 50 * std::max(2, inst.n);
    for (int tries = 0; tries < cap; ++tries) {
      const int vpos = 1 + rng.bounded(m - 2);
      if (!relocate_v_ok(C, vpos)) continue;
      int lo = 0, hi = 0;
      segment_around(C, vpos, lo, hi);
      if (hi - lo < 1) continue;
      const int pl = lo + rng.bounded(hi - lo + 1);
      const int pr = pl + rng.bounded(hi - pl + 1);
      if (pl == vpos || pr == vpos) continue;
      if (pl == pr && (!tspd || sol.tour[pl] == 0)) continue;
      double d = 0.0;
      Sortie s;
      if (!score_relocate_triple(C, vpos, pl, pr, d, s)) continue;
      return materialize_relocate(C, vpos, pl, pr);
    }
    return std::nullopt;
  }
};

}  // namespace

const std::array<const Neighborhood*, 7>& all_neighborhoods() {
  static const TourNeighborhood reinsertion(MoveKind::Reinsertion);
  static const TourNeighborhood oropt2(MoveKind::OrOpt2);
  static const TourNeighborhood exchange(MoveKind::Exchange);
  static const TourNeighborhood exchange21(MoveKind::Exchange21);
  static const TourNeighborhood exchange22(MoveKind::Exchange22);
  static const TourNeighborhood twoopt(MoveKind::TwoOpt);
  static const RelocateNeighborhood relocate;
  static const std::array<const Neighborhood*, 7> all = {
      &reinsertion, &oropt2, &exchange, &exchange21, &exchange22, &twoopt, &relocate};
  return all;
}

std::optional<Move> best_reinsertion_into_range(const SolutionCosting& C, int from_pos,
                                                int slot_lo, int slot_hi) {
  const int m = C.tour_size();
  double best_delta = kInfinity;
  int bq = -1;
  for (int q = std::max(0, slot_lo); q <= std::min(m - 2, slot_hi); ++q) {
    if (!valid_payload(m, MoveKind::Reinsertion, from_pos, q)) continue;
    const auto d = score_candidate(C, MoveKind::Reinsertion, from_pos, q);
    if (d && *d < best_delta) {
      best_delta = *d;
      bq = q;
    }
  }
  if (bq < 0) return std::nullopt;
  return materialize_move(C, MoveKind::Reinsertion, from_pos, bq);
}

std::optional<Move> best_sortie_within(const SolutionCosting& C, int vpos, int seg_lo,
                                       int seg_hi) {
  const bool tspd = C.instance().variant == Variant::TSPD;
  const auto& tour = C.solution().tour;
  if (!relocate_v_ok(C, vpos) || vpos < seg_lo || vpos > seg_hi) return std::nullopt;
  double best_delta = kInfinity;
  int bl = -1, br = -1;
  for (int pl = seg_lo; pl <= seg_hi; ++pl) {
    if (pl == vpos) continue;
    if (tspd && tour[pl] != 0) {
      double d = 0.0;
      Sortie s;
      if (score_relocate_triple(C, vpos, pl, pl, d, s) && d < best_delta) {
        best_delta = d;
        bl = pl;
        br = pl;
      }
    }
    for (int pr = pl + 1; pr <= seg_hi; ++pr) {
      if (pr == vpos) continue;
      double d = 0.0;
      Sortie s;
      if (score_relocate_triple(C, vpos, pl, pr, d, s) && d < best_delta) {
        best_delta = d;
        bl = pl;
        br = pr;
      }
    }
  }
  if (bl < 0) return std::nullopt;
  return materialize_relocate(C, vpos, bl, br);
}

std::optional<Move> make_move(const Solution& sol, const Instance& inst, MoveKind kind, int a,
                              int b) {
  const int m = static_cast<int>(sol.tour.size());
  if (kind == MoveKind::RelocateCustomer || !valid_payload(m, kind, a, b)) return std::nullopt;
  SolutionCosting C(sol, inst);
  if (!score_candidate(C, kind, a, b)) return std::nullopt;
  return materialize_move(C, kind, a, b);
}

std::optional<Move> make_relocate_move(const Solution& sol, const Instance& inst, int vpos,
                                       int lpos, int rpos) {
  const int m = static_cast<int>(sol.tour.size());
  if (vpos < 1 || vpos > m - 2 || lpos < 0 || rpos >= m || lpos > rpos) return std::nullopt;
  SolutionCosting C(sol, inst);
  if (!relocate_v_ok(C, vpos)) return std::nullopt;
  int lo = 0, hi = 0;
  segment_around(C, vpos, lo, hi);
  if (lpos < lo || rpos > hi || lpos == vpos || rpos == vpos) return std::nullopt;
  if (lpos == rpos) {
    if (inst.variant != Variant::TSPD || sol.tour[lpos] == 0) return std::nullopt;
  }
  return materialize_relocate(C, vpos, lpos, rpos);
}

MoveUndo apply_move(Solution& sol, const Move& mv, const Instance& inst) {
  MoveUndo undo{sol.tour, sol.sorties};
  sol.tour = edit_tour(sol.tour, mv.kind, mv.a, mv.b);
  if (mv.replaces_sorties) sol.sorties = mv.new_sorties;
  sort_sorties(sol);
#ifndef NDEBUG
  assert(structural_errors(sol, inst).empty());
#endif
  (void)inst;
  return undo;
}

void revert_move(Solution& sol, MoveUndo undo) {
  sol.tour = std::move(undo.tour);
  sol.sorties = std::move(undo.sorties);
}

Solution applied(const Solution& sol, const Move& mv, const Instance& inst) {
  Solution out = sol;
  apply_move(out, mv, inst);
  return out;
}

double delta_cost(const Solution& sol, const Move& mv, const Instance& inst) {
  SolutionCosting C(sol, inst);
  if (mv.kind == MoveKind::RelocateCustomer) {
    // recover the created trip: the entry not present in the current list
    Sortie added{};
    std::vector<Sortie> old_copy = sol.sorties;
    for (const auto& s : mv.new_sorties) {
      auto it = std::find(old_copy.begin(), old_copy.end(), s);
      if (it != old_copy.end()) old_copy.erase(it);
      else added = s;
    }
    const auto& pos = C.positions();
    const int pl = launch_position(pos, added.launch);
    const int pr = return_position(pos, added.ret, C.tour_size());
    double d = 0.0;
    Sortie tmp;
    if (!score_relocate_triple(C, mv.a, pl, pr, d, tmp))
      throw std::invalid_argument("move not applicable to this solution");
    return d;
  }
  const auto d = score_candidate(C, mv.kind, mv.a, mv.b);
  if (!d) throw std::invalid_argument("move not applicable to this solution");
  return *d;
}

}  // namespace fstsp
