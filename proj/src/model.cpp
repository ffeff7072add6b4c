#include "fstsp/model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fstsp {

std::vector<int> tour_positions(const std::vector<int>& tour, int n) {
  std::vector<int> pos(n, -1);
  for (int p = static_cast<int>(tour.size()) - 1; p >= 0; --p) pos[tour[p]] = p;
  pos[0] = 0;
  return pos;
}

Solution truck_only_solution(std::vector<int> tour, const Instance& inst) {
  Solution sol;
  sol.tour = std::move(tour);
  auto errors = structural_errors(sol, inst);
  if (!errors.empty()) throw std::invalid_argument("not a depot-anchored tour: " + errors.front());
  return sol;
}

NodeRole role_of(const Solution& sol, int node) {
  if (node == 0) return NodeRole::Depot;
  for (const auto& s : sol.sorties) {
    if (s.visit == node) return NodeRole::DroneOnly;
    if (s.launch == node || s.ret == node) return NodeRole::Mixed;
  }
  for (int v : sol.tour)
    if (v == node) return NodeRole::TruckOnly;
  throw std::invalid_argument("node " + std::to_string(node) + " not in solution");
}

void sort_sorties(Solution& sol) {
  const int m = static_cast<int>(sol.tour.size());
  int max_node = 0;
  for (int v : sol.tour) max_node = std::max(max_node, v);
  for (const auto& s : sol.sorties)
    max_node = std::max({max_node, s.launch, s.visit, s.ret});
  auto pos = tour_positions(sol.tour, max_node + 1);
  std::stable_sort(sol.sorties.begin(), sol.sorties.end(), [&](const Sortie& a, const Sortie& b) {
    int la = launch_position(pos, a.launch), lb = launch_position(pos, b.launch);
    if (la != lb) return la < lb;
    return return_position(pos, a.ret, m) < return_position(pos, b.ret, m);
  });
}

std::vector<Segment> subroutes(const Solution& sol) {
  const int m = static_cast<int>(sol.tour.size());
  int max_node = 0;
  for (int v : sol.tour) max_node = std::max(max_node, v);
  for (const auto& s : sol.sorties) max_node = std::max({max_node, s.launch, s.visit, s.ret});
  auto pos = tour_positions(sol.tour, max_node + 1);

  std::vector<Segment> out;
  int cur = 0;
  for (int k = 0; k < static_cast<int>(sol.sorties.size()); ++k) {
    const int l = launch_position(pos, sol.sorties[k].launch);
    const int r = return_position(pos, sol.sorties[k].ret, m);
    if (l > cur) out.push_back({cur, l, false, -1});
    out.push_back({l, r, true, k});
    cur = r;
  }
  if (cur < m - 1 || out.empty()) out.push_back({cur, m - 1, false, -1});
  return out;
}

std::vector<std::string> structural_errors(const Solution& sol, const Instance& inst) {
  std::vector<std::string> out;
  const int m = static_cast<int>(sol.tour.size());
  if (m < 2 || sol.tour.front() != 0 || sol.tour.back() != 0) {
    out.push_back("tour must begin and end at depot 0");
    return out;
  }
  std::vector<int> seen(inst.n, 0);
  for (int p = 0; p < m; ++p) {
    int v = sol.tour[p];
    if (v < 0 || v >= inst.n) {
      out.push_back("tour contains unknown node " + std::to_string(v));
      return out;
    }
    if (v == 0 && p != 0 && p != m - 1) out.push_back("depot revisited mid-tour");
    seen[v]++;
  }
  if (seen[0] != 2) out.push_back("depot must appear exactly at both tour ends");
  for (const auto& s : sol.sorties) {
    for (int v : {s.launch, s.visit, s.ret})
      if (v < 0 || v >= inst.n) {
        out.push_back("sortie references unknown node " + std::to_string(v));
        return out;
      }
    if (s.visit == 0) out.push_back("depot cannot be a drone visit");
    if (s.launch == s.visit || s.ret == s.visit)
      out.push_back("sortie visit coincides with an anchor at node " + std::to_string(s.visit));
    if (seen[s.visit] > 0)
      out.push_back("drone visit " + std::to_string(s.visit) + " also appears on the tour");
    seen[s.visit]++;
    if (s.launch != 0 && seen[s.launch] == 0)
      out.push_back("sortie launch " + std::to_string(s.launch) + " not on the tour");
    if (s.ret != 0 && seen[s.ret] == 0)
      out.push_back("sortie return " + std::to_string(s.ret) + " not on the tour");
  }
  for (int v = 1; v < inst.n; ++v) {
    if (seen[v] == 0) out.push_back("customer " + std::to_string(v) + " is not served");
    if (seen[v] > 1) out.push_back("customer " + std::to_string(v) + " is served more than once");
  }

  auto pos = tour_positions(sol.tour, inst.n);
  for (const auto& s : sol.sorties) {
    if ((s.launch != 0 && pos[s.launch] < 0) || (s.ret != 0 && pos[s.ret] < 0)) continue;
    const int l = launch_position(pos, s.launch);
    const int r = return_position(pos, s.ret, m);
    if (inst.variant == Variant::FSTSP && l >= r)
      out.push_back("FSTSP sortie launch must strictly precede its return (nodes " +
                    std::to_string(s.launch) + "," + std::to_string(s.ret) + ")");
    if (inst.variant == Variant::TSPD && l > r)
      out.push_back("sortie launch must not follow its return (nodes " +
                    std::to_string(s.launch) + "," + std::to_string(s.ret) + ")");
  }
  return out;
}

std::string serialize_solution(const Solution& sol) {
  std::ostringstream out;
  out << "TOUR:";
  for (int v : sol.tour) out << " " << v;
  out << "\n";
  for (const auto& s : sol.sorties)
    out << "SORTIE: " << s.launch << " " << s.visit << " " << s.ret << "\n";
  return out.str();
}

Solution parse_solution(const std::string& text) {
  Solution sol;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  bool have_tour = false;
  while (std::getline(in, line)) {
    ++no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "TOUR:") {
      if (have_tour) throw ParseError(no, "duplicate TOUR line");
      int v;
      while (ls >> v) sol.tour.push_back(v);
      if (sol.tour.empty()) throw ParseError(no, "empty TOUR line");
      have_tour = true;
    } else if (tag == "SORTIE:") {
      Sortie s;
      if (!(ls >> s.launch >> s.visit >> s.ret)) throw ParseError(no, "sortie needs three node ids");
      sol.sorties.push_back(s);
    } else {
      throw ParseError(no, "unknown solution line '" + tag + "'");
    }
  }
  if (!have_tour) throw ParseError(no, "missing TOUR line");
  return sol;
}

Solution load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open solution file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_solution(buf.str());
}

void save_solution(const Solution& sol, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write solution file: " + path);
  out << serialize_solution(sol);
}

}  // namespace fstsp
