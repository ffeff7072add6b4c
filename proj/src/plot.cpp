#include "fstsp/plot.hpp"

#include <algorithm>
#include <cstdio>

namespace fstsp {

namespace {

const char* kSortieColors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e",
                               "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

void write_route_svg(const Instance& inst, const Solution& sol, std::ostream& out) {
  double min_x = inst.coords[0][0], max_x = min_x;
  double min_y = inst.coords[0][1], max_y = min_y;
  for (const auto& c : inst.coords) {
    min_x = std::min(min_x, c[0]);
    max_x = std::max(max_x, c[0]);
    min_y = std::min(min_y, c[1]);
    max_y = std::max(max_y, c[1]);
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
  const double scale = 640.0 / span;
  const double margin = 20.0;
  const double width = (max_x - min_x) * scale + 2 * margin;
  const double height = (max_y - min_y) * scale + 2 * margin;
  // SVG y grows downward; flip so plots read like the maps.
  auto px = [&](int node) { return margin + (inst.coords[node][0] - min_x) * scale; };
  auto py = [&](int node) { return margin + (max_y - inst.coords[node][1]) * scale; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
  for (size_t p = 0; p < sol.tour.size(); ++p) {
    if (p) out << " ";
    out << num(px(sol.tour[p])) << "," << num(py(sol.tour[p]));
  }
  out << "\"/>\n";

  const int ncolors = static_cast<int>(sizeof(kSortieColors) / sizeof(kSortieColors[0]));
  for (size_t k = 0; k < sol.sorties.size(); ++k) {
    const Sortie& s = sol.sorties[k];
    out << "<polyline fill=\"none\" stroke=\"" << kSortieColors[k % ncolors]
        << "\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\" points=\"" << num(px(s.launch)) << ","
        << num(py(s.launch)) << " " << num(px(s.visit)) << "," << num(py(s.visit)) << " "
        << num(px(s.ret)) << "," << num(py(s.ret)) << "\"/>\n";
  }

  for (int v = 1; v < inst.n; ++v)
    out << "<circle cx=\"" << num(px(v)) << "\" cy=\"" << num(py(v))
        << "\" r=\"3\" fill=\"" << (inst.eligible[v] ? "#444444" : "#aaaaaa") << "\"/>\n";
  out << "<rect x=\"" << num(px(0) - 5) << "\" y=\"" << num(py(0) - 5)
      << "\" width=\"10\" height=\"10\" fill=\"black\"/>\n";
  out << "</svg>\n";
}

}  // namespace fstsp
