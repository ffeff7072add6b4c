#ifndef FSTSP_PLOT_HPP
#define FSTSP_PLOT_HPP

#include <ostream>

#include "fstsp/model.hpp"

namespace fstsp {

// Deterministic SVG: black truck polyline, one colored 3-segment polyline
// per sortie, square marker for the depot, circles for customers.
void write_route_svg(const Instance& inst, const Solution& sol, std::ostream& out);

}  // namespace fstsp

#endif  // FSTSP_PLOT_HPP
