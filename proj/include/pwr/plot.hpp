#ifndef PWR_PLOT_HPP
#define PWR_PLOT_HPP

#include <string>

#include "pwr/engine.hpp"

namespace pwr {

/// Line chart of r_i(k) against k, one polyline per node, with a legend.
/// Points produced by the zero-division policy are left out. Output depends
/// only on the trace, so equal traces render to identical bytes.
/// Throws std::invalid_argument when k_max < 2 or no ratio is defined.
std::string render_convergence_svg(const PwrTrace& trace, const std::string& title = "PWR convergence");

} // namespace pwr

#endif // PWR_PLOT_HPP
