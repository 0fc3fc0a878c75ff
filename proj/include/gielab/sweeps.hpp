#pragma once

// Parameter sweeps producing plot-ready tables, and their CSV form.

#include "gielab/gie.hpp"

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gielab {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Header row, then one line per row with 12 significant digits and '.' decimals.
void write_csv(std::ostream& out, const Table& t);

/// "lo:hi:step" (inclusive of hi up to rounding) or a single value. Throws InvalidArgument.
std::vector<double> parse_grid(std::string_view spec);

/// Pure TMSV family: r_tilde, GIE, E, E_N.
Table sweep_pure(const std::vector<double>& r_grid);

/// GHZ reduction: r, GIE_numeric, GIE_closed, GR2, E_N. `converged` receives the
/// AND of the numeric runs' convergence flags when non-null.
Table sweep_ghz(const std::vector<double>& r_grid, const GieConfig& cfg, bool* converged = nullptr);

/// Werner family: p, L, cmi_eigen, cmi_comp, cmi_pm, cmi_drop.
Table sweep_werner(const std::vector<double>& p_grid, double lambda, int cutoff);

}  // namespace gielab
