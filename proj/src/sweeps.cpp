#include "gielab/sweeps.hpp"

#include "gielab/closed_forms.hpp"
#include "gielab/error.hpp"
#include "gielab/measures.hpp"
#include "gielab/states.hpp"
#include "gielab/werner.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>

namespace gielab {

namespace {

double parse_number(std::string_view s) {
  double v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw Error(ErrorCode::InvalidArgument, fmt::format("'{}' is not a number", s));
  return v;
}

}  // namespace

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << fmt::format("{:.12g}", row[i]);
    out << '\n';
  }
}

std::vector<double> parse_grid(std::string_view spec) {
  const auto c1 = spec.find(':');
  if (c1 == std::string_view::npos) return {parse_number(spec)};
  const auto c2 = spec.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw Error(ErrorCode::InvalidArgument, fmt::format("grid '{}' must be lo:hi:step", spec));
  const double lo = parse_number(spec.substr(0, c1));
  const double hi = parse_number(spec.substr(c1 + 1, c2 - c1 - 1));
  const double step = parse_number(spec.substr(c2 + 1));
  if (!(step > 0) || !(hi >= lo)) throw Error(ErrorCode::InvalidArgument, fmt::format("grid '{}' is empty or has step <= 0", spec));
  // Index-based so that values do not accumulate rounding error.
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(n);
  for (long i = 0; i < n; ++i) out.push_back(std::min(hi, lo + static_cast<double>(i) * step));
  return out;
}

Table sweep_pure(const std::vector<double>& r_grid) {
  Table t{{"r_tilde", "GIE", "E", "E_N"}, {}};
  for (double r : r_grid) {
    const auto g = tmsv_cm(r);
    t.rows.push_back({r, gie_pure_closed(g), entropy_of_entanglement_pure(g), log_negativity(g)});
  }
  return t;
}

Table sweep_ghz(const std::vector<double>& r_grid, const GieConfig& cfg, bool* converged) {
  Table t{{"r", "GIE_numeric", "GIE_closed", "GR2", "E_N"}, {}};
  if (converged) *converged = true;
  for (double r : r_grid) {
    const auto g = ghz_cm(r);
    const auto num = gie(g.reduced, cfg);
    if (converged) *converged = *converged && num.converged;
    t.rows.push_back({r, num.value, gie_ghz_closed(r).value, gr2_ghz(r), log_negativity(g.reduced)});
  }
  return t;
}

Table sweep_werner(const std::vector<double>& p_grid, double lambda, int cutoff) {
  Table t{{"p", "L", "cmi_eigen", "cmi_comp", "cmi_pm", "cmi_drop"}, {}};
  for (double p : p_grid) {
    const WernerParams w{p, lambda, cutoff};
    t.rows.push_back({p, lower_bound(w), eve_strategy_cmi(w, EveStrategy::Eigenbasis),
                      eve_strategy_cmi(w, EveStrategy::Computational), eve_strategy_cmi(w, EveStrategy::PlusMinus),
                      eve_strategy_cmi(w, EveStrategy::Drop)});
  }
  return t;
}

}  // namespace gielab
