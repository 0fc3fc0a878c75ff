#include "verify.hpp"

#include "gielab/closed_forms.hpp"
#include "gielab/cm_io.hpp"
#include "gielab/config_io.hpp"
#include "gielab/error.hpp"
#include "gielab/gie.hpp"
#include "gielab/kernels/mi_batch.hpp"
#include "gielab/measures.hpp"
#include "gielab/states.hpp"
#include "gielab/sweeps.hpp"
#include "gielab/werner.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

using namespace gielab;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInputError = 1, kNotConverged = 2, kVerifyFailed = 3 };

enum class LogLevel { Quiet, Info, Debug };

struct RunConfig {
  std::string state = "tmsv";
  double r = 0.5;
  std::string r_grid = "0:2:0.02";
  std::string p_grid = "0:1:0.02";
  double lambda = 0.3;
  int cutoff = 40;
  std::string channel;      // JSON text
  std::string config_path;  // optimizer config JSON file
  std::optional<double> tol, t_max;
  std::optional<int> grid_points;
  std::optional<std::uint64_t> seed;
  std::string out;  // "csv", "json", a path, or empty for stdout
  std::string format;
  bool bits = false;
  std::string log_level = "info";
  std::string figure;
  std::string suite = "all";
};

LogLevel level(const RunConfig& rc) {
  if (rc.log_level == "quiet") return LogLevel::Quiet;
  if (rc.log_level == "debug") return LogLevel::Debug;
  return LogLevel::Info;
}

template <class... Args>
void log(const RunConfig& rc, LogLevel at, fmt::format_string<Args...> f, Args&&... args) {
  if (static_cast<int>(level(rc)) >= static_cast<int>(at)) {
    fmt::print(stderr, "gie-lab: {}\n", fmt::format(f, std::forward<Args>(args)...));
  }
}

GieConfig optimizer_config(const RunConfig& rc) {
  GieConfig cfg;
  if (!rc.config_path.empty()) cfg = read_gie_config_file(rc.config_path, cfg);
  if (rc.tol) cfg.tol = *rc.tol;
  if (rc.t_max) cfg.t_max = *rc.t_max;
  if (rc.grid_points) cfg.grid_points = *rc.grid_points;
  if (rc.seed) cfg.seed = *rc.seed;
  if (cfg.grid_points < 2 || !(cfg.tol > 0) || !(cfg.t_max > 0)) {
    throw Error(ErrorCode::InvalidArgument, "optimizer settings out of range");
  }
  return cfg;
}

struct BuiltState {
  CovarianceMatrix gamma;
  json description;
  std::optional<double> closed_form;  // GIE closed form when recognised
};

BuiltState build_state(const RunConfig& rc) {
  BuiltState s;
  if (rc.state == "tmsv") {
    s.gamma = tmsv_cm(rc.r);
    s.description = {{"family", "tmsv"}, {"r", rc.r}};
    s.closed_form = gie_pure_closed(s.gamma);
  } else if (rc.state == "ghz") {
    if (rc.r < 0) throw Error(ErrorCode::InvalidArgument, "ghz requires r >= 0");
    s.gamma = ghz_cm(rc.r).reduced;
    s.description = {{"family", "ghz"}, {"r", rc.r}};
    s.closed_form = gie_ghz_closed(rc.r).value;
  } else if (rc.state.rfind("file:", 0) == 0) {
    const std::string path = rc.state.substr(5);
    s.gamma = read_cm_file(path);
    s.description = {{"family", "file"}, {"path", path}};
  } else {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown state '{}' (expected tmsv, ghz or file:<path>)", rc.state));
  }
  if (s.gamma.n_modes() != 2) throw Error(ErrorCode::InvalidCM, "state must have two modes");
  if (!s.gamma.is_physical()) throw Error(ErrorCode::InvalidCM, "state is not a physical CM");
  if (!rc.channel.empty()) {
    const json ch = parse_json_text(rc.channel);
    s.gamma = apply_local_channel(s.gamma, local_channel_from_json(ch));
    s.description["channel"] = ch;
    s.closed_form.reset();  // the closed forms describe the channel-free family only
  }
  return s;
}

double unit(const RunConfig& rc, double nats) { return rc.bits ? nats / std::numbers::ln2 : nats; }

/// Resolves --out / --format into a stream target and a format.
struct Sink {
  std::string format;
  std::string path;
};

Sink sink(const RunConfig& rc, const std::string& default_format) {
  Sink s{rc.format.empty() ? default_format : rc.format, ""};
  if (rc.out == "csv" || rc.out == "json") {
    if (rc.format.empty()) s.format = rc.out;
  } else {
    s.path = rc.out;
  }
  if (s.format != "csv" && s.format != "json") throw Error(ErrorCode::InvalidArgument, fmt::format("unknown format '{}'", s.format));
  return s;
}

void emit(const Sink& s, const std::string& text) {
  if (s.path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(s.path);
  if (!f) throw Error(ErrorCode::InvalidArgument, fmt::format("cannot write '{}'", s.path));
  f << text;
  if (!f) throw Error(ErrorCode::InvalidArgument, fmt::format("failed writing '{}'", s.path));
}

std::string table_text(const RunConfig& rc, const Table& t, const Sink& s, const std::string& name) {
  Table conv = t;
  if (rc.bits) {
    for (auto& row : conv.rows) {
      for (std::size_t i = 1; i < row.size(); ++i) row[i] = unit(rc, row[i]);
    }
  }
  if (s.format == "csv") {
    std::ostringstream os;
    write_csv(os, conv);
    return os.str();
  }
  json j = {{"schema", kJsonSchema}, {"command", "sweep"}, {"figure", name}, {"units", rc.bits ? "bits" : "nats"},
            {"columns", conv.columns}, {"rows", conv.rows}};
  return j.dump(2) + "\n";
}

std::string result_csv(const GieResult& r, double value, const std::optional<double>& closed) {
  std::string out = "value,reason,converged,iterations,evaluations,outer_size,inner_size,closed_form\n";
  out += fmt::format("{:.12g},{},{},{},{},{:.12g},{:.12g},{}\n", value, r.reason, r.converged ? 1 : 0, r.iterations,
                     r.evaluations, r.outer_size, r.inner_size, closed ? fmt::format("{:.12g}", *closed) : "");
  return out;
}

int cmd_optimize(const RunConfig& rc, bool upper) {
  const auto st = build_state(rc);
  const auto cfg = optimizer_config(rc);
  log(rc, LogLevel::Info, "{} on {} (kernel: {})", upper ? "upper bound" : "GIE", st.description.dump(),
      kernels::isa_name(kernels::active_isa()));
  const GieResult res = upper ? upper_bound_U(st.gamma, cfg) : gie(st.gamma, cfg);
  const Sink s = sink(rc, "json");
  std::optional<double> closed;
  if (st.closed_form) closed = unit(rc, *st.closed_form);
  if (s.format == "csv") {
    emit(s, result_csv(res, unit(rc, res.value), closed));
  } else {
    json j = {{"schema", kJsonSchema},     {"command", upper ? "bound" : "gie"}, {"state", st.description},
              {"config", to_json(cfg)},     {"units", rc.bits ? "bits" : "nats"}, {"result", to_json(res)},
              {"value", unit(rc, res.value)}};
    if (closed) {
      j["closed_form"] = *closed;
      j["closed_form_error"] = unit(rc, res.value) - *closed;
    }
    emit(s, j.dump(2) + "\n");
  }
  if (!res.converged) {
    log(rc, LogLevel::Info, "warning: optimizer did not converge (outer size {:.3g}, inner size {:.3g})", res.outer_size,
        res.inner_size);
    return kNotConverged;
  }
  return kOk;
}

int cmd_measures(const RunConfig& rc) {
  const auto st = build_state(rc);
  const auto cfg = optimizer_config(rc);
  Gr2Config gc;
  gc.seed = cfg.seed;
  const auto gr2 = gr2_numeric(st.gamma, gc);
  json m = {{"log_negativity", unit(rc, log_negativity(st.gamma))}, {"gr2_numeric", unit(rc, gr2.value)}};
  bool pure = true;
  for (double nu : symplectic_eigenvalues(st.gamma)) pure = pure && std::abs(nu - 1) <= kPurityTol;
  if (pure) {
    m["entropy_of_entanglement"] = unit(rc, entropy_of_entanglement_pure(st.gamma));
    m["gie_pure_closed"] = unit(rc, gie_pure_closed(st.gamma));
  }
  if (rc.state == "ghz" && rc.channel.empty()) {
    const auto g = gie_ghz_closed(rc.r);
    m["gr2_ghz"] = unit(rc, gr2_ghz(rc.r));
    m["gie_ghz_closed"] = unit(rc, g.value);
    m["ghz_diagnostics"] = {{"U1", unit(rc, g.U1)}, {"U2", unit(rc, g.U2)}, {"U3", unit(rc, g.U3)},
                            {"r_th", g.r_th},       {"a_max", g.a_max},     {"nu", g.nu}};
  }
  const Sink s = sink(rc, "json");
  if (s.format == "csv") {
    std::string head, row;
    for (const auto& [k, v] : m.items()) {
      if (!v.is_number()) continue;
      head += (head.empty() ? "" : ",") + k;
      row += (row.empty() ? "" : ",") + fmt::format("{:.12g}", v.get<double>());
    }
    emit(s, head + "\n" + row + "\n");
  } else {
    emit(s, json{{"schema", kJsonSchema}, {"command", "measures"}, {"state", st.description},
                 {"units", rc.bits ? "bits" : "nats"}, {"measures", m}}.dump(2) + "\n");
  }
  return gr2.converged ? kOk : kNotConverged;
}

int cmd_sweep(const RunConfig& rc, const std::string& figure) {
  const Sink s = sink(rc, "csv");
  Table t;
  bool converged = true;
  if (figure == "pure") {
    t = sweep_pure(parse_grid(rc.r_grid));
  } else if (figure == "ghz") {
    t = sweep_ghz(parse_grid(rc.r_grid), optimizer_config(rc), &converged);
  } else if (figure == "werner") {
    const WernerParams probe{1.0, rc.lambda, rc.cutoff};
    probe.validate();
    if (probe.tail_mass() > kTailWarning) {
      log(rc, LogLevel::Info, "warning: truncation tail {:.3g} exceeds {:.0e}; raise --cutoff", probe.tail_mass(), kTailWarning);
    }
    t = sweep_werner(parse_grid(rc.p_grid), rc.lambda, rc.cutoff);
  } else {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown sweep '{}'", figure));
  }
  log(rc, LogLevel::Debug, "{} rows", t.rows.size());
  emit(s, table_text(rc, t, s, figure));
  return converged ? kOk : kNotConverged;
}

int cmd_verify(const RunConfig& rc) {
  const auto cfg = optimizer_config(rc);
  std::vector<std::string> names;
  if (rc.suite == "all") {
    names = tools::suite_names();
  } else {
    names = {rc.suite};
  }
  json suites = json::array();
  bool ok = true;
  for (const auto& n : names) {
    log(rc, LogLevel::Info, "running suite {}", n);
    const auto r = tools::run_suite(n, cfg);
    ok = ok && r.passed;
    suites.push_back({{"name", r.name},
                      {"passed", r.passed},
                      {"instances", r.instances},
                      {"max_residual", r.max_residual},
                      {"threshold", r.threshold},
                      {"note", r.note}});
  }
  const Sink s = sink(rc, "json");
  if (s.format == "csv") {
    std::string out = "suite,passed,instances,max_residual,threshold\n";
    for (const auto& j : suites) {
      out += fmt::format("{},{},{},{:.6g},{:.6g}\n", j["name"].get<std::string>(), j["passed"].get<bool>() ? 1 : 0,
                         j["instances"].get<int>(), j["max_residual"].get<double>(), j["threshold"].get<double>());
    }
    emit(s, out);
  } else {
    emit(s, json{{"schema", kJsonSchema}, {"command", "verify"}, {"passed", ok}, {"suites", suites}}.dump(2) + "\n");
  }
  return ok ? kOk : kVerifyFailed;
}

void add_optimizer_flags(CLI::App* c, RunConfig& rc) {
  c->add_option("--tol", rc.tol, "simplex size tolerance");
  c->add_option("--t-max", rc.t_max, "log-variance clamp, variances within e^{+-2 t_max}");
  c->add_option("--grid-points", rc.grid_points, "screening grid points per axis");
  c->add_option("--seed", rc.seed, "random seed");
  c->add_option("--config", rc.config_path, "optimizer config JSON file");
}

void add_output_flags(CLI::App* c, RunConfig& rc) {
  c->add_option("--out", rc.out, "output path, or csv/json to write that format to stdout");
  c->add_option("--format", rc.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  c->add_flag("--bits", rc.bits, "report entropic quantities in bits instead of nats");
}

void add_state_flags(CLI::App* c, RunConfig& rc) {
  c->add_option("state", rc.state, "tmsv, ghz or file:<path>")->required();
  c->add_option("--r", rc.r, "squeezing parameter");
  c->add_option("--channel", rc.channel, R"(local channel JSON {"eta_A":..,"eta_B":..,"noise_A":..,"noise_B":..})");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian intrinsic entanglement of two-mode Gaussian states"};
  app.require_subcommand(1);
  RunConfig rc;
  app.add_option("--log-level", rc.log_level, "quiet, info or debug")->check(CLI::IsMember({"quiet", "info", "debug"}));

  auto* c_gie = app.add_subcommand("gie", "compute GIE (sup over Alice/Bob of inf over Eve)");
  auto* c_bound = app.add_subcommand("bound", "compute the swapped-order upper bound");
  auto* c_meas = app.add_subcommand("measures", "log-negativity, GR2 and, for pure states, entropy of entanglement");
  for (auto* c : {c_gie, c_bound, c_meas}) {
    add_state_flags(c, rc);
    add_optimizer_flags(c, rc);
    add_output_flags(c, rc);
  }

  auto* c_sweep = app.add_subcommand("sweep", "plot-ready tables for the pure, ghz and werner families");
  c_sweep->add_option("figure", rc.figure, "pure, ghz or werner")->required()->check(CLI::IsMember({"pure", "ghz", "werner"}));
  c_sweep->add_option("--r-grid", rc.r_grid, "lo:hi:step for pure and ghz");
  c_sweep->add_option("--p-grid", rc.p_grid, "lo:hi:step for werner");
  c_sweep->add_option("--lambda", rc.lambda, "TMSV parameter for werner");
  c_sweep->add_option("--cutoff", rc.cutoff, "Fock cutoff for werner");
  add_optimizer_flags(c_sweep, rc);
  add_output_flags(c_sweep, rc);

  auto* c_werner = app.add_subcommand("werner", "Werner lower bound and Eve strategies (same as sweep werner)");
  c_werner->add_option("--p-grid", rc.p_grid, "lo:hi:step");
  c_werner->add_option("--lambda", rc.lambda, "TMSV parameter");
  c_werner->add_option("--cutoff", rc.cutoff, "Fock cutoff");
  add_output_flags(c_werner, rc);

  auto* c_verify = app.add_subcommand("verify", "run property suites");
  c_verify->add_option("suite", rc.suite, "core, channel, purification, separable, monotonic or all")
      ->check(CLI::IsMember({"core", "channel", "purification", "separable", "monotonic", "all"}));
  add_optimizer_flags(c_verify, rc);
  add_output_flags(c_verify, rc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (c_gie->parsed()) return cmd_optimize(rc, false);
    if (c_bound->parsed()) return cmd_optimize(rc, true);
    if (c_meas->parsed()) return cmd_measures(rc);
    if (c_sweep->parsed()) return cmd_sweep(rc, rc.figure);
    if (c_werner->parsed()) return cmd_sweep(rc, "werner");
    if (c_verify->parsed()) return cmd_verify(rc);
  } catch (const Error& e) {
    fmt::print(stderr, "gie-lab: error ({}): {}\n", to_string(e.code()), e.what());
    return kInputError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "gie-lab: error: {}\n", e.what());
    return kInputError;
  }
  return kInputError;
}
