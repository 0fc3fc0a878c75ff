#include "gielab/config_io.hpp"

#include "gielab/error.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

namespace gielab {

namespace {

template <class T>
T get_as(const nlohmann::json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, fmt::format("bad value for '{}': {}", key, e.what()));
  }
}

}  // namespace

nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, fmt::format("invalid JSON: {}", e.what()));
  }
}

GieConfig gie_config_from_json(const nlohmann::json& j, GieConfig cfg) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "optimizer config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "grid_points") cfg.grid_points = get_as<int>(j, key);
    else if (key == "refine_iters") cfg.refine_iters = get_as<int>(j, key);
    else if (key == "tol") cfg.tol = get_as<double>(j, key);
    else if (key == "t_max") cfg.t_max = get_as<double>(j, key);
    else if (key == "seed") cfg.seed = get_as<std::uint64_t>(j, key);
    else if (key == "top_k") cfg.top_k = get_as<int>(j, key);
    else if (key == "eve_random") cfg.eve_random = get_as<int>(j, key);
    else throw Error(ErrorCode::Parse, fmt::format("unknown optimizer config key '{}'", key));
  }
  if (cfg.grid_points < 2 || cfg.refine_iters < 0 || !(cfg.tol > 0) || !(cfg.t_max > 0) || cfg.top_k < 1 ||
      cfg.eve_random < 0) {
    throw Error(ErrorCode::Parse, "optimizer config value out of range");
  }
  return cfg;
}

GieConfig read_gie_config_file(const std::string& path, GieConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, fmt::format("cannot open config file '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return gie_config_from_json(parse_json_text(ss.str()), base);
}

nlohmann::json to_json(const GieConfig& cfg) {
  return {{"grid_points", cfg.grid_points}, {"refine_iters", cfg.refine_iters}, {"tol", cfg.tol},
          {"t_max", cfg.t_max},             {"seed", cfg.seed},                 {"top_k", cfg.top_k},
          {"eve_random", cfg.eve_random}};
}

nlohmann::json to_json(const MeasurementParam& m) {
  if (m.homodyne) return {{"kind", "homodyne"}, {"phi", m.phi}};
  return {{"kind", "gaussian"}, {"phi", m.phi}, {"log_vx", m.log_vx}, {"log_vp", m.log_vp}};
}

nlohmann::json to_json(const EveParam& e) { return {{"n_modes", e.n_modes}, {"raw", e.raw}}; }

nlohmann::json to_json(const GieResult& r) {
  return {{"value", r.value},
          {"reason", r.reason},
          {"n_purifying", r.n_purifying},
          {"gamma_A_opt", to_json(r.gamma_A_opt)},
          {"gamma_B_opt", to_json(r.gamma_B_opt)},
          {"gamma_E_opt", to_json(r.gamma_E_opt)},
          {"iterations", r.iterations},
          {"evaluations", r.evaluations},
          {"converged", r.converged},
          {"outer_size", r.outer_size},
          {"inner_size", r.inner_size},
          {"boundary_hit", {{"A", r.boundary_hit_A}, {"B", r.boundary_hit_B}, {"E", r.boundary_hit_E}}}};
}

LocalChannel local_channel_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "channel must be a JSON object");
  double eta_a = 1, eta_b = 1, noise_a = 0, noise_b = 0;
  for (const auto& [key, value] : j.items()) {
    if (key == "eta_A") eta_a = get_as<double>(j, key);
    else if (key == "eta_B") eta_b = get_as<double>(j, key);
    else if (key == "noise_A") noise_a = get_as<double>(j, key);
    else if (key == "noise_B") noise_b = get_as<double>(j, key);
    else throw Error(ErrorCode::Parse, fmt::format("unknown channel key '{}'", key));
  }
  return LocalChannel::lossy(eta_a, eta_b, noise_a, noise_b);
}

}  // namespace gielab
