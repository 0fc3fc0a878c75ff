#pragma once

// JSON (de)serialization of optimizer settings, results and local channels.

#include "gielab/gie.hpp"
#include "gielab/states.hpp"

#include <json.hpp>

#include <string>

namespace gielab {

inline constexpr const char* kJsonSchema = "gie-lab/1";

/// Keys: grid_points, refine_iters, tol, t_max, seed, top_k, eve_random. Missing keys
/// keep their defaults; unknown keys or wrong types throw Parse.
GieConfig gie_config_from_json(const nlohmann::json& j, GieConfig base = {});
GieConfig read_gie_config_file(const std::string& path, GieConfig base = {});
nlohmann::json to_json(const GieConfig& cfg);

nlohmann::json to_json(const MeasurementParam& m);
nlohmann::json to_json(const EveParam& e);
nlohmann::json to_json(const GieResult& r);

/// {"eta_A", "eta_B", "noise_A", "noise_B"}; etas default to 1, noises to 0.
LocalChannel local_channel_from_json(const nlohmann::json& j);

/// Parses text, converting library errors to Parse.
nlohmann::json parse_json_text(const std::string& text);

}  // namespace gielab
