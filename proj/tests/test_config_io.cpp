#include "gielab/config_io.hpp"
#include "gielab/error.hpp"
#include "gielab/sweeps.hpp"

#include <doctest.h>

#include <sstream>

using namespace gielab;

TEST_CASE("optimizer config round trip") {
  GieConfig cfg;
  cfg.grid_points = 7;
  cfg.tol = 1e-8;
  cfg.seed = 42;
  const auto back = gie_config_from_json(to_json(cfg));
  CHECK(back.grid_points == 7);
  CHECK(back.tol == 1e-8);
  CHECK(back.seed == 42u);
  CHECK(back.t_max == cfg.t_max);
}

TEST_CASE("optimizer config rejects unknown keys, bad types and bad ranges") {
  CHECK_THROWS_AS(gie_config_from_json(parse_json_text(R"({"gridpoints": 3})")), Error);
  CHECK_THROWS_AS(gie_config_from_json(parse_json_text(R"({"tol": "small"})")), Error);
  CHECK_THROWS_AS(gie_config_from_json(parse_json_text(R"({"grid_points": 1})")), Error);
  CHECK_THROWS_AS(gie_config_from_json(parse_json_text("[1, 2]")), Error);
  CHECK_THROWS_AS(parse_json_text("{oops"), Error);
  CHECK_THROWS_AS(read_gie_config_file("/nonexistent/config.json"), Error);
}

TEST_CASE("result JSON carries the diagnostic fields") {
  GieResult r;
  r.value = 0.25;
  r.reason = "optimized";
  r.gamma_A_opt = MeasurementParam::exact_homodyne(0.5);
  const auto j = to_json(r);
  CHECK(j.at("value").get<double>() == 0.25);
  CHECK(j.at("gamma_A_opt").at("kind") == "homodyne");
  CHECK(j.at("boundary_hit").contains("E"));
  CHECK(j.contains("outer_size"));
}

TEST_CASE("local channel JSON") {
  const auto ch = local_channel_from_json(parse_json_text(R"({"eta_A": 0.5, "noise_B": 0.1})"));
  CHECK(ch.X_A(0, 0) == doctest::Approx(std::sqrt(0.5)));
  CHECK(ch.X_B(0, 0) == doctest::Approx(1.0));
  CHECK(ch.is_completely_positive());
  CHECK_THROWS_AS(local_channel_from_json(parse_json_text(R"({"eta": 0.5})")), Error);
}

TEST_CASE("grid parsing") {
  const auto g = parse_grid("0:1:0.25");
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(parse_grid("0.3").size() == 1);
  const auto h = parse_grid("0:1:0.3");
  CHECK(h.back() <= 1.0);
  CHECK_THROWS_AS(parse_grid("1:0:0.1"), Error);
  CHECK_THROWS_AS(parse_grid("a:b:c"), Error);
}

TEST_CASE("CSV output has a header and 12 significant digits") {
  Table t{{"x", "y"}, {{1.0 / 3.0, 2.0}}};
  std::ostringstream os;
  write_csv(os, t);
  CHECK(os.str() == "x,y\n0.333333333333,2\n");
}
