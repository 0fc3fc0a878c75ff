#include "support.hpp"

#include "gielab/closed_forms.hpp"
#include "gielab/error.hpp"
#include "gielab/gie.hpp"
#include "gielab/mutual_info.hpp"

#include <doctest.h>

#include <numbers>

using namespace gielab;
using testing::Rng;

TEST_CASE("from_raw keeps seeds physical and wraps the angle") {
  Rng rng(201);
  for (int i = 0; i < 200; ++i) {
    const double phi = testing::uniform(rng, -10, 10);
    const double lx = testing::uniform(rng, -30, 30), lp = testing::uniform(rng, -30, 30);
    const auto p = MeasurementParam::from_raw(phi, lx, lp, 10.0);
    CHECK(p.phi >= 0.0);
    CHECK(p.phi < std::numbers::pi);
    CHECK(p.log_vx + p.log_vp >= 0.0);
    CHECK(std::abs(p.log_vx) <= 20.0);
    CHECK(std::abs(p.log_vp) <= 20.0);
    if (std::abs(lx) < 8 && std::abs(lp) < 8) {
      const Mat2 m = p.mode().matrix();
      CHECK(testing::min_eig(Mat(m)) > 0);
      CHECK(m.determinant() >= 1.0 - 1e-9);
    }
  }
}

TEST_CASE("from_raw reflection is continuous across the reflection line") {
  const auto a = MeasurementParam::from_raw(0.3, 0.5, -0.5 + 1e-9, 10.0);
  const auto b = MeasurementParam::from_raw(0.3, 0.5, -0.5 - 1e-9, 10.0);
  CHECK((a.mode().matrix() - b.mode().matrix()).norm() < 1e-8);
}

TEST_CASE("two-mode Eve parameters always give a physical CM") {
  Rng rng(203);
  EveParam e;
  e.n_modes = 2;
  for (int i = 0; i < 100; ++i) {
    e.raw.assign(12, 0.0);
    for (double& x : e.raw) x = testing::uniform(rng, -3, 3);
    const Mat g = e.matrix(10.0);
    CHECK(CovarianceMatrix(g).is_physical());
  }
  e.raw.resize(5);
  CHECK_THROWS_AS(e.matrix(10.0), Error);
  CHECK_THROWS_AS(EveParam::raw_size(3), Error);
}

TEST_CASE("inf_over_eve without purifying modes is f itself") {
  const auto pi = minimal_purification(tmsv_cm(0.4));
  REQUIRE(pi.n_E == 0);
  const auto h = MeasurementCM::single(ModeMeasurement::homodyne(0.0));
  const auto r = inf_over_eve(pi, h, h);
  CHECK(r.value == doctest::Approx(std::log(std::cosh(0.8))).epsilon(1e-10));
}

TEST_CASE("inf_over_eve on the GHZ reduction with x homodynes reaches the closed form") {
  const double r = 0.5;
  const auto sf = standard_form(ghz_cm(r).reduced);
  const auto pi = minimal_purification(sf.matrix());
  REQUIRE(pi.n_E == 1);
  const auto hx = MeasurementCM::single(ModeMeasurement::homodyne(0.0));
  const auto res = inf_over_eve(pi, hx, hx);
  // Eve's x homodyne is one candidate, so the infimum can only be lower.
  CHECK(res.value <= gie_ghz_closed(r).value + 1e-6);
  CHECK(res.value >= 0.0);
}

TEST_CASE("gie on the TMSV equals ln cosh 2r") {
  for (double r : {0.2, 0.7}) {
    const auto res = gie(tmsv_cm(r));
    CHECK(res.n_purifying == 0);
    CHECK(res.value == doctest::Approx(std::log(std::cosh(2 * r))).epsilon(1e-6));
  }
}

TEST_CASE("PPT states short-circuit to zero") {
  const auto res = gie(CovarianceMatrix::identity(2));
  CHECK(res.reason == "ppt-separable");
  CHECK(res.value == 0.0);
  CHECK(upper_bound_U(ghz_cm(0.0).reduced).value == 0.0);
}

TEST_CASE("gie is invariant under local symplectics") {
  Rng rng(207);
  const auto g = ghz_cm(0.6).reduced;
  const Mat s = direct_sum(testing::random_symplectic(rng, 1, 0.6), testing::random_symplectic(rng, 1, 0.6));
  const CovarianceMatrix g2(s * g.matrix() * s.transpose());
  const double a = gie(g).value, b = gie(g2).value;
  CHECK(std::abs(a - b) < 1e-4);
}

TEST_CASE("gie never exceeds the swapped-order bound") {
  Rng rng(209);
  GieConfig cfg;
  for (int i = 0; i < 3; ++i) {
    const CovarianceMatrix g(testing::random_cm(rng, 2, 1.0, 1.4, 0.8));
    if (ppt_separable(g)) continue;
    const auto lo = gie(g, cfg), hi = upper_bound_U(g, cfg);
    CHECK(lo.value <= hi.value + 1e-6);
  }
}

TEST_CASE("swapped-order bound equals gie for pure states") {
  const auto g = tmsv_cm(0.45);
  CHECK(upper_bound_U(g).value == doctest::Approx(gie(g).value).epsilon(1e-6));
}

TEST_CASE("configuration and shape are validated") {
  GieConfig bad;
  bad.grid_points = 0;
  CHECK_THROWS_AS(gie(tmsv_cm(0.3), bad), Error);
  CHECK_THROWS_AS(gie(CovarianceMatrix::identity(3)), Error);
}
