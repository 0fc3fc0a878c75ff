#include "support.hpp"

#include "gielab/closed_forms.hpp"
#include "gielab/error.hpp"
#include "gielab/mutual_info.hpp"
#include "gielab/states.hpp"

#include <doctest.h>

using namespace gielab;
using testing::Rng;

namespace {

MeasurementCM squeezed(double phi, double t) {
  return MeasurementCM::single(ModeMeasurement::gaussian(phi, -2 * t, 2 * t));
}

Purification ghz_purification(double r) {
  const Mat g = ghz_cm(r).full.matrix();
  Purification pi;
  pi.n_E = 1;
  pi.gamma_AB = g.topLeftCorner(4, 4);
  pi.gamma_ABE = g.topRightCorner(4, 2);
  pi.gamma_E = g.bottomRightCorner(2, 2);
  return pi;
}

}  // namespace

TEST_CASE("product purification gives zero mutual information") {
  Rng rng(41);
  Purification pi;
  pi.n_E = 1;
  pi.gamma_AB = direct_sum(testing::random_cm(rng, 1, 1, 2, 0.4), testing::random_cm(rng, 1, 1, 2, 0.4));
  pi.gamma_ABE = Mat::Zero(4, 2);
  pi.gamma_E = Mat::Identity(2, 2);
  for (int i = 0; i < 5; ++i) {
    const auto ga = MeasurementCM::finite(testing::random_cm(rng, 1, 1, 2, 0.5));
    const auto gb = MeasurementCM::finite(testing::random_cm(rng, 1, 1, 2, 0.5));
    CHECK(mutual_info_f(pi, ga, gb, MeasurementCM::heterodyne(1)) == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("double x-homodyne on TMSV gives ln cosh 2r") {
  for (double r : {0.2, 0.5, 1.0}) {
    const auto pi = minimal_purification(tmsv_cm(r));
    REQUIRE(pi.n_E == 0);
    const auto hx = MeasurementCM::single(ModeMeasurement::homodyne(0));
    CHECK(mutual_info_f(pi, hx, hx, MeasurementCM::product({})) == doctest::Approx(std::log(std::cosh(2 * r))).epsilon(1e-12));
  }
}

TEST_CASE("finite squeezing at t_max = 10 approximates homodyne within 1e-6") {
  const auto pi = minimal_purification(ghz_cm(0.5).reduced);
  const auto hx = MeasurementCM::single(ModeMeasurement::homodyne(0));
  const auto he = MeasurementCM::heterodyne(1);
  CHECK(std::abs(mutual_info_f(pi, hx, hx, he) - mutual_info_f(pi, squeezed(0, 10), squeezed(0, 10), he)) < 1e-6);
}

TEST_CASE("gaussian_mutual_information matches the determinant formula and is scale invariant") {
  Rng rng(43);
  for (int i = 0; i < 10; ++i) {
    const Mat s = testing::random_cm(rng, 2, 1.0, 3.0, 0.6);
    const double ref = testing::gaussian_mi(s, 2);
    CHECK(gaussian_mutual_information(s, 2) == doctest::Approx(ref).epsilon(1e-10));
    CHECK(gaussian_mutual_information(0.5 * s, 2) == doctest::Approx(ref).epsilon(1e-10));
    CHECK(gaussian_mutual_information(17.0 * s, 2) == doctest::Approx(ref).epsilon(1e-10));
  }
  Mat singular = Mat::Ones(4, 4);
  CHECK_THROWS_AS(gaussian_mutual_information(singular, 2), Error);
}

TEST_CASE("f is nonnegative and matches the explicit Schur complement") {
  Rng rng(47);
  for (int i = 0; i < 20; ++i) {
    const auto pi = minimal_purification(CovarianceMatrix(testing::random_cm(rng, 2, 1.1, 3.0, 0.5)));
    const Mat ga = testing::random_cm(rng, 1, 1, 2, 0.6), gb = testing::random_cm(rng, 1, 1, 2, 0.6);
    const Mat ge = testing::random_cm(rng, pi.n_E, 1, 2, 0.5);
    Mat m = pi.full();
    m.topLeftCorner(4, 4) += direct_sum(ga, gb);
    m.bottomRightCorner(2 * pi.n_E, 2 * pi.n_E) += ge;
    const double ref = testing::gaussian_mi(testing::schur(m, 4), 2);
    const double f = mutual_info_f(pi, MeasurementCM::finite(ga), MeasurementCM::finite(gb), MeasurementCM::finite(ge));
    CHECK(f >= 0.0);
    CHECK(f == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("discarding a side gives zero") {
  const auto pi = minimal_purification(ghz_cm(0.5).reduced);
  const auto drop = MeasurementCM::single(ModeMeasurement::drop());
  CHECK(mutual_info_f(pi, drop, MeasurementCM::heterodyne(1), MeasurementCM::heterodyne(1)) == 0.0);
}

TEST_CASE("GHZ triple x-homodyne in the standard-form frame gives U3") {
  for (double r : {0.3, 0.5, 1.0}) {
    const auto pi = ghz_purification(r);
    const auto ghz = ghz_cm(r);
    // Eve's x-homodyne with the TMSV-frame squeeze S_E = diag((x+/x-)^{1/4}, (x-/x+)^{1/4}) absorbed.
    const double q = std::pow(ghz.x_plus / ghz.x_minus, 0.25);
    const double t = 10;
    const Mat2 ge = Eigen::Vector2d(q * q * std::exp(-2 * t), std::exp(2 * t) / (q * q)).asDiagonal();
    const auto cond = conditional_cm(pi, MeasurementCM::finite(ge));
    const auto sf = standard_form(cond);
    // x-homodyne on A and B in the frame where the conditional state is in standard form.
    const Mat2 ia = sf.S_A.inverse(), ib = sf.S_B.inverse();
    const Mat2 hx = Eigen::Vector2d(std::exp(-2 * t), std::exp(2 * t)).asDiagonal();
    const Mat2 ga = ia * hx * ia.transpose(), gb = ib * hx * ib.transpose();
    const double f = mutual_info_f(pi, MeasurementCM::finite(0.5 * (ga + ga.transpose())),
                                   MeasurementCM::finite(0.5 * (gb + gb.transpose())), MeasurementCM::finite(ge));
    const double u3 = std::log(ghz.x_minus / (std::exp(r) * std::sqrt(ghz.x_plus)));
    CHECK(f == doctest::Approx(u3).epsilon(1e-6));
  }
}
