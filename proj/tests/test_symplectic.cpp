#include "support.hpp"

#include "gielab/error.hpp"
#include "gielab/states.hpp"
#include "gielab/symplectic.hpp"

#include <doctest.h>

#include <array>

using namespace gielab;
using testing::Rng;

TEST_CASE("symplectic form squares to minus identity") {
  for (int n = 1; n <= 3; ++n) {
    const Mat o = symplectic_form(n);
    CHECK((o * o + Mat::Identity(2 * n, 2 * n)).norm() == 0.0);
    CHECK((o + o.transpose()).norm() == 0.0);
  }
}

TEST_CASE("covariance matrix validation") {
  Mat m = Mat::Identity(4, 4);
  m(0, 1) = 0.3;
  CHECK_THROWS_AS(CovarianceMatrix{m}, Error);
  CHECK(CovarianceMatrix::identity(2).is_physical());
  CHECK_FALSE(CovarianceMatrix(0.5 * Mat::Identity(2, 2)).is_physical());
  CHECK(tmsv_cm(0.8).is_physical());
}

TEST_CASE("symplectic eigenvalues agree with the |eig(i Omega gamma)| route") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const Mat g = testing::random_cm(rng, n, 1.0, 4.0, 0.4);
    const auto lib = symplectic_eigenvalues(g);
    const auto ref = testing::symplectic_spectrum(g);
    REQUIRE(lib.size() == ref.size());
    for (std::size_t i = 0; i < lib.size(); ++i) CHECK(lib[i] == doctest::Approx(ref[i]).epsilon(1e-9));
  }
}

TEST_CASE("Williamson decomposition diagonalizes with a symplectic matrix") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const Mat g = testing::random_cm(rng, n, 1.0, 3.0, 0.5);
    const auto w = williamson(CovarianceMatrix(g));
    const Mat s = w.S.matrix();
    const Mat o = testing::omega(n);
    CHECK((s * o * s.transpose() - o).cwiseAbs().maxCoeff() < 1e-8 * std::max(1.0, s.squaredNorm()));
    Mat d = Mat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) d(2 * i, 2 * i) = d(2 * i + 1, 2 * i + 1) = w.nu[i];
    CHECK((s * g * s.transpose() - d).cwiseAbs().maxCoeff() < 1e-8 * g.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("Williamson handles degenerate spectra") {
  const Mat g = 2.5 * Mat::Identity(4, 4);
  const auto w = williamson(CovarianceMatrix(g));
  CHECK(w.degenerate);
  CHECK(w.nu[0] == doctest::Approx(2.5));
  CHECK(w.nu[1] == doctest::Approx(2.5));
  CHECK((w.S.congruence(g) - g).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("pure two-mode squeezed vacuum has unit symplectic spectrum") {
  for (double r : {0.0, 0.3, 1.2}) {
    for (double nu : symplectic_eigenvalues(tmsv_cm(r))) CHECK(nu == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("unphysical or indefinite input is rejected") {
  Mat bad = Mat::Identity(2, 2);
  bad(1, 1) = -1;
  CHECK_THROWS_AS(symplectic_eigenvalues(bad), Error);
  CHECK_THROWS_AS(williamson(CovarianceMatrix(0.5 * Mat::Identity(2, 2))), Error);
}

TEST_CASE("standard form is reached by local symplectics and keeps the invariants") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const CovarianceMatrix g(testing::random_cm(rng, 2, 1.0, 3.0, 0.5));
    const auto sf = standard_form(g);
    const Mat st = sf.matrix().matrix();
    const Mat moved = sf.local_symplectic().congruence(g.matrix());
    CHECK((moved - st).cwiseAbs().maxCoeff() < 1e-9 * g.matrix().cwiseAbs().maxCoeff());
    CHECK(sf.c1 >= std::abs(sf.c2) - 1e-12);
    const Mat& m = g.matrix();
    CHECK(sf.a * sf.a == doctest::Approx(m.topLeftCorner(2, 2).determinant()).epsilon(1e-9));
    CHECK(sf.b * sf.b == doctest::Approx(m.bottomRightCorner(2, 2).determinant()).epsilon(1e-9));
    CHECK(sf.c1 * sf.c2 == doctest::Approx(m.topRightCorner(2, 2).determinant()).epsilon(1e-8).scale(1.0));
    CHECK(st.determinant() == doctest::Approx(m.determinant()).epsilon(1e-9));
  }
}

TEST_CASE("built symplectics and beam splitters satisfy S Omega S^T = Omega") {
  Rng rng(5);
  for (int n = 1; n <= 2; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> p(symplectic_param_count(n));
      for (double& v : p) v = testing::uniform(rng, -1.5, 1.5);
      const Mat s = build_symplectic(unpack_symplectic_params(n, p)).matrix();
      const Mat o = testing::omega(n);
      CHECK((s * o * s.transpose() - o).cwiseAbs().maxCoeff() < 1e-10 * s.squaredNorm());
    }
  }
  const Mat bs = beam_splitter(0.37);
  CHECK((bs * testing::omega(2) * bs.transpose() - testing::omega(2)).norm() < 1e-14);
  CHECK((bs * bs.transpose() - Mat::Identity(4, 4)).norm() < 1e-14);
  CHECK_THROWS_AS(SymplecticMatrix(Mat::Identity(2, 2) * 2.0), Error);
}

TEST_CASE("symplectic inverse") {
  Rng rng(9);
  const Mat s = testing::random_symplectic(rng, 2, 0.4);
  const SymplecticMatrix sm(s);
  CHECK((sm.inverse().matrix() * s - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("pseudo-inverse satisfies the Moore-Penrose conditions") {
  Rng rng(13);
  const Mat a = testing::random_psd(rng, 5, 3, 1.0) + Mat::Zero(5, 5);
  Mat b(4, 6);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 6; ++j) b(i, j) = testing::uniform(rng, -1, 1);
  }
  for (const Mat& m : {a, b}) {
    const Mat p = pseudo_inverse(m);
    CHECK((m * p * m - m).norm() < 1e-10);
    CHECK((p * m * p - p).norm() < 1e-10);
    CHECK(((m * p).transpose() - m * p).norm() < 1e-10);
    CHECK(((p * m).transpose() - p * m).norm() < 1e-10);
  }
}

TEST_CASE("schur complement over an index set") {
  Rng rng(17);
  const Mat g = testing::random_cm(rng, 3, 1.0, 2.0, 0.3);
  const std::array<int, 4> keep{0, 1, 2, 3};
  CHECK((schur_complement(g, keep) - testing::schur(g, 4)).norm() < 1e-10);
}

TEST_CASE("partial transpose of TMSV has smallest symplectic eigenvalue e^{-2r}") {
  const std::array<int, 1> b{1};
  for (double r : {0.1, 0.5, 1.0}) {
    const auto nu = symplectic_eigenvalues(partial_transpose(tmsv_cm(r), b));
    CHECK(nu.back() == doctest::Approx(std::exp(-2 * r)).epsilon(1e-9));
  }
}

TEST_CASE("SPD square roots") {
  Rng rng(19);
  const Mat g = testing::random_cm(rng, 2, 1.0, 3.0, 0.5);
  const Mat s = spd_sqrt(g);
  CHECK((s * s - g).norm() < 1e-10 * g.norm());
  CHECK((spd_inv_sqrt(g) * s - Mat::Identity(4, 4)).norm() < 1e-10);
}
