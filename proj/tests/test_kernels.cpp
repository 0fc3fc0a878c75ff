#include "support.hpp"

#include "gielab/kernels/mi_batch.hpp"

#include <doctest.h>

#include <cstring>

using namespace gielab;
using namespace gielab::kernels;
using testing::Rng;

namespace {

struct Soa {
  std::vector<double> xx, xp, pp;
  Sym2Soa view() const { return {xx.data(), xp.data(), pp.data()}; }
  Mat2 at(std::size_t i) const { return (Mat2() << xx[i], xp[i], xp[i], pp[i]).finished(); }
};

Soa random_modes(Rng& rng, std::size_t n, double invalid_fraction) {
  Soa s;
  for (std::size_t i = 0; i < n; ++i) {
    Mat g = testing::random_cm(rng, 1, 1.0, 3.0, 1.2);
    if (testing::uniform(rng, 0, 1) < invalid_fraction) g = -g;  // not positive definite
    s.xx.push_back(g(0, 0));
    s.xp.push_back(g(0, 1));
    s.pp.push_back(g(1, 1));
  }
  return s;
}

double oracle(const Mat& s) {
  if (testing::min_eig(s) <= 0) return std::nan("");
  return testing::gaussian_mi(s, 2);
}

bool same(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  return std::memcmp(&a, &b, sizeof a) == 0;
}

}  // namespace

TEST_CASE("scalar pair kernel matches the determinant formula") {
  Rng rng(101);
  const Mat gc = testing::random_cm(rng, 2, 1.1, 2.5, 0.5);
  const std::size_t n = 37;
  const auto a = random_modes(rng, n, 0.0), b = random_modes(rng, n, 0.0);
  std::vector<double> out(n);
  Eigen::Matrix<double, 4, 4, Eigen::RowMajor> rm = gc;
  scalar::mi_batch_ab(rm.data(), a.view(), b.view(), n, out.data());
  for (std::size_t i = 0; i < n; ++i) {
    const double ref = oracle(gc + direct_sum(a.at(i), b.at(i)));
    CHECK(out[i] == doctest::Approx(ref).epsilon(1e-11));
  }
}

TEST_CASE("scalar Eve kernel matches the determinant formula") {
  Rng rng(103);
  const Mat alpha = testing::random_cm(rng, 2, 1.5, 3.0, 0.4);
  Mat beta(4, 2);
  for (int i = 0; i < 4; ++i) beta(i, 0) = testing::uniform(rng, -0.5, 0.5), beta(i, 1) = testing::uniform(rng, -0.5, 0.5);
  const double nu = 1.7;
  const std::size_t n = 41;
  const auto e = random_modes(rng, n, 0.1);
  std::vector<double> out(n);
  Eigen::Matrix<double, 4, 4, Eigen::RowMajor> arm = alpha;
  Eigen::Matrix<double, 4, 2, Eigen::RowMajor> brm = beta;
  scalar::mi_batch_e1(arm.data(), brm.data(), nu, e.view(), n, out.data());
  for (std::size_t i = 0; i < n; ++i) {
    const Mat2 d = nu * Mat2::Identity() + e.at(i);
    const Mat s = alpha - beta * d.inverse() * beta.transpose();
    const double ref = oracle(s);
    if (std::isnan(ref)) {
      CHECK(std::isnan(out[i]));
    } else {
      CHECK(out[i] == doctest::Approx(ref).epsilon(1e-10));
    }
  }
}

TEST_CASE("invalid lanes produce NaN") {
  const Mat gc = Mat::Identity(4, 4);
  Soa bad{{-3.0}, {0.0}, {-3.0}};
  Soa ok{{1.0}, {0.0}, {1.0}};
  double out = 0;
  Eigen::Matrix<double, 4, 4, Eigen::RowMajor> rm = gc;
  scalar::mi_batch_ab(rm.data(), bad.view(), ok.view(), 1, &out);
  CHECK(std::isnan(out));
}

TEST_CASE("AVX2 variant is bit-identical to the scalar reference") {
  if (!isa_available(Isa::Avx2)) {
    MESSAGE("AVX2 variant unavailable on this machine; equivalence not exercised");
    return;
  }
  Rng rng(107);
  for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 63u, 1000u}) {
    const Mat gc = testing::random_cm(rng, 2, 1.1, 2.5, 0.5);
    const auto a = random_modes(rng, n, 0.05), b = random_modes(rng, n, 0.05);
    Eigen::Matrix<double, 4, 4, Eigen::RowMajor> rm = gc;
    std::vector<double> o1(n), o2(n);
    scalar::mi_batch_ab(rm.data(), a.view(), b.view(), n, o1.data());
    avx2::mi_batch_ab(rm.data(), a.view(), b.view(), n, o2.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(same(o1[i], o2[i]));

    Mat beta(4, 2);
    for (int i = 0; i < 4; ++i) beta(i, 0) = testing::uniform(rng, -0.5, 0.5), beta(i, 1) = testing::uniform(rng, -0.5, 0.5);
    Eigen::Matrix<double, 4, 2, Eigen::RowMajor> brm = beta;
    scalar::mi_batch_e1(rm.data(), brm.data(), 1.4, a.view(), n, o1.data());
    avx2::mi_batch_e1(rm.data(), brm.data(), 1.4, a.view(), n, o2.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(same(o1[i], o2[i]));
  }
}

TEST_CASE("dispatch reports a usable variant") {
  CHECK(isa_available(Isa::Scalar));
  const Isa active = active_isa();
  CHECK(isa_available(active));
  CHECK(!isa_name(active).empty());
}
