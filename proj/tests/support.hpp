#pragma once

// Test-side oracles built from different routes than the library code.

#include "gielab/symplectic.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace testing {

using gielab::Mat;
using gielab::Vec;
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline Mat omega(int n) {
  Mat o = Mat::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) o(2 * i, 2 * i + 1) = 1, o(2 * i + 1, 2 * i) = -1;
  return o;
}

/// exp(Omega H) with H random symmetric of norm ~scale: symplectic by construction.
inline Mat random_symplectic(Rng& rng, int n, double scale) {
  Mat h(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = 0; j <= i; ++j) h(i, j) = h(j, i) = uniform(rng, -scale, scale);
  }
  const Mat x = omega(n) * h;
  return x.exp();
}

inline Mat random_cm(Rng& rng, int n, double nu_lo, double nu_hi, double scale) {
  Vec d(2 * n);
  for (int i = 0; i < n; ++i) d(2 * i) = d(2 * i + 1) = uniform(rng, nu_lo, nu_hi);
  const Mat s = random_symplectic(rng, n, scale);
  const Mat g = s * d.asDiagonal() * s.transpose();
  return 0.5 * (g + g.transpose());
}

/// Symplectic eigenvalues as |eig(i Omega gamma)|, descending, each listed once.
inline std::vector<double> symplectic_spectrum(const Mat& g) {
  const int n = static_cast<int>(g.rows() / 2);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(std::complex<double>(0, 1) * (omega(n) * g).cast<std::complex<double>>());
  std::vector<double> v;
  for (int i = 0; i < 2 * n; ++i) v.push_back(std::abs(es.eigenvalues()(i)));
  std::sort(v.begin(), v.end(), std::greater<>());
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(0.5 * (v[2 * i] + v[2 * i + 1]));
  return out;
}

inline double min_eig(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline Mat random_psd(Rng& rng, int dim, int rank, double scale) {
  Mat g(dim, rank);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < rank; ++j) g(i, j) = uniform(rng, -1, 1);
  }
  return scale * g * g.transpose();
}

/// Conditioning by explicit block inversion.
inline Mat schur(const Mat& m, int k) {
  const int r = static_cast<int>(m.rows()) - k;
  return m.topLeftCorner(k, k) - m.topRightCorner(k, r) * m.bottomRightCorner(r, r).inverse() * m.bottomLeftCorner(r, k);
}

/// Mutual information between the first `split` coordinates and the rest.
inline double gaussian_mi(const Mat& s, int split) {
  const int r = static_cast<int>(s.rows()) - split;
  return 0.5 * std::log(s.topLeftCorner(split, split).determinant() * s.bottomRightCorner(r, r).determinant() / s.determinant());
}

}  // namespace testing
