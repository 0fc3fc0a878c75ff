#pragma once

// Seeded random instances for the verification suites.

#include "gielab/states.hpp"
#include "gielab/symplectic.hpp"

#include <random>

namespace gielab::tools {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

/// Random symplectic on n modes: two sweeps of random two-mode passive-squeeze-passive
/// blocks over neighbouring pairs (a single-mode block when n = 1).
inline Mat random_symplectic(Rng& rng, int n, double max_squeeze) {
  auto params = [&](int modes) {
    std::vector<double> p(symplectic_param_count(modes));
    for (double& v : p) v = uniform(rng, 0.0, 6.283185307179586);
    const auto sp = unpack_symplectic_params(modes, p);
    std::vector<double> flat;
    for (double v : sp.left) flat.push_back(v);
    for (std::size_t i = 0; i < sp.squeeze.size(); ++i) flat.push_back(uniform(rng, -max_squeeze, max_squeeze));
    for (double v : sp.right) flat.push_back(v);
    return build_symplectic(unpack_symplectic_params(modes, flat)).matrix();
  };
  if (n == 1) return params(1);
  Mat s = Mat::Identity(2 * n, 2 * n);
  for (int layer = 0; layer < 2; ++layer) {
    for (int i = 0; i + 1 < n; ++i) {
      Mat block = Mat::Identity(2 * n, 2 * n);
      block.block(2 * i, 2 * i, 4, 4) = params(2);
      s = block * s;
    }
  }
  return s;
}

/// S (+) nu_i 1 S^T with nu_i in [nu_lo, nu_hi].
inline CovarianceMatrix random_mixed_cm(Rng& rng, int n, double nu_lo, double nu_hi, double max_squeeze) {
  Vec d(2 * n);
  for (int i = 0; i < n; ++i) d(2 * i) = d(2 * i + 1) = uniform(rng, nu_lo, nu_hi);
  const Mat s = random_symplectic(rng, n, max_squeeze);
  const Mat g = s * d.asDiagonal() * s.transpose();
  return CovarianceMatrix(0.5 * (g + g.transpose()));
}

/// Random symmetric PSD matrix of the given rank with entries of order `scale`.
inline Mat random_psd(Rng& rng, int dim, int rank, double scale) {
  Mat g(dim, rank);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < rank; ++j) g(i, j) = uniform(rng, -1.0, 1.0);
  }
  return scale * g * g.transpose();
}

/// Pure single-mode CM R(theta) diag(e^{-2r}, e^{2r}) R(theta)^T.
inline Mat2 random_pure_mode(Rng& rng, double max_squeeze) {
  const Mat2 u = rotation(uniform(rng, 0.0, 3.141592653589793));
  const double r = uniform(rng, -max_squeeze, max_squeeze);
  return u * Eigen::Vector2d(std::exp(-2 * r), std::exp(2 * r)).asDiagonal() * u.transpose();
}

/// P_A (+) P_B + Q with pure P_j and a random PSD Q: separable by construction.
inline CovarianceMatrix random_separable_cm(Rng& rng) {
  const int rank = 1 + static_cast<int>(rng() % 4);
  const Mat q = random_psd(rng, 4, rank, uniform(rng, 0.2, 1.0));
  const Mat g = direct_sum(random_pure_mode(rng, 0.6), random_pure_mode(rng, 0.6)) + q;
  return CovarianceMatrix(0.5 * (g + g.transpose()));
}

}  // namespace gielab::tools
