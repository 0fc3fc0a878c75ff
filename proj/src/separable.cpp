#include "gielab/error.hpp"
#include "gielab/optim.hpp"
#include "gielab/states.hpp"
#include "gielab/transforms.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace gielab {

namespace {

/// Pure single-mode CM R(theta) diag(e^{-2r}, e^{2r}) R(theta)^T.
Mat2 pure_mode(double theta, double r) {
  const Mat2 u = rotation(theta);
  return u * Eigen::Vector2d(std::exp(-2 * r), std::exp(2 * r)).asDiagonal() * u.transpose();
}

constexpr std::size_t kRefineStarts = 8;

double min_eigenvalue(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace

std::optional<SeparableDecomposition> find_separable_decomposition(const CovarianceMatrix& gamma_ab,
                                                                   const SeparableSearchConfig& cfg) {
  if (!ppt_separable(gamma_ab)) return std::nullopt;

  // Search in the standard-form frame, where gamma_A = a 1 and gamma_B = b 1. A pure
  // P_A <= a 1 needs e^{2|r|} <= a, which bounds the squeezing range.
  const StandardForm sf = standard_form(gamma_ab);
  const Mat st = sf.matrix().matrix();
  const double ra = 0.5 * std::log(sf.a), rb = 0.5 * std::log(sf.b);

  auto feasibility = [&](std::span<const double> p) {
    Mat q = st;
    q.topLeftCorner(2, 2) -= pure_mode(p[0], p[1]);
    q.bottomRightCorner(2, 2) -= pure_mode(p[2], p[3]);
    return min_eigenvalue(q);
  };

  const int n = std::max(2, cfg.grid_points);
  const auto thetas = linspace(0.0, std::numbers::pi, n);
  const auto sq_a = linspace(0.0, ra, n);
  const auto sq_b = linspace(0.0, rb, n);
  struct Candidate {
    double value;
    std::array<double, 4> p;
  };
  std::vector<Candidate> cands;
  for (double ta : thetas) {
    for (double xa : sq_a) {
      for (double tb : thetas) {
        for (double xb : sq_b) {
          const std::array<double, 4> p{ta, xa, tb, xb};
          cands.push_back({feasibility(p), p});
        }
      }
    }
  }
  const std::size_t n_refine = std::min<std::size_t>(kRefineStarts, cands.size());
  std::partial_sort(cands.begin(), cands.begin() + n_refine, cands.end(),
                    [](const Candidate& x, const Candidate& y) { return x.value > y.value; });
  std::array<double, 4> best = cands[0].p;
  double best_val = cands[0].value;

  // The feasible set can be thin, so a single refinement from the best grid point may stall.
  const double inf = std::numeric_limits<double>::infinity();
  Box box{{-inf, 0.0, -inf, 0.0}, {inf, ra, inf, rb}};
  NelderMeadOptions opt;
  opt.max_iters = cfg.refine_iters;
  opt.size_tol = 1e-13;
  opt.step = {0.2, 0.25 * ra + 1e-3, 0.2, 0.25 * rb + 1e-3};
  for (std::size_t k = 0; k < n_refine && best_val < cfg.accept_tol; ++k) {
    const auto& start = cands[k].p;
    const auto res = nelder_mead([&](std::span<const double> p) { return -feasibility(p); },
                                 {start.begin(), start.end()}, box, opt);
    if (-res.value > best_val) {
      best_val = -res.value;
      std::copy(res.x.begin(), res.x.end(), best.begin());
    }
  }
  if (best_val < -cfg.accept_tol) return std::nullopt;

  SeparableDecomposition dec;
  const Mat2 ia = sf.S_A.inverse(), ib = sf.S_B.inverse();
  dec.gamma_A_pure = ia * pure_mode(best[0], best[1]) * ia.transpose();
  dec.gamma_B_pure = ib * pure_mode(best[2], best[3]) * ib.transpose();
  dec.Q = gamma_ab.matrix() - direct_sum(dec.gamma_A_pure, dec.gamma_B_pure);
  dec.Q = 0.5 * (dec.Q + dec.Q.transpose());

  Eigen::SelfAdjointEigenSolver<Mat> es(dec.Q);
  dec.min_eigenvalue = es.eigenvalues()(0);
  const double cut = 1e-10 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<int> keep;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > cut) keep.push_back(i);
  }
  dec.V = Mat(4, static_cast<int>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    dec.lambda.push_back(es.eigenvalues()(keep[k]));
    dec.V.col(static_cast<int>(k)) = es.eigenvectors().col(keep[k]);
  }
  return dec;
}

Purification encoding_purification(const SeparableDecomposition& dec) {
  const int p = static_cast<int>(dec.lambda.size());
  const int nab = static_cast<int>(dec.V.rows());
  if (dec.V.cols() != p || nab != 4) throw Error(ErrorCode::InvalidDecomposition, "decomposition eigen-data is inconsistent");
  for (double l : dec.lambda) {
    if (!(l > 0.0)) throw Error(ErrorCode::InvalidDecomposition, "decomposition has a non-positive encoding variance");
  }

  // Coordinates (xi_AB, x_E, p_E). x_E carries variance lambda_i and shifts xi_AB by
  // V x_E; p_E absorbs the conjugate kick so that the map is symplectic:
  //   S = [[1, V, 0], [0, 1, 0], [-V^T Om, -V^T Om V / 2, 1]].
  const Mat om = symplectic_form(2);
  const Mat& v = dec.V;
  const int d = nab + 2 * p;
  Mat s = Mat::Identity(d, d);
  s.block(0, nab, nab, p) = v;
  s.block(nab + p, 0, p, nab) = -v.transpose() * om;
  s.block(nab + p, nab, p, p) = -0.5 * v.transpose() * om * v;

  Mat base = Mat::Zero(d, d);
  base.topLeftCorner(nab, nab) = direct_sum(dec.gamma_A_pure, dec.gamma_B_pure);
  for (int i = 0; i < p; ++i) {
    base(nab + i, nab + i) = dec.lambda[i];
    base(nab + p + i, nab + p + i) = 1.0 / dec.lambda[i];
  }
  const Mat blocked = s * base * s.transpose();

  // Reorder E from (x_1..x_p, p_1..p_p) to (x_1, p_1, ..., x_p, p_p).
  std::vector<int> order(d);
  for (int i = 0; i < nab; ++i) order[i] = i;
  for (int i = 0; i < p; ++i) {
    order[nab + 2 * i] = nab + i;
    order[nab + 2 * i + 1] = nab + p + i;
  }
  Mat full(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) full(i, j) = blocked(order[i], order[j]);
  }

  Purification pi;
  pi.n_A = 1;
  pi.n_B = 1;
  pi.n_E = p;
  pi.gamma_AB = full.topLeftCorner(nab, nab);
  pi.gamma_AB = 0.5 * (pi.gamma_AB + pi.gamma_AB.transpose());
  pi.gamma_ABE = full.topRightCorner(nab, 2 * p);
  pi.gamma_E = full.bottomRightCorner(2 * p, 2 * p);
  return pi;
}

MeasurementCM product_projecting_measurement(const SeparableDecomposition& dec, const Purification& pi, double s) {
  if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "product_projecting_measurement: s must be > 0");
  const double scale = std::max(1.0, dec.Q.cwiseAbs().maxCoeff());
  if (dec.Q.size() == 0 || min_eigenvalue(dec.Q) < -1e-8 * scale) {
    throw Error(ErrorCode::InvalidDecomposition, "Q is not positive semidefinite");
  }
  const Purification big = encoding_purification(dec);
  Mat seed = Mat::Zero(2 * big.n_E, 2 * big.n_E);
  for (int i = 0; i < big.n_E; ++i) {
    seed(2 * i, 2 * i) = std::exp(-2 * s);
    seed(2 * i + 1, 2 * i + 1) = std::exp(2 * s);
  }
  return reduce_purification_measurement(pi, big, seed);
}

}  // namespace gielab
