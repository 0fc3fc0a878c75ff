#include "gielab/transforms.hpp"

#include "gielab/error.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <cmath>

namespace gielab {

namespace {

void require_psd(const Mat& y, const char* where) {
  if (y.rows() != y.cols()) throw Error(ErrorCode::DimensionMismatch, fmt::format("{}: Y must be square", where));
  if (y.size() == 0) return;
  const double scale = std::max(1.0, y.cwiseAbs().maxCoeff());
  if ((y - y.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("{}: Y is not symmetric", where));
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (y + y.transpose()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -1e-10 * scale) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("{}: Y is not positive semidefinite", where));
  }
}

void check_channel(const Purification& pi, const Mat& gamma_E, const ChannelSpec& ch, const char* where) {
  const int k2 = 2 * pi.n_E;
  if (gamma_E.rows() != k2 || gamma_E.cols() != k2) {
    throw Error(ErrorCode::DimensionMismatch, fmt::format("{}: Gamma_E must be {}x{}", where, k2, k2));
  }
  if (ch.X.cols() != k2 || ch.Y.rows() != ch.X.rows()) {
    throw Error(ErrorCode::DimensionMismatch, fmt::format("{}: X must be L x {} and Y L x L", where, k2));
  }
  require_psd(ch.Y, where);
}

}  // namespace

Mat integrate_channel(const Purification& pi, const Mat& gamma_E, const ChannelSpec& ch, double x) {
  check_channel(pi, gamma_E, ch, "integrate_channel");
  if (!(x >= 0.0)) throw Error(ErrorCode::InvalidArgument, "integrate_channel: x must be >= 0");
  const int k2 = 2 * pi.n_E;
  const int L = static_cast<int>(ch.X.rows());

  Eigen::JacobiSVD<Mat> svd(ch.X, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  int q = 0;
  while (q < s.size() && s(q) > 1e-12 * smax && s(q) > 0.0) ++q;

  Vec tau_inv = Vec::Ones(L);
  for (int i = 0; i < q; ++i) tau_inv(i) = 1.0 / s(i);
  const Mat& u = svd.matrixU();
  const Mat y_us = tau_inv.asDiagonal() * (u.transpose() * ch.Y * u) * tau_inv.asDiagonal();

  const Mat a = y_us.topLeftCorner(q, q);
  const Mat c = y_us.topRightCorner(q, L - q);
  const Mat b = y_us.bottomRightCorner(L - q, L - q);

  Mat block = Mat::Zero(k2, k2);
  block.topLeftCorner(q, q) = (L > q) ? Mat(a - c * pseudo_inverse(b) * c.transpose()) : a;
  block.bottomRightCorner(k2 - q, k2 - q) = x * Mat::Identity(k2 - q, k2 - q);
  const Mat& v = svd.matrixV();
  Mat out = gamma_E + v * block * v.transpose();
  return 0.5 * (out + out.transpose());
}

Mat sigma_ab(const Purification& pi, const Mat& gamma_AB_meas, const Mat& gamma_E) {
  const Mat alpha = pi.gamma_AB + gamma_AB_meas;
  if (pi.n_E == 0) return alpha;
  const Mat delta = pi.gamma_E + gamma_E;
  return alpha - pi.gamma_ABE * delta.ldlt().solve(pi.gamma_ABE.transpose());
}

Mat channel_sigma_ab(const Purification& pi, const Mat& gamma_AB_meas, const Mat& gamma_E, const ChannelSpec& ch) {
  check_channel(pi, gamma_E, ch, "channel_sigma_ab");
  const Mat alpha = pi.gamma_AB + gamma_AB_meas;
  const Mat delta = pi.gamma_E + gamma_E;
  const Mat xb = ch.X * pi.gamma_ABE.transpose();
  const Mat z = ch.X * delta * ch.X.transpose() + ch.Y;
  return alpha - xb.transpose() * pseudo_inverse(z) * xb;
}

MeasurementCM reduce_purification_measurement(const Purification& minimal, const Purification& big,
                                              const Mat& gamma_bar) {
  if (big.gamma_AB.rows() != minimal.gamma_AB.rows()) {
    throw Error(ErrorCode::PurificationMismatch, "purifications act on different A, B systems");
  }
  const double scale = std::max(1.0, minimal.gamma_AB.cwiseAbs().maxCoeff());
  if ((big.gamma_AB - minimal.gamma_AB).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw Error(ErrorCode::PurificationMismatch, "purifications have different reduced CMs on AB");
  }
  const int K = big.n_E, R = minimal.n_E;
  if (K < R) throw Error(ErrorCode::PurificationMismatch, "purifying system is smaller than the minimal one");
  if (gamma_bar.rows() != 2 * K || gamma_bar.cols() != 2 * K) {
    throw Error(ErrorCode::DimensionMismatch, fmt::format("Eve measurement must be {}x{}", 2 * K, 2 * K));
  }
  if (R == 0) return MeasurementCM::product({});

  const auto w = williamson_pd(big.gamma_E);
  for (int i = 0; i < K; ++i) {
    const double target = i < R ? minimal.gamma_E(2 * i, 2 * i) : 1.0;
    if (std::abs(w.nu[i] - target) > 1e-6 * std::max(1.0, target)) {
      throw Error(ErrorCode::PurificationMismatch,
                  fmt::format("Eve spectrum mismatch at mode {}: {} vs {}", i, w.nu[i], target));
    }
  }

  const Mat g = big.gamma_ABE * w.S.matrix().transpose();
  const Mat g_r = g.leftCols(2 * R);
  // gamma_ABE O^T = G_R fixes the residual symplectic freedom inside degenerate blocks.
  const Mat o_t = pseudo_inverse(minimal.gamma_ABE) * g_r;
  const double resid = (minimal.gamma_ABE * o_t - g_r).cwiseAbs().maxCoeff();
  const double rest = g.rightCols(2 * (K - R)).size() ? g.rightCols(2 * (K - R)).cwiseAbs().maxCoeff() : 0.0;
  const double gscale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if (resid > 1e-6 * gscale || rest > 1e-6 * gscale) {
    throw Error(ErrorCode::PurificationMismatch,
                fmt::format("purifications are not related by an Eve-local symplectic (residual {:.3g})",
                            std::max(resid, rest)));
  }

  Mat s_bar = w.S.matrix();
  s_bar.topRows(2 * R) = o_t.transpose().inverse() * s_bar.topRows(2 * R);
  Mat gs = s_bar * gamma_bar * s_bar.transpose();
  gs = 0.5 * (gs + gs.transpose());
  const Mat a = gs.topLeftCorner(2 * R, 2 * R);
  if (K == R) return MeasurementCM::finite(a);
  const Mat c = gs.topRightCorner(2 * R, 2 * (K - R));
  const Mat b = gs.bottomRightCorner(2 * (K - R), 2 * (K - R));
  const Mat bi = b + Mat::Identity(b.rows(), b.cols());
  const Mat out = a - c * bi.ldlt().solve(c.transpose());
  return MeasurementCM::finite(0.5 * (out + out.transpose()));
}

}  // namespace gielab
