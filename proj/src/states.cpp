#include "gielab/states.hpp"

#include "gielab/error.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <cmath>
#include <complex>

namespace gielab {

namespace {

const Mat2 kSigmaZ = (Mat2() << 1, 0, 0, -1).finished();

void require_nonnegative(double r, const char* where) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("{}: squeezing must be finite and >= 0, got {}", where, r));
  }
}

}  // namespace

Mat Purification::full() const {
  const int d = 2 * (n_AB() + n_E);
  Mat m(d, d);
  const int ab = 2 * n_AB();
  m.topLeftCorner(ab, ab) = gamma_AB;
  if (n_E > 0) {
    m.topRightCorner(ab, 2 * n_E) = gamma_ABE;
    m.bottomLeftCorner(2 * n_E, ab) = gamma_ABE.transpose();
    m.bottomRightCorner(2 * n_E, 2 * n_E) = gamma_E;
  }
  return m;
}

CovarianceMatrix tmsv_cm(double r) {
  require_nonnegative(r, "tmsv_cm");
  Mat m(4, 4);
  m.topLeftCorner(2, 2) = std::cosh(2 * r) * Mat2::Identity();
  m.bottomRightCorner(2, 2) = std::cosh(2 * r) * Mat2::Identity();
  m.topRightCorner(2, 2) = std::sinh(2 * r) * kSigmaZ;
  m.bottomLeftCorner(2, 2) = std::sinh(2 * r) * kSigmaZ;
  return CovarianceMatrix(m);
}

GhzState ghz_cm(double r) {
  require_nonnegative(r, "ghz_cm");
  GhzState g;
  g.x_plus = (std::exp(2 * r) + 2 * std::exp(-2 * r)) / 3.0;
  g.x_minus = (std::exp(-2 * r) + 2 * std::exp(2 * r)) / 3.0;
  Mat2 alpha = Mat2::Zero();
  alpha(0, 0) = g.x_plus;
  alpha(1, 1) = g.x_minus;
  const Mat2 kappa = (g.x_minus - g.x_plus) * kSigmaZ;
  Mat m(6, 6);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m.block<2, 2>(2 * i, 2 * j) = i == j ? alpha : kappa;
  }
  g.full = CovarianceMatrix(m);
  g.reduced = CovarianceMatrix(Mat(m.topLeftCorner(4, 4)));
  return g;
}

Purification minimal_purification(const CovarianceMatrix& gamma_ab, int n_A) {
  const int n = gamma_ab.n_modes();
  if (n_A < 0 || n_A > n) throw Error(ErrorCode::DimensionMismatch, "minimal_purification: bad split");
  const auto w = williamson(gamma_ab);
  int R = 0;
  while (R < n && w.nu[R] > 1.0 + kPurityTol) ++R;

  Purification pi;
  pi.n_A = n_A;
  pi.n_B = n - n_A;
  pi.n_E = R;
  pi.gamma_AB = gamma_ab.matrix();
  pi.gamma_E = Mat::Zero(2 * R, 2 * R);
  Mat z = Mat::Zero(2 * n, 2 * R);
  for (int i = 0; i < R; ++i) {
    pi.gamma_E.block<2, 2>(2 * i, 2 * i) = w.nu[i] * Mat2::Identity();
    z.block<2, 2>(2 * i, 2 * i) = std::sqrt(w.nu[i] * w.nu[i] - 1.0) * kSigmaZ;
  }
  pi.gamma_ABE = w.S.inverse().matrix() * z;
  return pi;
}

CovarianceMatrix conditional_cm(const Purification& pi, const MeasurementCM& gamma_E) {
  if (pi.n_E == 0) return pi.reduced();
  if (gamma_E.n_modes() != pi.n_E) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("conditional_cm: Eve measurement has {} modes, purification has {}", gamma_E.n_modes(), pi.n_E));
  }
  if (gamma_E.is_discarded()) return pi.reduced();
  // lim (gamma_E + K + x P)^{-1} = W (W^T (gamma_E + K) W)^{-1} W^T
  const Mat& w = gamma_E.measured_basis();
  const Mat n = w.transpose() * (pi.gamma_E + gamma_E.finite_part()) * w;
  const Mat b = pi.gamma_ABE * w;
  Eigen::LDLT<Mat> ldlt(n);
  if (ldlt.info() != Eigen::Success) throw Error(ErrorCode::DegenerateDistribution, "conditional_cm: singular Eve block");
  return CovarianceMatrix(pi.gamma_AB - b * ldlt.solve(b.transpose()));
}

Mat outcome_ccm(const Purification& pi, const MeasurementCM& gamma_A, const MeasurementCM& gamma_B,
                const MeasurementCM& gamma_E) {
  if (gamma_A.n_modes() != pi.n_A || gamma_B.n_modes() != pi.n_B || gamma_E.n_modes() != pi.n_E) {
    throw Error(ErrorCode::DimensionMismatch, "outcome_ccm: measurement dimensions do not match the purification");
  }
  Mat g = direct_sum(direct_sum(gamma_A.matrix(), gamma_B.matrix()), pi.n_E ? gamma_E.matrix() : Mat(0, 0));
  return pi.full() + g;
}

bool ppt_separable(const CovarianceMatrix& gamma_ab, double tol) {
  if (gamma_ab.n_modes() != 2) throw Error(ErrorCode::InvalidCM, "ppt_separable: expects a two-mode CM");
  if (!gamma_ab.is_physical()) throw Error(ErrorCode::InvalidCM, "ppt_separable: non-physical CM");
  const int b[] = {1};
  const auto nu = symplectic_eigenvalues(partial_transpose(gamma_ab, b));
  return nu.back() >= 1.0 - tol;
}

LocalChannel LocalChannel::lossy(double eta_A, double eta_B, double noise_A, double noise_B) {
  for (double eta : {eta_A, eta_B}) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "channel transmissivity must lie in [0, 1]");
  }
  for (double nz : {noise_A, noise_B}) {
    if (!(nz >= 0.0)) throw Error(ErrorCode::InvalidArgument, "channel noise must be >= 0");
  }
  LocalChannel ch;
  ch.X_A = std::sqrt(eta_A) * Mat::Identity(2, 2);
  ch.Y_A = (1.0 - eta_A + noise_A) * Mat::Identity(2, 2);
  ch.X_B = std::sqrt(eta_B) * Mat::Identity(2, 2);
  ch.Y_B = (1.0 - eta_B + noise_B) * Mat::Identity(2, 2);
  return ch;
}

namespace {

bool cp_side(const Mat& x, const Mat& y, double tol) {
  if (x.rows() != y.rows() || y.rows() != y.cols() || x.rows() % 2 != 0 || x.cols() % 2 != 0) return false;
  const Mat om_out = symplectic_form(static_cast<int>(y.rows() / 2));
  const Mat om_in = symplectic_form(static_cast<int>(x.cols() / 2));
  const std::complex<double> i(0.0, 1.0);
  const Eigen::MatrixXcd h = y.cast<std::complex<double>>() + i * (om_out - x * om_in * x.transpose()).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol * std::max(1.0, y.norm());
}

}  // namespace

bool LocalChannel::is_completely_positive(double tol) const {
  return cp_side(X_A, Y_A, tol) && cp_side(X_B, Y_B, tol);
}

CovarianceMatrix apply_local_channel(const CovarianceMatrix& gamma_ab, const LocalChannel& ch) {
  if (ch.X_A.cols() + ch.X_B.cols() != gamma_ab.matrix().rows()) {
    throw Error(ErrorCode::DimensionMismatch, "apply_local_channel: channel does not match the state");
  }
  if (!ch.is_completely_positive()) throw Error(ErrorCode::ChannelNotCP, "apply_local_channel: channel is not completely positive");
  const Mat x = direct_sum(ch.X_A, ch.X_B);
  return CovarianceMatrix(x * gamma_ab.matrix() * x.transpose() + direct_sum(ch.Y_A, ch.Y_B));
}

}  // namespace gielab
