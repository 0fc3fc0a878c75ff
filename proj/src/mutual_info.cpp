#include "gielab/mutual_info.hpp"

#include "gielab/error.hpp"

#include <cmath>

namespace gielab {

namespace {

double log_det_spd(const Mat& m) {
  Eigen::LLT<Mat> llt(m);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::DegenerateDistribution, "outcome covariance is not positive definite");
  }
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace

double gaussian_mutual_information(const Mat& sigma, int split) {
  const int d = static_cast<int>(sigma.rows());
  if (split <= 0 || split >= d) return 0.0;
  // Jacobi scaling keeps homodyne-limit variances from swamping the determinants;
  // f is unchanged because the scaling is local to A and B.
  Vec scale(d);
  for (int i = 0; i < d; ++i) {
    if (!(sigma(i, i) > 0.0)) throw Error(ErrorCode::DegenerateDistribution, "outcome variance is not positive");
    scale(i) = 1.0 / std::sqrt(sigma(i, i));
  }
  const Mat s = scale.asDiagonal() * sigma * scale.asDiagonal();
  const double v = 0.5 * (log_det_spd(s.topLeftCorner(split, split)) +
                          log_det_spd(s.bottomRightCorner(d - split, d - split)) - log_det_spd(s));
  return std::max(v, 0.0);
}

double mutual_info_conditional(const Mat& gamma_c, int n_A, const MeasurementCM& gamma_A,
                               const MeasurementCM& gamma_B) {
  if (gamma_A.n_modes() != n_A || 2 * (gamma_A.n_modes() + gamma_B.n_modes()) != gamma_c.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "measurement dimensions do not match the conditional CM");
  }
  if (gamma_A.is_discarded() || gamma_B.is_discarded()) return 0.0;
  const Mat sigma = gamma_c + direct_sum(gamma_A.finite_part(), gamma_B.finite_part());
  if (gamma_A.is_finite() && gamma_B.is_finite()) return gaussian_mutual_information(sigma, 2 * n_A);
  const Mat w = direct_sum(gamma_A.measured_basis(), gamma_B.measured_basis());
  return gaussian_mutual_information(w.transpose() * sigma * w, static_cast<int>(gamma_A.measured_basis().cols()));
}

double mutual_info_f(const Purification& pi, const MeasurementCM& gamma_A, const MeasurementCM& gamma_B,
                     const MeasurementCM& gamma_E) {
  if (gamma_A.n_modes() != pi.n_A || gamma_B.n_modes() != pi.n_B) {
    throw Error(ErrorCode::DimensionMismatch, "Alice/Bob measurement dimensions do not match the purification");
  }
  const CovarianceMatrix gc = conditional_cm(pi, gamma_E);
  return mutual_info_conditional(gc.matrix(), pi.n_A, gamma_A, gamma_B);
}

}  // namespace gielab
