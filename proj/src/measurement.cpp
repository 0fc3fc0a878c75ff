#include "gielab/measurement.hpp"

#include "gielab/error.hpp"

#include <cmath>

namespace gielab {

Mat2 ModeMeasurement::matrix() const {
  if (kind != Kind::Gaussian) throw Error(ErrorCode::InvalidArgument, "limit measurement has no finite CM");
  const Mat2 u = rotation(phi);
  return u * Eigen::Vector2d(std::exp(log_vx), std::exp(log_vp)).asDiagonal() * u.transpose();
}

MeasurementCM MeasurementCM::finite(const Mat& gamma) {
  if (gamma.rows() != gamma.cols() || gamma.rows() % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch, "measurement CM must be 2k x 2k");
  }
  const CovarianceMatrix checked(gamma);
  MeasurementCM m;
  m.k_ = checked.matrix();
  m.w_ = Mat::Identity(gamma.rows(), gamma.rows());
  return m;
}

MeasurementCM MeasurementCM::heterodyne(int n_modes) {
  return finite(Mat::Identity(2 * n_modes, 2 * n_modes));
}

MeasurementCM MeasurementCM::product(std::span<const ModeMeasurement> modes) {
  const int n = static_cast<int>(modes.size());
  MeasurementCM m;
  m.k_ = Mat::Zero(2 * n, 2 * n);
  std::vector<Eigen::VectorXd> cols;
  for (int j = 0; j < n; ++j) {
    const auto& mm = modes[j];
    switch (mm.kind) {
      case ModeMeasurement::Kind::Gaussian:
        m.k_.block<2, 2>(2 * j, 2 * j) = mm.matrix();
        for (int c = 0; c < 2; ++c) {
          Eigen::VectorXd e = Eigen::VectorXd::Zero(2 * n);
          e(2 * j + c) = 1.0;
          cols.push_back(e);
        }
        break;
      case ModeMeasurement::Kind::Homodyne: {
        // K is zero on the measured direction; its value along e_p never enters.
        Eigen::VectorXd e = Eigen::VectorXd::Zero(2 * n);
        e.segment<2>(2 * j) = rotation(mm.phi).col(0);
        cols.push_back(e);
        break;
      }
      case ModeMeasurement::Kind::Drop:
        break;
    }
  }
  m.w_ = Mat(2 * n, static_cast<int>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) m.w_.col(static_cast<int>(c)) = cols[c];
  return m;
}

const Mat& MeasurementCM::matrix() const {
  if (!is_finite()) throw Error(ErrorCode::InvalidArgument, "measurement is a homodyne/discard limit");
  return k_;
}

bool MeasurementCM::is_physical(double tol) const {
  if (!is_finite()) return true;  // limits of physical CMs by construction
  return CovarianceMatrix(k_).is_physical(tol);
}

MeasurementCM operator+(const MeasurementCM& a, const MeasurementCM& b) {
  MeasurementCM m;
  m.k_ = direct_sum(a.k_, b.k_);
  m.w_ = Mat::Zero(m.k_.rows(), a.w_.cols() + b.w_.cols());
  m.w_.topLeftCorner(a.w_.rows(), a.w_.cols()) = a.w_;
  m.w_.bottomRightCorner(b.w_.rows(), b.w_.cols()) = b.w_;
  return m;
}

}  // namespace gielab
