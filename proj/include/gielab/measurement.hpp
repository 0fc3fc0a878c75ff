#pragma once

// Gaussian measurement covariance matrices, including the homodyne and
// mode-discarding limits that have no finite CM.

#include "gielab/symplectic.hpp"

#include <span>
#include <vector>

namespace gielab {

/// Single-mode measurement description.
///   Gaussian: Gamma = U(phi) diag(e^log_vx, e^log_vp) U(phi)^T
///   Homodyne: zero variance along U(phi) e_x, infinite along U(phi) e_p
///   Drop:     infinite variance in every direction (the mode is ignored)
struct ModeMeasurement {
  enum class Kind { Gaussian, Homodyne, Drop };
  Kind kind = Kind::Gaussian;
  double phi = 0.0;
  double log_vx = 0.0;
  double log_vp = 0.0;

  static ModeMeasurement gaussian(double phi, double log_vx, double log_vp) {
    return {Kind::Gaussian, phi, log_vx, log_vp};
  }
  static ModeMeasurement heterodyne() { return {Kind::Gaussian, 0.0, 0.0, 0.0}; }
  static ModeMeasurement homodyne(double phi) { return {Kind::Homodyne, phi, 0.0, 0.0}; }
  static ModeMeasurement drop() { return {Kind::Drop, 0.0, 0.0, 0.0}; }

  /// Finite 2x2 CM; only valid for Kind::Gaussian.
  Mat2 matrix() const;
};

/// Gamma = lim_{x->inf} K + x * P_inf, where P_inf projects onto the span of the
/// infinite-variance directions. Stored as K together with an orthonormal basis W
/// of the complement (the directions that are actually measured).
class MeasurementCM {
 public:
  MeasurementCM() = default;

  /// Ordinary finite CM. Rejects non-symmetric input.
  static MeasurementCM finite(const Mat& gamma);
  static MeasurementCM heterodyne(int n_modes);
  static MeasurementCM product(std::span<const ModeMeasurement> modes);
  static MeasurementCM single(const ModeMeasurement& m) { return product(std::span(&m, 1)); }

  int n_modes() const { return static_cast<int>(k_.rows() / 2); }
  bool is_finite() const { return w_.cols() == k_.rows(); }
  /// No measured direction at all.
  bool is_discarded() const { return w_.cols() == 0; }

  const Mat& finite_part() const { return k_; }
  const Mat& measured_basis() const { return w_; }

  /// The CM itself; throws InvalidArgument for limit measurements.
  const Mat& matrix() const;

  bool is_physical(double tol = kPhysicalTol) const;

  /// Block-diagonal combination of measurements on disjoint mode sets.
  friend MeasurementCM operator+(const MeasurementCM& a, const MeasurementCM& b);

 private:
  Mat k_;
  Mat w_;
};

}  // namespace gielab
