#pragma once

// State families, minimal purifications, Gaussian conditioning, separable
// decompositions and CM-level local channels.

#include "gielab/measurement.hpp"
#include "gielab/symplectic.hpp"

#include <optional>
#include <vector>

namespace gielab {

/// Pure (n_A + n_B + n_E)-mode CM split as [[gamma_AB, gamma_ABE], [gamma_ABE^T, gamma_E]].
struct Purification {
  int n_A = 1;
  int n_B = 1;
  int n_E = 0;
  Mat gamma_AB;
  Mat gamma_ABE;  // 2(n_A+n_B) x 2 n_E
  Mat gamma_E;

  int n_AB() const { return n_A + n_B; }
  Mat full() const;
  CovarianceMatrix reduced() const { return CovarianceMatrix(gamma_AB); }
};

CovarianceMatrix tmsv_cm(double r);

struct GhzState {
  double x_plus = 1;
  double x_minus = 1;
  CovarianceMatrix full;     // three modes, pure
  CovarianceMatrix reduced;  // first two modes
};

/// alpha = diag(x+, x-), kappa = (x- - x+) sigma_z, x+- = (e^{+-2r} + 2 e^{-+2r}) / 3.
GhzState ghz_cm(double r);

/// Tolerance above 1 for a symplectic eigenvalue to need a purifying mode.
inline constexpr double kPurityTol = 1e-7;

/// gamma_E = (+) nu_i 1, gamma_ABE = S^{-1} [(+) sqrt(nu_i^2 - 1) sigma_z ; 0]
/// with S the Williamson diagonalizer of gamma_AB.
/// `n_A` modes go to A, the rest to B.
Purification minimal_purification(const CovarianceMatrix& gamma_ab, int n_A = 1);

/// gamma_AB - gamma_ABE (gamma_E + Gamma_E)^{-1} gamma_ABE^T, with homodyne and
/// discarded directions taken in the limit.
CovarianceMatrix conditional_cm(const Purification& pi, const MeasurementCM& gamma_E);

/// gamma_pi + Gamma_A (+) Gamma_B (+) Gamma_E for finite measurement CMs.
Mat outcome_ccm(const Purification& pi, const MeasurementCM& gamma_A, const MeasurementCM& gamma_B,
                const MeasurementCM& gamma_E);

/// Smallest symplectic eigenvalue of the partial transpose >= 1 - tol.
bool ppt_separable(const CovarianceMatrix& gamma_ab, double tol = kPhysicalTol);

/// gamma_AB = gamma_A^p (+) gamma_B^p + Q with pure single-mode CMs and Q >= 0.
struct SeparableDecomposition {
  Mat2 gamma_A_pure = Mat2::Identity();
  Mat2 gamma_B_pure = Mat2::Identity();
  Mat Q;
  std::vector<double> lambda;  // eigenvalues of Q kept as encoding modes
  Mat V;                       // matching unit eigenvectors as columns
  double min_eigenvalue = 0;   // of Q
};

struct SeparableSearchConfig {
  int grid_points = 9;     // per parameter, four parameters
  int refine_iters = 2000;
  double accept_tol = 1e-8;
};

/// Searches for a decomposition; std::nullopt means the search failed, which is
/// not by itself a verdict on separability.
std::optional<SeparableDecomposition> find_separable_decomposition(const CovarianceMatrix& gamma_ab,
                                                                   const SeparableSearchConfig& cfg = {});

/// Builds the pure purification in which E carries the classical displacement
/// pattern of Q, measures its E modes with x-squeezed seeds diag(e^{-2s}, e^{2s}),
/// and maps that measurement onto the minimal purification `pi`.
MeasurementCM product_projecting_measurement(const SeparableDecomposition& dec, const Purification& pi, double s);

/// The encoding purification used by product_projecting_measurement (exposed for tests).
Purification encoding_purification(const SeparableDecomposition& dec);

/// gamma_j -> X_j gamma_j X_j^T + Y_j on each side.
struct LocalChannel {
  Mat X_A = Mat::Identity(2, 2);
  Mat Y_A = Mat::Zero(2, 2);
  Mat X_B = Mat::Identity(2, 2);
  Mat Y_B = Mat::Zero(2, 2);

  /// Loss eta_j followed by classical noise of variance noise_j on both quadratures.
  static LocalChannel lossy(double eta_A, double eta_B, double noise_A = 0.0, double noise_B = 0.0);
  bool is_completely_positive(double tol = 1e-10) const;
};

CovarianceMatrix apply_local_channel(const CovarianceMatrix& gamma_ab, const LocalChannel& ch);

}  // namespace gielab
