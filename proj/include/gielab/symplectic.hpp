#pragma once

// Symplectic linear algebra on covariance matrices.
//
// Conventions used throughout the library: quadratures are ordered
// (x1, p1, ..., xn, pn) and the covariance matrix is gamma_jk = <{dxi_j, dxi_k}>,
// so the vacuum is the identity and a physical state satisfies gamma + i*Omega >= 0.

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace gielab {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Mat2 = Eigen::Matrix2d;

inline constexpr double kSymmetryTol = 1e-8;
inline constexpr double kPhysicalTol = 1e-9;

/// Block-diagonal direct sum of [[0,1],[-1,0]] blocks, 2n x 2n.
Mat symplectic_form(int n);

/// U(phi) = [[cos, -sin], [sin, cos]].
Mat2 rotation(double phi);

Mat direct_sum(const Mat& a, const Mat& b);

/// Symmetric 2n x 2n real matrix in the vacuum-is-identity convention.
/// Construction symmetrizes; asymmetry above kSymmetryTol (relative) is rejected.
class CovarianceMatrix {
 public:
  CovarianceMatrix() = default;
  explicit CovarianceMatrix(const Mat& m);

  static CovarianceMatrix identity(int n_modes);

  int n_modes() const { return static_cast<int>(m_.rows() / 2); }
  const Mat& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  /// 2x2 block between modes i and j.
  Mat2 mode_block(int i, int j) const { return m_.block<2, 2>(2 * i, 2 * j); }

  /// Reduced CM of the listed modes, in the listed order.
  CovarianceMatrix reduced(std::span<const int> modes) const;

  bool is_physical(double tol = kPhysicalTol) const;

 private:
  Mat m_;
};

/// Real 2n x 2n matrix with S Omega S^T = Omega.
class SymplecticMatrix {
 public:
  SymplecticMatrix() = default;
  /// Checks the symplectic condition to 1e-9 relative to |S|^2.
  explicit SymplecticMatrix(const Mat& s);
  static SymplecticMatrix unchecked(const Mat& s);
  static SymplecticMatrix identity(int n_modes);

  int n_modes() const { return static_cast<int>(s_.rows() / 2); }
  const Mat& matrix() const { return s_; }

  /// S^{-1} = -Omega S^T Omega.
  SymplecticMatrix inverse() const;
  /// S gamma S^T
  Mat congruence(const Mat& gamma) const { return s_ * gamma * s_.transpose(); }

  double symplectic_residual() const;

 private:
  Mat s_;
};

struct WilliamsonDecomposition {
  SymplecticMatrix S;       // S gamma S^T = diag(nu1, nu1, ..., nun, nun)
  std::vector<double> nu;   // descending
  bool degenerate = false;  // some eigenvalues coincide within 1e-8
};

struct StandardForm {
  double a = 1, b = 1, c1 = 0, c2 = 0;
  Mat2 S_A = Mat2::Identity();
  Mat2 S_B = Mat2::Identity();

  CovarianceMatrix matrix() const;
  /// S_A (+) S_B as a 4x4 symplectic.
  SymplecticMatrix local_symplectic() const;
};

/// Descending symplectic eigenvalues, from the spectrum of -(Omega gamma)^2.
/// Throws InvalidCM when gamma is not positive definite.
std::vector<double> symplectic_eigenvalues(const Mat& gamma);
inline std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& gamma) {
  return symplectic_eigenvalues(gamma.matrix());
}

/// Symplectic diagonalization of a physical CM. Throws InvalidCM otherwise.
WilliamsonDecomposition williamson(const CovarianceMatrix& gamma);
/// Same, for any symmetric positive-definite matrix (no physicality check).
WilliamsonDecomposition williamson_pd(const Mat& gamma);

/// Moore-Penrose pseudoinverse with relative singular-value cutoff.
Mat pseudo_inverse(const Mat& m, double rel_cutoff = 1e-10);

/// M_kk - M_kc (M_cc)^+ M_ck for the index set `keep` (matrix indices, not modes).
Mat schur_complement(const Mat& m, std::span<const int> keep);

/// Lambda gamma Lambda with the p quadrature flipped on the listed modes.
CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma, std::span<const int> modes);

/// Local-symplectic reduction of a two-mode CM to (a, b, c1, c2) with c1 >= |c2|.
StandardForm standard_form(const CovarianceMatrix& gamma_ab);

/// Passive-squeeze-passive parameters for one or two modes.
///   1 mode:  left = {theta1}, squeeze = {r}, right = {theta2}
///            S = U(theta1) diag(e^-r, e^r) U(theta2)
///   2 modes: left/right = {alpha, beta, theta, delta}, squeeze = {r1, r2}
///            passive = (U(alpha) (+) U(beta)) BS(theta) (U(delta) (+) 1)
struct SymplecticParams {
  std::vector<double> left;
  std::vector<double> squeeze;
  std::vector<double> right;
};

int symplectic_param_count(int n_modes);
SymplecticParams unpack_symplectic_params(int n_modes, std::span<const double> flat);
SymplecticMatrix build_symplectic(const SymplecticParams& params);

/// Beam splitter with mixing angle theta on quadratures (x1,p1,x2,p2).
Mat beam_splitter(double theta);

/// Symmetric square root and inverse square root of an SPD matrix.
Mat spd_sqrt(const Mat& m);
Mat spd_inv_sqrt(const Mat& m);

}  // namespace gielab
