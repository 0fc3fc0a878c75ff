#include "gielab/symplectic.hpp"

#include "gielab/error.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <complex>

namespace gielab {

Mat symplectic_form(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "symplectic_form: n must be >= 1");
  Mat omega = Mat::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

Mat2 rotation(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  Mat2 u;
  u << c, -s, s, c;
  return u;
}

Mat direct_sum(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Mat spd_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  return es.operatorSqrt();
}

Mat spd_inv_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  return es.operatorInverseSqrt();
}

// ---------------------------------------------------------------- CovarianceMatrix

CovarianceMatrix::CovarianceMatrix(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw Error(ErrorCode::InvalidCM,
                fmt::format("covariance matrix must be 2n x 2n, got {}x{}", m.rows(), m.cols()));
  }
  if (!m.allFinite()) throw Error(ErrorCode::InvalidCM, "covariance matrix has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * scale) {
    throw Error(ErrorCode::InvalidCM, fmt::format("covariance matrix not symmetric (|M-M^T| = {:.3g})", asym));
  }
  m_ = 0.5 * (m + m.transpose());
}

CovarianceMatrix CovarianceMatrix::identity(int n_modes) {
  return CovarianceMatrix(Mat::Identity(2 * n_modes, 2 * n_modes));
}

CovarianceMatrix CovarianceMatrix::reduced(std::span<const int> modes) const {
  const int k = static_cast<int>(modes.size());
  Mat out(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (modes[i] < 0 || modes[i] >= n_modes() || modes[j] < 0 || modes[j] >= n_modes()) {
        throw Error(ErrorCode::InvalidArgument, "reduced: mode index out of range");
      }
      out.block<2, 2>(2 * i, 2 * j) = m_.block<2, 2>(2 * modes[i], 2 * modes[j]);
    }
  }
  return CovarianceMatrix(out);
}

bool CovarianceMatrix::is_physical(double tol) const {
  Eigen::SelfAdjointEigenSolver<Mat> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0) return false;
  const auto nu = symplectic_eigenvalues(m_);
  return nu.back() >= 1.0 - tol;
}

// ---------------------------------------------------------------- SymplecticMatrix

SymplecticMatrix::SymplecticMatrix(const Mat& s) : s_(s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, "symplectic matrix must be 2n x 2n");
  }
  const double scale = std::max(1.0, s.squaredNorm());
  if (symplectic_residual() > 1e-9 * scale) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("matrix is not symplectic (residual {:.3g})", symplectic_residual()));
  }
}

SymplecticMatrix SymplecticMatrix::unchecked(const Mat& s) {
  SymplecticMatrix out;
  out.s_ = s;
  return out;
}

SymplecticMatrix SymplecticMatrix::identity(int n_modes) {
  return unchecked(Mat::Identity(2 * n_modes, 2 * n_modes));
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  const Mat omega = symplectic_form(n_modes());
  return unchecked(-omega * s_.transpose() * omega);
}

double SymplecticMatrix::symplectic_residual() const {
  const Mat omega = symplectic_form(n_modes());
  return (s_ * omega * s_.transpose() - omega).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------- spectra

namespace {

void require_positive_definite(const Mat& gamma, const char* where) {
  if (gamma.rows() != gamma.cols() || gamma.rows() % 2 != 0 || gamma.rows() == 0) {
    throw Error(ErrorCode::InvalidCM, fmt::format("{}: matrix must be 2n x 2n", where));
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(gamma, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  if (!(lo > 0.0)) {
    throw Error(ErrorCode::InvalidCM,
                fmt::format("{}: matrix is not positive definite (min eigenvalue {:.3g})", where, lo));
  }
}

}  // namespace

std::vector<double> symplectic_eigenvalues(const Mat& gamma) {
  require_positive_definite(gamma, "symplectic_eigenvalues");
  const int n = static_cast<int>(gamma.rows() / 2);
  // -(Omega gamma)^2 is similar to A^T A with A = gamma^{1/2} Omega gamma^{1/2};
  // the latter is symmetric, so its spectrum comes out sorted and real.
  const Mat root = spd_sqrt(gamma);
  const Mat a = root * symplectic_form(n) * root;
  Eigen::SelfAdjointEigenSolver<Mat> es(a.transpose() * a, Eigen::EigenvaluesOnly);
  std::vector<double> nu(n);
  for (int k = 0; k < n; ++k) {
    const double sq = 0.5 * (es.eigenvalues()(2 * k) + es.eigenvalues()(2 * k + 1));
    nu[n - 1 - k] = std::sqrt(std::max(sq, 0.0));
  }
  return nu;
}

WilliamsonDecomposition williamson_pd(const Mat& gamma) {
  require_positive_definite(gamma, "williamson");
  const int n = static_cast<int>(gamma.rows() / 2);
  const Mat root = spd_sqrt(gamma);
  const Mat a = root * symplectic_form(n) * root;

  // i*A is Hermitian with eigenvalues +-nu_k. For an eigenvector u = (x + i y)/sqrt(2)
  // of +nu, A y = -nu x and A x = nu y, so (y, x) spans a canonical 2x2 block.
  const Eigen::MatrixXcd ia = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ia);

  Mat basis(2 * n, 2 * n);
  std::vector<double> nu(n);
  for (int k = 0; k < n; ++k) {
    // eigenvalues ascending: positive half sits at the end, largest last
    const int idx = 2 * n - 1 - k;
    nu[k] = es.eigenvalues()(idx);
    const Eigen::VectorXcd u = es.eigenvectors().col(idx) * std::sqrt(2.0);
    basis.col(2 * k) = u.imag();
    basis.col(2 * k + 1) = u.real();
  }

  Vec d_inv_sqrt(2 * n), d_sqrt(2 * n);
  for (int k = 0; k < n; ++k) {
    d_sqrt(2 * k) = d_sqrt(2 * k + 1) = std::sqrt(nu[k]);
    d_inv_sqrt(2 * k) = d_inv_sqrt(2 * k + 1) = 1.0 / std::sqrt(nu[k]);
  }
  // T = gamma^{1/2} O D^{-1/2} is symplectic and T^{-1} gamma T^{-T} = D.
  const Mat s = d_sqrt.asDiagonal() * basis.transpose() * spd_inv_sqrt(gamma);

  WilliamsonDecomposition out;
  out.S = SymplecticMatrix::unchecked(s);
  out.nu = nu;
  for (int k = 0; k + 1 < n; ++k) {
    if (std::abs(nu[k] - nu[k + 1]) < 1e-8) out.degenerate = true;
  }
  return out;
}

WilliamsonDecomposition williamson(const CovarianceMatrix& gamma) {
  auto w = williamson_pd(gamma.matrix());
  if (w.nu.back() < 1.0 - kPhysicalTol) {
    throw Error(ErrorCode::InvalidCM,
                fmt::format("williamson: non-physical CM (smallest symplectic eigenvalue {:.12g})", w.nu.back()));
  }
  return w;
}

// ---------------------------------------------------------------- Schur / pinv

Mat pseudo_inverse(const Mat& m, double rel_cutoff) {
  if (m.size() == 0) return Mat(m.cols(), m.rows());
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = rel_cutoff * (sv.size() > 0 ? sv(0) : 0.0);
  Vec inv(sv.size());
  for (int i = 0; i < sv.size(); ++i) inv(i) = (sv(i) > cutoff && sv(i) > 0.0) ? 1.0 / sv(i) : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Mat schur_complement(const Mat& m, std::span<const int> keep) {
  const int dim = static_cast<int>(m.rows());
  std::vector<bool> kept(dim, false);
  for (int k : keep) {
    if (k < 0 || k >= dim) throw Error(ErrorCode::InvalidArgument, "schur_complement: index out of range");
    kept[k] = true;
  }
  std::vector<int> rest;
  for (int i = 0; i < dim; ++i) {
    if (!kept[i]) rest.push_back(i);
  }
  const int nk = static_cast<int>(keep.size()), nc = static_cast<int>(rest.size());
  Mat kk(nk, nk), kc(nk, nc), cc(nc, nc);
  for (int i = 0; i < nk; ++i) {
    for (int j = 0; j < nk; ++j) kk(i, j) = m(keep[i], keep[j]);
    for (int j = 0; j < nc; ++j) kc(i, j) = m(keep[i], rest[j]);
  }
  for (int i = 0; i < nc; ++i) {
    for (int j = 0; j < nc; ++j) cc(i, j) = m(rest[i], rest[j]);
  }
  if (nc == 0) return kk;
  return kk - kc * pseudo_inverse(cc) * kc.transpose();
}

// ---------------------------------------------------------------- partial transpose

CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma, std::span<const int> modes) {
  const int n = gamma.n_modes();
  Vec lambda = Vec::Ones(2 * n);
  for (int k : modes) {
    if (k < 0 || k >= n) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("partial_transpose: mode {} out of range", k));
    }
    lambda(2 * k + 1) = -1.0;
  }
  return CovarianceMatrix(lambda.asDiagonal() * gamma.matrix() * lambda.asDiagonal());
}

// ---------------------------------------------------------------- standard form

CovarianceMatrix StandardForm::matrix() const {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = m(1, 1) = a;
  m(2, 2) = m(3, 3) = b;
  m(0, 2) = m(2, 0) = c1;
  m(1, 3) = m(3, 1) = c2;
  return CovarianceMatrix(m);
}

SymplecticMatrix StandardForm::local_symplectic() const {
  return SymplecticMatrix::unchecked(direct_sum(S_A, S_B));
}

StandardForm standard_form(const CovarianceMatrix& gamma_ab) {
  if (gamma_ab.n_modes() != 2) throw Error(ErrorCode::InvalidCM, "standard_form: expects a two-mode CM");
  if (!gamma_ab.is_physical()) throw Error(ErrorCode::InvalidCM, "standard_form: non-physical CM");

  const Mat2 ga = gamma_ab.mode_block(0, 0);
  const Mat2 gb = gamma_ab.mode_block(1, 1);
  const Mat2 c = gamma_ab.mode_block(0, 1);

  StandardForm sf;
  sf.a = std::sqrt(ga.determinant());
  sf.b = std::sqrt(gb.determinant());

  // sqrt(a) * gamma_A^{-1/2} has unit determinant and maps gamma_A to a*1.
  const Mat2 sa = std::sqrt(sf.a) * Mat(spd_inv_sqrt(ga));
  const Mat2 sb = std::sqrt(sf.b) * Mat(spd_inv_sqrt(gb));
  const Mat2 cc = sa * c * sb.transpose();

  Eigen::JacobiSVD<Mat2> svd(cc, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat2 u = svd.matrixU(), v = svd.matrixV();
  double s1 = svd.singularValues()(0), s2 = svd.singularValues()(1);
  // Only proper rotations are symplectic; push reflections into the sign of c2.
  if (u.determinant() < 0) {
    u.col(1) *= -1.0;
    s2 = -s2;
  }
  if (v.determinant() < 0) {
    v.col(1) *= -1.0;
    s2 = -s2;
  }
  sf.c1 = s1;
  sf.c2 = s2;
  sf.S_A = u.transpose() * sa;
  sf.S_B = v.transpose() * sb;
  return sf;
}

// ---------------------------------------------------------------- build_symplectic

Mat beam_splitter(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Mat bs = Mat::Zero(4, 4);
  bs.topLeftCorner(2, 2) = c * Mat2::Identity();
  bs.topRightCorner(2, 2) = s * Mat2::Identity();
  bs.bottomLeftCorner(2, 2) = -s * Mat2::Identity();
  bs.bottomRightCorner(2, 2) = c * Mat2::Identity();
  return bs;
}

namespace {

Mat passive_two_mode(std::span<const double> p) {
  const Mat phases = direct_sum(rotation(p[0]), rotation(p[1]));
  const Mat last = direct_sum(rotation(p[3]), Mat2::Identity());
  return phases * beam_splitter(p[2]) * last;
}

}  // namespace

int symplectic_param_count(int n_modes) {
  if (n_modes == 1) return 3;
  if (n_modes == 2) return 10;
  throw Error(ErrorCode::InvalidArgument, "build_symplectic supports one or two modes");
}

SymplecticParams unpack_symplectic_params(int n_modes, std::span<const double> flat) {
  if (static_cast<int>(flat.size()) != symplectic_param_count(n_modes)) {
    throw Error(ErrorCode::InvalidArgument, "unpack_symplectic_params: wrong parameter count");
  }
  SymplecticParams p;
  const int np = n_modes == 1 ? 1 : 4;
  p.left.assign(flat.begin(), flat.begin() + np);
  p.squeeze.assign(flat.begin() + np, flat.begin() + np + n_modes);
  p.right.assign(flat.begin() + np + n_modes, flat.end());
  return p;
}

SymplecticMatrix build_symplectic(const SymplecticParams& params) {
  const int n = static_cast<int>(params.squeeze.size());
  const std::size_t np = n == 1 ? 1 : 4;
  if ((n != 1 && n != 2) || params.left.size() != np || params.right.size() != np) {
    throw Error(ErrorCode::InvalidArgument, "build_symplectic: expects 1 or 2 modes with matching passive parameters");
  }
  Vec sq(2 * n);
  for (int k = 0; k < n; ++k) {
    sq(2 * k) = std::exp(-params.squeeze[k]);
    sq(2 * k + 1) = std::exp(params.squeeze[k]);
  }
  if (n == 1) {
    return SymplecticMatrix::unchecked(Mat(rotation(params.left[0])) * sq.asDiagonal() *
                                       Mat(rotation(params.right[0])));
  }
  return SymplecticMatrix::unchecked(passive_two_mode(params.left) * sq.asDiagonal() *
                                     passive_two_mode(params.right));
}

}  // namespace gielab
