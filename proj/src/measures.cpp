#include "gielab/measures.hpp"

#include "gielab/closed_forms.hpp"
#include "gielab/error.hpp"
#include "gielab/optim.hpp"
#include "gielab/states.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <cmath>
#include <numbers>
#include <random>

namespace gielab {

namespace {

void require_pure_two_mode(const CovarianceMatrix& g, const char* where) {
  if (g.n_modes() != 2) throw Error(ErrorCode::DimensionMismatch, fmt::format("{} expects a two-mode CM", where));
  for (double nu : symplectic_eigenvalues(g)) {
    if (std::abs(nu - 1.0) > kPurityTol) throw Error(ErrorCode::NotPure, fmt::format("{}: state is not pure (nu = {})", where, nu));
  }
}

}  // namespace

PureStateParam PureStateParam::from_cm(const CovarianceMatrix& gamma_ab) {
  require_pure_two_mode(gamma_ab, "PureStateParam");
  const double c = std::sqrt(std::max(1.0, gamma_ab.matrix().topLeftCorner(2, 2).determinant()));
  return {0.5 * std::acosh(c)};
}

double PureStateParam::lambda() const { return std::tanh(r_tilde); }

double entropy_of_entanglement_pure(const CovarianceMatrix& gamma_ab) {
  require_pure_two_mode(gamma_ab, "entropy_of_entanglement_pure");
  // Mean photon number of the marginal thermal state: cosh^2 = n + 1, sinh^2 = n.
  const double n = std::max(0.0, (std::sqrt(gamma_ab.matrix().topLeftCorner(2, 2).determinant()) - 1) / 2);
  if (n == 0.0) return 0.0;
  return (n + 1) * std::log(n + 1) - n * std::log(n);
}

double gr2_ghz(double r) {
  if (!(r >= 0.0)) throw Error(ErrorCode::InvalidArgument, "gr2_ghz: r must be >= 0");
  const double nu = std::sqrt(ghz_x_plus(r) * ghz_x_minus(r));
  if (nu - 1 <= 1e-9) return 0.0;
  const double n2 = nu * nu;
  const double zeta = 3 * n2 * n2 + 6 * n2 - 1 - std::sqrt(std::pow(n2 - 1, 3) * (9 * n2 - 1));
  return 0.5 * std::log(zeta / (8 * n2));
}

Gr2Result gr2_numeric(const CovarianceMatrix& gamma_ab, const Gr2Config& cfg) {
  if (gamma_ab.n_modes() != 2) throw Error(ErrorCode::DimensionMismatch, "gr2_numeric expects a two-mode CM");
  if (!gamma_ab.is_physical()) throw Error(ErrorCode::InvalidCM, "gr2_numeric: CM is not physical");

  // theta = S_W^{-1} O Z^2 O^T S_W^{-T}, with S_W the Williamson symplectic of gamma. Any pure
  // two-mode CM has this form; theta = S_W^{-1} S_W^{-T} is feasible since nu >= 1.
  const auto w = williamson(gamma_ab);
  const Mat sw_inv = w.S.inverse().matrix();
  const Mat& g = gamma_ab.matrix();

  auto theta_of = [&](std::span<const double> p) {
    SymplecticParams sp{{p[0], p[1], p[2], p[3]}, {p[4], p[5]}, {0, 0, 0, 0}};
    const Mat s = sw_inv * build_symplectic(sp).matrix();
    return Mat(s * s.transpose());
  };
  auto violation = [&](const Mat& theta) {
    Eigen::SelfAdjointEigenSolver<Mat> es(g - theta, Eigen::EigenvaluesOnly);
    return std::max(0.0, -es.eigenvalues()(0));
  };
  auto objective = [&](std::span<const double> p) {
    const Mat theta = theta_of(p);
    return 0.5 * std::log(theta.topLeftCorner(2, 2).determinant()) + cfg.penalty * violation(theta);
  };

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> ang(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> sq(-1.0, 1.0);
  const double inf = std::numeric_limits<double>::infinity();
  Box box{{-inf, -inf, -inf, -inf, -5, -5}, {inf, inf, inf, inf, 5, 5}};
  NelderMeadOptions opt;
  opt.max_iters = cfg.refine_iters;
  opt.size_tol = cfg.tol;
  opt.step = {0.4, 0.4, 0.4, 0.4, 0.2, 0.2};

  Gr2Result best;
  best.value = inf;
  for (int k = 0; k < std::max(1, cfg.starts); ++k) {
    std::vector<double> x0(6, 0.0);
    if (k > 0) {
      for (int i = 0; i < 4; ++i) x0[i] = ang(rng);
      x0[4] = 0.5 * sq(rng);
      x0[5] = 0.5 * sq(rng);
    }
    auto res = nelder_mead(objective, x0, box, opt);
    // The optimum sits on the boundary of the feasible set, where a simplex tends to
    // collapse early; restarting from its own best vertex lets it continue.
    for (int k = 0; k < cfg.restarts; ++k) {
      const auto again = nelder_mead(objective, res.x, box, opt);
      const bool stuck = again.value > res.value - 1e-13;
      if (again.value < res.value) res = again;
      if (stuck) break;
    }
    if (res.value < best.value) {
      best.value = res.value;
      best.converged = res.converged;
      best.violation = violation(theta_of(res.x));
    }
  }
  best.value = std::max(0.0, best.value);
  return best;
}

double log_negativity(const CovarianceMatrix& gamma_ab) {
  if (gamma_ab.n_modes() != 2) throw Error(ErrorCode::DimensionMismatch, "log_negativity expects a two-mode CM");
  if (!gamma_ab.is_physical()) throw Error(ErrorCode::InvalidCM, "log_negativity: CM is not physical");
  // Two-mode invariants of the partial transpose: nu_-^2 = 2 det / (D + sqrt(D^2 - 4 det)),
  // D = det A + det B - 2 det C. This form avoids cancellation for small nu_-.
  const Mat& g = gamma_ab.matrix();
  const double da = g.topLeftCorner(2, 2).determinant();
  const double db = g.bottomRightCorner(2, 2).determinant();
  const double dc = g.topRightCorner(2, 2).determinant();
  const double det = g.determinant();
  const double d = da + db - 2 * dc;
  const double nu2 = 2 * det / (d + std::sqrt(std::max(0.0, d * d - 4 * det)));
  return std::max(0.0, -0.5 * std::log(nu2));
}

}  // namespace gielab
