#include "gielab/closed_forms.hpp"

#include "gielab/error.hpp"
#include "gielab/states.hpp"

#include <fmt/format.h>

#include <cmath>

namespace gielab {

double gie_pure_closed(const CovarianceMatrix& gamma_ab) {
  if (gamma_ab.n_modes() != 2) throw Error(ErrorCode::DimensionMismatch, "gie_pure_closed expects a two-mode CM");
  for (double nu : symplectic_eigenvalues(gamma_ab)) {
    if (std::abs(nu - 1.0) > kPurityTol) throw Error(ErrorCode::NotPure, fmt::format("state is not pure (nu = {})", nu));
  }
  return 0.5 * std::log(gamma_ab.matrix().topLeftCorner(2, 2).determinant());
}

double ghz_x_plus(double r) { return (std::exp(2 * r) + 2 * std::exp(-2 * r)) / 3; }
double ghz_x_minus(double r) { return (std::exp(-2 * r) + 2 * std::exp(2 * r)) / 3; }

GhzClosedForm gie_ghz_closed(double r) {
  if (!(r >= 0.0)) throw Error(ErrorCode::InvalidArgument, "gie_ghz_closed: r must be >= 0");
  const double xp = ghz_x_plus(r), xm = ghz_x_minus(r);
  GhzClosedForm out;
  out.nu = std::sqrt(xp * xm);
  out.a_max = out.nu;
  out.U1 = std::log(std::exp(r) * xp / std::sqrt(xm));
  const double q4 = std::pow(xm / xp, 0.25);
  out.U2 = std::log((std::exp(r) * q4 + std::exp(-r) / q4) / 2);
  out.U3 = std::log(xm / (std::exp(r) * std::sqrt(xp)));
  out.value = out.U3;
  out.r_th = 0.25 * std::acosh(31.0 / 4.0);
  return out;
}

GhzInternal ghz_internal(double Vx, double Vp, double phi, double r) {
  if (!(r >= 0.0)) throw Error(ErrorCode::InvalidArgument, "ghz_internal: r must be >= 0");
  const double xp = ghz_x_plus(r), xm = ghz_x_minus(r);
  const double nu = std::sqrt(xp * xm);
  const double tol = 1e-12 * nu;
  if (!(Vx >= 1 / nu - tol && Vx <= nu + tol && Vp >= 1 / nu - tol && Vp <= nu + tol && Vx * Vp >= 1 - 1e-12)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("ghz_internal: ({}, {}) lies outside the reachable region for nu = {}", Vx, Vp, nu));
  }
  const double v_plus = (Vx + Vp) / 2, v_minus = (Vx - Vp) / 2;
  const double q = r + std::log(std::sqrt(xm / xp)) / 2;
  GhzInternal out;
  const double a2x4 = 1 + Vx * Vp + 2 * (v_plus * std::cosh(2 * q) + v_minus * std::sinh(2 * q) * std::cos(2 * phi));
  out.a = std::sqrt(a2x4) / 2;
  const double a2 = out.a * out.a;
  const double k = (Vx * Vp - 1) / 4;
  // With u = 1 - K/a^2: g = 1 - u + sqrt(u^2 - 1/a^2) and 1 - g = (1/a^2) / (u + sqrt(u^2 - 1/a^2)),
  // so s^2 = a^2 (1 - g)(1 + g) is formed without cancelling a^2 against c1^2.
  const double u = 1 - k / a2;
  const double root = std::sqrt(std::max(0.0, u * u - 1 / a2));
  out.c1_over_a = 1 - u + root;
  out.s = std::sqrt((1 + out.c1_over_a) / (u + root));
  return out;
}

SymClassicalMi sym_classical_mi(const CovarianceMatrix& gamma_cond) {
  if (gamma_cond.n_modes() != 2) throw Error(ErrorCode::DimensionMismatch, "sym_classical_mi expects a two-mode CM");
  const StandardForm sf = standard_form(gamma_cond);
  if (std::abs(sf.a - sf.b) > 1e-8 * sf.a) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("sym_classical_mi: state is not symmetric (a = {}, b = {})", sf.a, sf.b));
  }
  const double a = sf.a, c1 = sf.c1;
  SymClassicalMi out;
  out.value = 0.5 * std::log(a * a / (a * a - c1 * c1));
  out.condition = (2 * a + 1) * (2 * a + 1) >= a * a * (a * a - c1 * c1);
  return out;
}

}  // namespace gielab
