#pragma once

// Closed-form GIE values for pure two-mode states and for the two-mode reduction
// of the symmetric three-mode GHZ-like state, together with the auxiliary
// quantities used to derive the GHZ value.

#include "gielab/symplectic.hpp"

namespace gielab {

/// 1/2 ln det gamma_A for a pure two-mode CM. Throws NotPure otherwise.
double gie_pure_closed(const CovarianceMatrix& gamma_ab);

struct GhzClosedForm {
  double value = 0;  // ln(x_- / (e^r sqrt(x_+)))
  double U1 = 0;     // Eve homodynes p_E
  double U2 = 0;     // Eve heterodynes
  double U3 = 0;     // Eve homodynes x_E (= value)
  double r_th = 0;   // 1/4 arccosh(31/4)
  double a_max = 0;  // = nu
  double nu = 1;     // local symplectic eigenvalue sqrt(x_+ x_-)
};

/// Throws InvalidArgument for r < 0.
GhzClosedForm gie_ghz_closed(double r);

/// x_+- = (e^{+-2r} + 2 e^{-+2r}) / 3.
double ghz_x_plus(double r);
double ghz_x_minus(double r);

struct GhzInternal {
  double a = 1;          // diagonal entry of the symmetric conditional CM
  double c1_over_a = 0;  // g
  double s = 1;          // sqrt(a^2 - c1^2)
};

/// Conditional AB quantities after Eve's measurement on the GHZ purification,
/// given the variances (Vx, Vp) of the Gaussian state mode A collapses into and
/// the angle phi. (Vx, Vp) must satisfy 1/nu <= Vx, Vp <= nu and Vx Vp >= 1.
GhzInternal ghz_internal(double Vx, double Vp, double phi, double r);

struct SymClassicalMi {
  double value = 0;        // 1/2 ln(a^2 / (a^2 - c1^2))
  bool condition = false;  // (2a + 1)^2 >= a^2 (a^2 - c1^2)
};

/// Gaussian classical mutual information of a symmetric two-mode CM (a = b),
/// attained by double homodyne detection when `condition` holds.
SymClassicalMi sym_classical_mi(const CovarianceMatrix& gamma_cond);

}  // namespace gielab
