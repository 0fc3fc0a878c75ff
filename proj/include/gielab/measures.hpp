#pragma once

// Entanglement quantifiers used for comparison with GIE. All values in nats.

#include "gielab/symplectic.hpp"

#include <cstdint>

namespace gielab {

/// cosh(2 r_tilde) = sqrt(det gamma_A) for a pure two-mode state.
struct PureStateParam {
  double r_tilde = 0;

  /// Throws NotPure.
  static PureStateParam from_cm(const CovarianceMatrix& gamma_ab);
  double lambda() const;  // tanh r_tilde
};

/// Marginal von Neumann entropy of a pure two-mode state. Throws NotPure.
double entropy_of_entanglement_pure(const CovarianceMatrix& gamma_ab);

/// Closed-form Gaussian Renyi-2 entanglement of the GHZ reduction.
double gr2_ghz(double r);

struct Gr2Config {
  int refine_iters = 4000;
  double tol = 1e-10;
  double penalty = 1e4;  // weight on max(0, -min eig(gamma - theta))
  int starts = 12;       // deterministic starting points
  int restarts = 30;     // simplex restarts from each run's best vertex
  std::uint64_t seed = 20170419;
};

struct Gr2Result {
  double value = 0;
  bool converged = true;
  double violation = 0;  // max(0, -min eig(gamma - theta)) at the optimum
};

/// min over pure theta <= gamma of 1/2 ln det theta_A, by penalized simplex search.
Gr2Result gr2_numeric(const CovarianceMatrix& gamma_ab, const Gr2Config& cfg = {});

/// max(0, -ln nu_min) of the partially transposed CM.
double log_negativity(const CovarianceMatrix& gamma_ab);

}  // namespace gielab
