#pragma once

// Gaussian intrinsic entanglement: sup over Alice/Bob Gaussian measurements of
// the inf over Eve's Gaussian measurements of the conditional mutual information,
// and the swapped-order upper bound.

#include "gielab/measurement.hpp"
#include "gielab/states.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gielab {

struct GieConfig {
  int grid_points = 5;     // per axis of (phi, log V_x, log V_p)
  int refine_iters = 600;  // simplex iterations per refinement run
  double tol = 1e-6;       // simplex size at which a refinement counts as converged
  double t_max = 10.0;     // log-variances are clamped to [-2 t_max, 2 t_max]
  std::uint64_t seed = 20170419;
  int top_k = 6;           // outer grid candidates refined
  int eve_random = 32;     // extra seeded Eve candidates for two purifying modes
};

/// Single-mode measurement parameters. Gaussian seeds are
/// U(phi) diag(e^log_vx, e^log_vp) U(phi)^T with log-variances clamped to
/// [-2 t_max, 2 t_max]; a pair with log_vx + log_vp < 0 is reflected across
/// log_vx + log_vp = 0 so that V_x V_p >= 1.
struct MeasurementParam {
  bool homodyne = false;  // exact x-homodyne at angle phi (phi only)
  double phi = 0;
  double log_vx = 0;
  double log_vp = 0;

  static MeasurementParam from_raw(double phi, double log_vx, double log_vp, double t_max);
  static MeasurementParam exact_homodyne(double phi) { return {true, phi, 0, 0}; }
  ModeMeasurement mode() const;
  bool at_boundary(double t_max) const;
};

/// Eve's measurement on R purifying modes, as raw optimizer coordinates.
///   R = 1: (phi, log_vx, log_vp) as in MeasurementParam
///   R = 2: 4 passive + 2 squeeze + 4 passive + (ln nu1, ln nu2);
///          Gamma_E = S diag(nu1, nu1, nu2, nu2) S^T, squeezings within
///          [-t_max/2, t_max/2] and ln nu within [0, t_max]
struct EveParam {
  int n_modes = 0;
  std::vector<double> raw;

  static int raw_size(int n_modes);
  Mat matrix(double t_max) const;
  MeasurementCM measurement(double t_max) const;
  bool at_boundary(double t_max) const;
};

struct EveResult {
  double value = 0;
  EveParam param;
  int iterations = 0;
  bool converged = true;
  double size = 0;  // final simplex size
  bool boundary_hit = false;
};

struct GieResult {
  double value = 0;          // nats
  std::string reason;        // "optimized", "pure", "ppt-separable"
  int n_purifying = 0;       // R
  MeasurementParam gamma_A_opt;  // in the standard-form frame of gamma_AB
  MeasurementParam gamma_B_opt;
  EveParam gamma_E_opt;
  int iterations = 0;        // outer simplex iterations summed over starts
  long long evaluations = 0; // f evaluations, all levels
  bool converged = true;
  double outer_size = 0;     // final outer simplex size
  double inner_size = 0;     // final inner simplex size at the reported optimum
  bool boundary_hit_A = false;
  bool boundary_hit_B = false;
  bool boundary_hit_E = false;
};

/// inf over Eve's Gaussian measurements of f for fixed Alice/Bob measurements.
/// Supports R <= 2 purifying modes.
EveResult inf_over_eve(const Purification& pi, const MeasurementCM& gamma_A, const MeasurementCM& gamma_B,
                       const GieConfig& cfg = {});

/// sup_{A,B} inf_E f. PPT-separable inputs short-circuit to 0.
GieResult gie(const CovarianceMatrix& gamma_ab, const GieConfig& cfg = {});

/// inf_E sup_{A,B} f (always >= gie up to optimizer tolerance).
GieResult upper_bound_U(const CovarianceMatrix& gamma_ab, const GieConfig& cfg = {});

}  // namespace gielab
