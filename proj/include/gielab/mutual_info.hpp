#pragma once

// The Gaussian mutual information f between Alice's and Bob's outcomes
// conditioned on Eve's outcome.

#include "gielab/measurement.hpp"
#include "gielab/states.hpp"

namespace gielab {

/// 1/2 ln(det s_A det s_B / det s) for a finite positive-definite CCM s whose
/// first `split` rows belong to A. Throws DegenerateDistribution if s is singular.
/// The value is invariant under s -> c s.
double gaussian_mutual_information(const Mat& sigma, int split);

/// f for a conditional CM gamma_c of A (first n_A modes) and B. Homodyne and
/// discarded directions are handled as limits; a side without any measured
/// direction gives 0.
double mutual_info_conditional(const Mat& gamma_c, int n_A, const MeasurementCM& gamma_A,
                               const MeasurementCM& gamma_B);

/// f(gamma_pi, Gamma_A, Gamma_B, Gamma_E) with sigma_AB from the Schur complement.
double mutual_info_f(const Purification& pi, const MeasurementCM& gamma_A, const MeasurementCM& gamma_B,
                     const MeasurementCM& gamma_E);

}  // namespace gielab
