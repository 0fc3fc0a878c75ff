#pragma once

// Structural maps on Eve's side: absorbing a classical Gaussian channel on her
// outcomes into her measurement, and mapping a measurement on an arbitrary
// purification onto the minimal one.

#include "gielab/measurement.hpp"
#include "gielab/states.hpp"

namespace gielab {

/// Classical Gaussian channel on Eve's 2K outcomes: d~ = X d + noise(Y), X is L x 2K.
struct ChannelSpec {
  Mat X;
  Mat Y;
};

/// Gamma~_E^x = Gamma_E + V [[A - C B^+ C^T, 0], [0, x 1]] V^T built from the SVD
/// X = U S V^T and the blocks of Y_{U,s} = tau^{-1} U^T Y U tau^{-1}.
/// Throws DimensionMismatch / InvalidArgument (Y not symmetric PSD).
Mat integrate_channel(const Purification& pi, const Mat& gamma_E, const ChannelSpec& ch, double x);

/// Direct channel-processed Schur complement
///   alpha - beta X^T (X delta X^T + Y)^+ X beta^T,
/// alpha = gamma_AB + Gamma_AB, beta = gamma_ABE, delta = gamma_E + Gamma_E.
Mat channel_sigma_ab(const Purification& pi, const Mat& gamma_AB_meas, const Mat& gamma_E, const ChannelSpec& ch);

/// alpha - beta (gamma_E + Gamma_E)^{-1} beta^T.
Mat sigma_ab(const Purification& pi, const Mat& gamma_AB_meas, const Mat& gamma_E);

/// Maps a finite measurement Gamma_bar on the E modes of `big` (any purification of
/// the same gamma_AB) to the equivalent measurement on `minimal`.
/// Throws PurificationMismatch when the two do not purify the same state.
MeasurementCM reduce_purification_measurement(const Purification& minimal, const Purification& big,
                                              const Mat& gamma_bar);

}  // namespace gielab
