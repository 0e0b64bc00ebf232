#pragma once

#include <utility>

#include "jsr/rng.hpp"
#include "jsr/types.hpp"

namespace jsr {

// Draws a jointly sparse N x P signal matrix: k rows chosen uniformly at
// random carry +/-1 entries (equiprobable, independent per cell), all other
// rows are zero. Returns the matrix and the planted support.
std::pair<SignalMatrix, SupportSet> generate_signal_matrix(int n, int p, int k,
                                                           RngEngine& rng);

// M x N matrix with i.i.d. N(0, variance) entries. Warns on stderr when
// m >= n (non-compressive regime) but does not reject it.
MeasurementMatrix generate_measurement_matrix(int m, int n, double variance,
                                              RngEngine& rng);

// Y = Phi * S + V with V i.i.d. N(0, sigma_v^2), drawn column by column.
Eigen::MatrixXd sense(const MeasurementMatrix& phi, const SignalMatrix& s,
                      const NoiseModel& noise, RngEngine& rng);

// Element-wise sign quantizer: bit 1 for y >= 0, bit 0 for y < 0.
BitMatrix quantize(const Eigen::MatrixXd& y);

// Operating point in decibels: 10*log10(k * phi_variance / sigma_v^2).
double compute_snr(int k, double phi_variance, double sigma_v);

}  // namespace jsr
