#pragma once

#include <Eigen/Dense>

#include "isd/errors.hpp"

namespace isd {

// Complex spectrum X[k], k = 0..N-1, of an N-point transform.
struct ComplexSpectrum {
  Eigen::VectorXcd bins;

  Eigen::Index n_points() const { return bins.size(); }
};

// Mean and population variance of |X[k]| over an inclusive bin range.
struct SpectralStats {
  double mean = 0.0;
  double variance = 0.0;
  Eigen::Index bin_lo = 0;
  Eigen::Index bin_hi = 0;
};

// Direct discrete Fourier transform, any N >= 1:
//   X[k] = sum_n frame[n] * exp(-j*2*pi*n*k/N).
// frame.size() must equal n_points (LengthMismatch otherwise).
ComplexSpectrum dft(const Eigen::VectorXd& frame, Eigen::Index n_points);

// Elementwise modulus of the bins.
Eigen::VectorXd magnitudes(const ComplexSpectrum& spectrum);

// Time-domain energy, sum |x[n]|^2.
double energy_time(const Eigen::VectorXd& frame);

// Frequency-domain energy, (1/N) * sum |X[k]|^2. Equals energy_time of the
// originating frame (Parseval).
double energy_freq(const ComplexSpectrum& spectrum);

// Mean and population variance (E[X^2] - E[X]^2, clamped at 0) of
// mags[bin_lo..bin_hi] inclusive. Throws RangeOutOfBounds.
SpectralStats spectral_stats(const Eigen::VectorXd& mags, Eigen::Index bin_lo,
                             Eigen::Index bin_hi);

}  // namespace isd
