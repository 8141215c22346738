#include "isd/spectral.hpp"

#include <cmath>
#include <complex>

namespace isd {

ComplexSpectrum dft(const Eigen::VectorXd& frame, Eigen::Index n_points) {
  if (frame.size() != n_points)
    throw LengthMismatch("frame length " + std::to_string(frame.size()) +
                         " != n_points " + std::to_string(n_points));
  if (n_points < 1) throw LengthMismatch("n_points must be >= 1");

  const Eigen::Index n = n_points;
  // Twiddle table indexed by (n*k) mod N keeps arguments small and the
  // symmetry X[N-k] = conj(X[k]) tight for real input.
  Eigen::VectorXcd twiddle(n);
  for (Eigen::Index m = 0; m < n; ++m)
    twiddle[m] = std::polar(1.0, -2.0 * M_PI * static_cast<double>(m) / n);

  ComplexSpectrum spec;
  spec.bins.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      acc += frame[i] * twiddle[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    spec.bins[k] = acc;
  }
  return spec;
}

Eigen::VectorXd magnitudes(const ComplexSpectrum& spectrum) {
  return spectrum.bins.cwiseAbs();
}

double energy_time(const Eigen::VectorXd& frame) { return frame.squaredNorm(); }

double energy_freq(const ComplexSpectrum& spectrum) {
  if (spectrum.bins.size() == 0) return 0.0;
  return spectrum.bins.squaredNorm() / static_cast<double>(spectrum.bins.size());
}

SpectralStats spectral_stats(const Eigen::VectorXd& mags, Eigen::Index bin_lo,
                             Eigen::Index bin_hi) {
  if (bin_lo < 0 || bin_hi < bin_lo || bin_hi >= mags.size())
    throw RangeOutOfBounds("bin range [" + std::to_string(bin_lo) + ", " +
                           std::to_string(bin_hi) + "] invalid for " +
                           std::to_string(mags.size()) + " magnitudes");

  const auto seg = mags.segment(bin_lo, bin_hi - bin_lo + 1);
  SpectralStats stats;
  stats.bin_lo = bin_lo;
  stats.bin_hi = bin_hi;
  stats.mean = seg.mean();
  const double mean_sq = seg.array().square().mean();
  stats.variance = std::max(0.0, mean_sq - stats.mean * stats.mean);
  return stats;
}

}  // namespace isd
