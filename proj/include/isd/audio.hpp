#pragma once

#include <Eigen/Dense>
#include <string>

#include "isd/errors.hpp"

namespace isd {

// Mono audio signal with its sampling rate. Samples are dimensionless
// amplitudes, nominally in [-1, 1].
struct AudioBuffer {
  Eigen::VectorXd samples;
  int sample_rate_hz = 16000;

  Eigen::Index size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

// Reads a RIFF/WAVE file. Accepts mono PCM 16-bit integer and IEEE float
// 32-bit; integer samples are scaled by 1/32768. Throws UnsupportedFormat,
// MalformedHeader or IoFailure.
AudioBuffer load_wav(const std::string& path);

// Writes 16-bit PCM mono. Requires all |samples| <= 1 (AmplitudeOutOfRange
// otherwise); +1.0 maps to 32767, -1.0 to -32768.
void save_wav(const AudioBuffer& buffer, const std::string& path);

// Divides every sample by the peak magnitude so the result peaks at exactly
// 1. All-zero input is returned unchanged.
AudioBuffer normalize_peak(const AudioBuffer& buffer);

}  // namespace isd
