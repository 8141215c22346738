#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "isd/audio.hpp"
#include "isd/detector.hpp"

namespace isd {

enum class FeatureKind { hf_amplitude, mfcc };

// Fixed-length real feature vector with an optional class label.
struct FeatureVector {
  Eigen::VectorXd values;
  FeatureKind kind = FeatureKind::hf_amplitude;
  std::string label;  // empty = unlabeled
};

struct MfccConfig {
  Eigen::Index context_len = 512;  // samples, centered on the event window
  Eigen::Index fft_len = 512;
  Eigen::Index n_filters = 26;     // triangular, mel-spaced over 0..rate/2
  Eigen::Index n_coeffs = 13;      // includes the 0th
  double log_floor = 1e-10;
  double pre_emphasis = 0.97;
  int rate_hz = 16000;

  void validate() const;  // throws std::invalid_argument
};

// The detector's emitted band slice, verbatim.
FeatureVector hf_amplitude(const DetectionEvent& event);

// Single-frame MFCC of the context window centered on center_sample
// (zero-padded at the signal edges): pre-emphasis, Hamming window, power
// spectrum, triangular mel filterbank, floored log, orthonormal DCT-II.
FeatureVector mfcc(const AudioBuffer& audio, int64_t center_sample,
                   const MfccConfig& config);

// Triangular mel filterbank, one filter per row, over the one-sided power
// bins 0..fft_len/2. Each filter peaks where its neighbours reach zero.
Eigen::MatrixXd mel_filterbank(const MfccConfig& config);

// Orthonormal DCT-II matrix (n_coeffs x n_filters); its transpose inverts
// the full-size transform.
Eigen::MatrixXd dct_matrix(Eigen::Index n_coeffs, Eigen::Index n_filters);

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// CSV with header f0..f{n-1},label; values printed round-trip exact.
void export_features(const std::vector<FeatureVector>& vectors,
                     const std::string& path);
std::vector<FeatureVector> import_features(const std::string& path,
                                           FeatureKind kind);

}  // namespace isd
