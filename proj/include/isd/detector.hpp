#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "isd/audio.hpp"
#include "isd/spectral.hpp"

namespace isd {

// Sliding-window decision rule parameters. Defaults implement the 99-sample
// window at 16 kHz with the high band spanning bins 30..49 and thresholds
// mean > 0.5, variance > 0.2.
struct DetectorConfig {
  Eigen::Index window_len = 99;
  Eigen::Index hop = 99;
  Eigen::Index bin_lo = 30;
  Eigen::Index bin_hi = 49;
  double mean_threshold = 0.5;
  double var_threshold = 0.2;
  int required_rate_hz = 16000;
  Eigen::Index norm_block_len = 16000;
  bool whole_file_norm = false;

  Eigen::Index band_size() const { return bin_hi - bin_lo + 1; }
  void validate() const;  // throws std::invalid_argument
};

// One window that passed both thresholds. hf_slice holds |X[k]| for
// k = bin_lo..bin_hi of that window.
struct DetectionEvent {
  int64_t window_index = 0;
  int64_t start_sample = 0;
  double start_time_s = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  Eigen::VectorXd hf_slice;
};

// The threshold rule alone: strict inequalities on both statistics.
inline bool passes_thresholds(double mean, double variance,
                              const DetectorConfig& config) {
  return mean > config.mean_threshold && variance > config.var_threshold;
}

// Evaluates the high-band bins of the direct DFT for fixed (N, bin range).
// Equivalent per bin to dft() followed by magnitudes(); precomputing the
// basis keeps the per-window cost at two small matrix-vector products.
class BandDft {
 public:
  BandDft(Eigen::Index window_len, Eigen::Index bin_lo, Eigen::Index bin_hi);

  // |X[k]| for k in [bin_lo, bin_hi], given one window of samples.
  Eigen::VectorXd band_magnitudes(const Eigen::VectorXd& window) const;

  Eigen::Index window_len() const { return cos_.cols(); }

 private:
  Eigen::MatrixXd cos_;  // (band, window_len)
  Eigen::MatrixXd sin_;
};

// Offline detection over a whole buffer: peak-normalize per block of
// norm_block_len samples (whole buffer when whole_file_norm), slide windows
// at multiples of hop over the normalized stream, and emit every window
// whose band stats pass both thresholds. Throws WrongSampleRate or
// BufferTooShort.
std::vector<DetectionEvent> detect(const AudioBuffer& buffer,
                                   const DetectorConfig& config);

// Incremental detector producing exactly the events detect() yields on the
// concatenated input, independent of how the samples are chunked. Latency is
// bounded by one normalization block (unbounded in whole-file mode, which
// buffers until finish()).
class StreamDetector {
 public:
  StreamDetector(const DetectorConfig& config, int sample_rate_hz);

  void push(std::span<const double> chunk);
  void finish();

  // Events emitted so far, in stream order.
  const std::vector<DetectionEvent>& events() const { return events_; }
  std::vector<DetectionEvent> take_events();

 private:
  void emit_ready_windows();
  void normalize_pending_block(Eigen::Index count);

  DetectorConfig config_;
  BandDft band_;
  std::vector<double> normalized_;   // normalized samples not yet discarded
  int64_t normalized_base_ = 0;      // absolute index of normalized_[0]
  std::vector<double> pending_;      // raw samples awaiting a full block
  int64_t next_window_start_ = 0;
  bool finished_ = false;
  std::vector<DetectionEvent> events_;
};

// JSON-lines serialization: one object per event with fields exactly
// {window_index, start_sample, start_time_s, mean, variance, hf_slice}.
void write_events_jsonl(const std::vector<DetectionEvent>& events,
                        std::ostream& out);
std::vector<DetectionEvent> read_events_jsonl(std::istream& in);

}  // namespace isd
