#include "isd/detector.hpp"

#include <cmath>
#include <ostream>
#include <istream>
#include <stdexcept>

#include <json.hpp>

namespace isd {

void DetectorConfig::validate() const {
  if (window_len < 1) throw std::invalid_argument("window_len must be >= 1");
  if (hop < 1 || hop > window_len)
    throw std::invalid_argument("hop must satisfy 0 < hop <= window_len");
  if (bin_lo < 0 || bin_lo > bin_hi || bin_hi >= window_len)
    throw std::invalid_argument("bin range must satisfy 0 <= bin_lo <= bin_hi < window_len");
  if (mean_threshold <= 0.0 || var_threshold <= 0.0)
    throw std::invalid_argument("thresholds must be positive");
  if (required_rate_hz <= 0)
    throw std::invalid_argument("required_rate_hz must be positive");
  if (norm_block_len < 1)
    throw std::invalid_argument("norm_block_len must be >= 1");
}

BandDft::BandDft(Eigen::Index window_len, Eigen::Index bin_lo,
                 Eigen::Index bin_hi) {
  const Eigen::Index band = bin_hi - bin_lo + 1;
  cos_.resize(band, window_len);
  sin_.resize(band, window_len);
  for (Eigen::Index r = 0; r < band; ++r) {
    const Eigen::Index k = bin_lo + r;
    for (Eigen::Index n = 0; n < window_len; ++n) {
      // Same twiddle indexing as dft(): argument reduced mod N.
      const Eigen::Index m = (n * k) % window_len;
      const double arg = -2.0 * M_PI * static_cast<double>(m) / window_len;
      cos_(r, n) = std::cos(arg);
      sin_(r, n) = std::sin(arg);
    }
  }
}

Eigen::VectorXd BandDft::band_magnitudes(const Eigen::VectorXd& window) const {
  const Eigen::VectorXd re = cos_ * window;
  const Eigen::VectorXd im = sin_ * window;
  return (re.array().square() + im.array().square()).sqrt();
}

namespace {

// Shared by the offline and streaming paths so both produce identical
// arithmetic for identical window contents.
void evaluate_window(const BandDft& band, const DetectorConfig& config,
                     const Eigen::VectorXd& window, int64_t start,
                     std::vector<DetectionEvent>& events) {
  const Eigen::VectorXd mags = band.band_magnitudes(window);
  const double mean = mags.mean();
  const double mean_sq = mags.array().square().mean();
  const double variance = std::max(0.0, mean_sq - mean * mean);
  if (!passes_thresholds(mean, variance, config)) return;

  DetectionEvent ev;
  ev.window_index = start / config.hop;
  ev.start_sample = start;
  ev.start_time_s = static_cast<double>(start) / config.required_rate_hz;
  ev.mean = mean;
  ev.variance = variance;
  ev.hf_slice = mags;
  events.push_back(std::move(ev));
}

void normalize_block(double* data, Eigen::Index len) {
  Eigen::Map<Eigen::VectorXd> block(data, len);
  const double peak = block.cwiseAbs().maxCoeff();
  if (peak > 0.0) block /= peak;
}

}  // namespace

std::vector<DetectionEvent> detect(const AudioBuffer& buffer,
                                   const DetectorConfig& config) {
  config.validate();
  if (buffer.sample_rate_hz != config.required_rate_hz)
    throw WrongSampleRate("buffer is " + std::to_string(buffer.sample_rate_hz) +
                          " Hz but the detector requires " +
                          std::to_string(config.required_rate_hz) + " Hz");
  if (buffer.samples.size() < config.window_len)
    throw BufferTooShort("buffer holds " + std::to_string(buffer.samples.size()) +
                         " samples, need at least " +
                         std::to_string(config.window_len));

  Eigen::VectorXd normalized = buffer.samples;
  const Eigen::Index n = normalized.size();
  const Eigen::Index block_len =
      config.whole_file_norm ? n : config.norm_block_len;
  for (Eigen::Index b = 0; b < n; b += block_len)
    normalize_block(normalized.data() + b, std::min(block_len, n - b));

  const BandDft band(config.window_len, config.bin_lo, config.bin_hi);
  std::vector<DetectionEvent> events;
  Eigen::VectorXd window(config.window_len);
  for (Eigen::Index start = 0; start + config.window_len <= n;
       start += config.hop) {
    window = normalized.segment(start, config.window_len);
    evaluate_window(band, config, window, start, events);
  }
  return events;
}

StreamDetector::StreamDetector(const DetectorConfig& config, int sample_rate_hz)
    : config_(config), band_(config.window_len, config.bin_lo, config.bin_hi) {
  config_.validate();
  if (sample_rate_hz != config_.required_rate_hz)
    throw WrongSampleRate("stream is " + std::to_string(sample_rate_hz) +
                          " Hz but the detector requires " +
                          std::to_string(config_.required_rate_hz) + " Hz");
}

void StreamDetector::normalize_pending_block(Eigen::Index count) {
  normalize_block(pending_.data(), count);
  normalized_.insert(normalized_.end(), pending_.begin(),
                     pending_.begin() + count);
  pending_.erase(pending_.begin(), pending_.begin() + count);
}

void StreamDetector::push(std::span<const double> chunk) {
  if (finished_) throw std::logic_error("push after finish");
  pending_.insert(pending_.end(), chunk.begin(), chunk.end());
  if (!config_.whole_file_norm) {
    while (static_cast<Eigen::Index>(pending_.size()) >= config_.norm_block_len)
      normalize_pending_block(config_.norm_block_len);
  }
  emit_ready_windows();
}

void StreamDetector::finish() {
  if (finished_) return;
  if (!pending_.empty())
    normalize_pending_block(static_cast<Eigen::Index>(pending_.size()));
  emit_ready_windows();
  finished_ = true;
}

void StreamDetector::emit_ready_windows() {
  const int64_t available =
      normalized_base_ + static_cast<int64_t>(normalized_.size());
  Eigen::VectorXd window(config_.window_len);
  while (next_window_start_ + config_.window_len <= available) {
    const double* src =
        normalized_.data() + (next_window_start_ - normalized_base_);
    window = Eigen::Map<const Eigen::VectorXd>(src, config_.window_len);
    evaluate_window(band_, config_, window, next_window_start_, events_);
    next_window_start_ += config_.hop;
  }
  // Samples before the next window start are never read again.
  const int64_t consumed = next_window_start_ - normalized_base_;
  if (consumed > 1 << 16) {
    normalized_.erase(normalized_.begin(), normalized_.begin() + consumed);
    normalized_base_ += consumed;
  }
}

std::vector<DetectionEvent> StreamDetector::take_events() {
  return std::move(events_);
}

void write_events_jsonl(const std::vector<DetectionEvent>& events,
                        std::ostream& out) {
  for (const auto& ev : events) {
    nlohmann::ordered_json j;
    j["window_index"] = ev.window_index;
    j["start_sample"] = ev.start_sample;
    j["start_time_s"] = ev.start_time_s;
    j["mean"] = ev.mean;
    j["variance"] = ev.variance;
    j["hf_slice"] = std::vector<double>(ev.hf_slice.begin(), ev.hf_slice.end());
    out << j.dump() << '\n';
  }
}

std::vector<DetectionEvent> read_events_jsonl(std::istream& in) {
  std::vector<DetectionEvent> events;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    DetectionEvent ev;
    ev.window_index = j.at("window_index").get<int64_t>();
    ev.start_sample = j.at("start_sample").get<int64_t>();
    ev.start_time_s = j.at("start_time_s").get<double>();
    ev.mean = j.at("mean").get<double>();
    ev.variance = j.at("variance").get<double>();
    const auto slice = j.at("hf_slice").get<std::vector<double>>();
    ev.hf_slice = Eigen::Map<const Eigen::VectorXd>(
        slice.data(), static_cast<Eigen::Index>(slice.size()));
    events.push_back(std::move(ev));
  }
  return events;
}

}  // namespace isd
