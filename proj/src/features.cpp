#include "isd/features.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "isd/spectral.hpp"

namespace isd {

void MfccConfig::validate() const {
  if (context_len < 1 || fft_len < 1)
    throw std::invalid_argument("context_len and fft_len must be >= 1");
  if (context_len > fft_len)
    throw std::invalid_argument("context_len must not exceed fft_len");
  if (n_filters < 1 || n_coeffs < 1 || n_coeffs > n_filters)
    throw std::invalid_argument("need 1 <= n_coeffs <= n_filters");
  if (log_floor <= 0.0) throw std::invalid_argument("log_floor must be positive");
  if (rate_hz <= 0) throw std::invalid_argument("rate_hz must be positive");
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

FeatureVector hf_amplitude(const DetectionEvent& event) {
  if (event.hf_slice.size() == 0)
    throw std::invalid_argument("event carries no hf_slice");
  return {event.hf_slice, FeatureKind::hf_amplitude, {}};
}

Eigen::MatrixXd mel_filterbank(const MfccConfig& config) {
  const Eigen::Index n_bins = config.fft_len / 2 + 1;
  const double mel_hi = hz_to_mel(config.rate_hz / 2.0);
  // n_filters + 2 equally spaced mel points; filter m spans points
  // m..m+2 with its peak at point m+1.
  Eigen::VectorXd edges_hz(config.n_filters + 2);
  for (Eigen::Index p = 0; p < edges_hz.size(); ++p)
    edges_hz[p] = mel_to_hz(mel_hi * static_cast<double>(p) /
                            static_cast<double>(config.n_filters + 1));

  Eigen::MatrixXd fb = Eigen::MatrixXd::Zero(config.n_filters, n_bins);
  const double bin_hz = static_cast<double>(config.rate_hz) / config.fft_len;
  for (Eigen::Index m = 0; m < config.n_filters; ++m) {
    const double lo = edges_hz[m], mid = edges_hz[m + 1], hi = edges_hz[m + 2];
    for (Eigen::Index k = 0; k < n_bins; ++k) {
      const double f = k * bin_hz;
      double w = 0.0;
      if (f > lo && f < mid)
        w = (f - lo) / (mid - lo);
      else if (f == mid)
        w = 1.0;
      else if (f > mid && f < hi)
        w = (hi - f) / (hi - mid);
      fb(m, k) = w;
    }
  }
  return fb;
}

Eigen::MatrixXd dct_matrix(Eigen::Index n_coeffs, Eigen::Index n_filters) {
  Eigen::MatrixXd d(n_coeffs, n_filters);
  const double m = static_cast<double>(n_filters);
  for (Eigen::Index i = 0; i < n_coeffs; ++i) {
    const double scale = i == 0 ? std::sqrt(1.0 / m) : std::sqrt(2.0 / m);
    for (Eigen::Index j = 0; j < n_filters; ++j)
      d(i, j) = scale * std::cos(M_PI * static_cast<double>(i) *
                                 (static_cast<double>(j) + 0.5) / m);
  }
  return d;
}

FeatureVector mfcc(const AudioBuffer& audio, int64_t center_sample,
                   const MfccConfig& config) {
  config.validate();

  // Context extraction, zero-padded outside the signal.
  const int64_t start = center_sample - config.context_len / 2;
  Eigen::VectorXd context = Eigen::VectorXd::Zero(config.context_len);
  for (Eigen::Index i = 0; i < config.context_len; ++i) {
    const int64_t src = start + i;
    if (src >= 0 && src < audio.size()) context[i] = audio.samples[src];
  }

  // Pre-emphasis then Hamming window over the context.
  Eigen::VectorXd frame = Eigen::VectorXd::Zero(config.fft_len);
  double prev = 0.0;
  for (Eigen::Index i = 0; i < config.context_len; ++i) {
    const double cur = context[i];
    frame[i] = cur - config.pre_emphasis * prev;
    prev = cur;
  }
  const Eigen::Index L = config.context_len;
  for (Eigen::Index i = 0; i < L; ++i)
    frame[i] *= 0.54 - 0.46 * std::cos(2.0 * M_PI * static_cast<double>(i) /
                                       static_cast<double>(L - 1));

  // One-sided power spectrum.
  const ComplexSpectrum spec = dft(frame, config.fft_len);
  const Eigen::Index n_bins = config.fft_len / 2 + 1;
  const Eigen::VectorXd power =
      spec.bins.head(n_bins).cwiseAbs2();

  const Eigen::VectorXd energies = mel_filterbank(config) * power;
  const Eigen::VectorXd log_energies =
      energies.cwiseMax(config.log_floor).array().log();

  FeatureVector out;
  out.kind = FeatureKind::mfcc;
  out.values = dct_matrix(config.n_coeffs, config.n_filters) * log_energies;
  return out;
}

namespace {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void export_features(const std::vector<FeatureVector>& vectors,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open '" + path + "' for writing");

  const Eigen::Index dim = vectors.empty() ? 0 : vectors.front().values.size();
  for (const auto& v : vectors)
    if (v.values.size() != dim)
      throw DimensionMismatch("feature vectors have mixed lengths");

  for (Eigen::Index i = 0; i < dim; ++i) out << 'f' << i << ',';
  out << "label\n";
  for (const auto& v : vectors) {
    for (Eigen::Index i = 0; i < dim; ++i) out << format_value(v.values[i]) << ',';
    out << v.label << '\n';
  }
  if (!out) throw IoFailure("write to '" + path + "' failed");
}

std::vector<FeatureVector> import_features(const std::string& path,
                                           FeatureKind kind) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open '" + path + "' for reading");

  std::string header;
  if (!std::getline(in, header))
    throw IoFailure(path + ": missing CSV header");

  std::vector<FeatureVector> vectors;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (cells.empty()) continue;

    FeatureVector v;
    v.kind = kind;
    v.label = cells.back();
    v.values.resize(static_cast<Eigen::Index>(cells.size()) - 1);
    for (size_t i = 0; i + 1 < cells.size(); ++i)
      v.values[static_cast<Eigen::Index>(i)] = std::stod(cells[i]);
    vectors.push_back(std::move(v));
  }
  return vectors;
}

}  // namespace isd
