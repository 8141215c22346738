#include "isd/corpus.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "isd/rng.hpp"

namespace isd {

namespace {

// Center of the detector's high band; the burst resonance sits here.
constexpr double kResonanceHz = 6300.0;
constexpr double kPreEmphasis = 0.97;
constexpr double kLowpassPole = 0.99;

void check_duration(double duration_s, double lo, double hi) {
  if (!(duration_s >= lo && duration_s <= hi))
    throw InvalidDuration("duration " + std::to_string(duration_s) +
                          " s outside [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "] s");
}

void resonator(Eigen::VectorXd& x, double center_hz, double radius,
               int rate_hz) {
  const double w0 = 2.0 * M_PI * center_hz / rate_hz;
  const double c1 = 2.0 * radius * std::cos(w0);
  const double c2 = -radius * radius;
  double y1 = 0.0, y2 = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double y = x[i] + c1 * y1 + c2 * y2;
    y2 = y1;
    y1 = y;
    x[i] = y;
  }
}

void one_pole_smooth(Eigen::VectorXd& x, double pole) {
  double state = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    state = pole * state + (1.0 - pole) * x[i];
    x[i] = state;
  }
}

double segment_energy(const Eigen::VectorXd& v, int64_t offset, int64_t span) {
  return v.segment(offset, span).squaredNorm();
}

}  // namespace

SnrReport snr_at(const AudioBuffer& signal, const AudioBuffer& noise,
                 int64_t offset, int64_t span) {
  if (span <= 0 || span > signal.size())
    throw OffsetOutOfRange("span " + std::to_string(span) +
                           " invalid for signal of " +
                           std::to_string(signal.size()) + " samples");
  if (offset < 0 || offset + span > noise.size())
    throw OffsetOutOfRange("noise segment [" + std::to_string(offset) + ", " +
                           std::to_string(offset + span) + ") outside buffer of " +
                           std::to_string(noise.size()) + " samples");

  SnrReport report;
  report.offset = offset;
  report.span = span;
  report.signal_energy = segment_energy(signal.samples, 0, span);
  report.noise_energy = segment_energy(noise.samples, offset, span);
  if (report.noise_energy == 0.0)
    throw ZeroNoiseEnergy("noise segment has zero energy; SNR undefined");
  if (report.signal_energy == 0.0)
    throw SignalZeroEnergy("signal has zero energy; SNR undefined");
  report.snr_db = 10.0 * std::log10(report.signal_energy / report.noise_energy);
  return report;
}

std::pair<AudioBuffer, SnrReport> embed(const EmbedSpec& spec) {
  if (spec.gain <= 0.0) throw std::invalid_argument("gain must be positive");
  const int64_t ilen = spec.impulse.size();
  const int64_t nlen = spec.noise.size();
  if (ilen == 0 || ilen > nlen)
    throw OffsetOutOfRange("impulse (" + std::to_string(ilen) +
                           " samples) does not fit into noise (" +
                           std::to_string(nlen) + ")");

  int64_t offset;
  if (spec.offset) {
    offset = *spec.offset;
    if (offset < 0 || offset + ilen > nlen)
      throw OffsetOutOfRange("offset " + std::to_string(offset) +
                             " leaves no room for " + std::to_string(ilen) +
                             " impulse samples in " + std::to_string(nlen));
  } else {
    Rng rng(spec.seed);
    offset = static_cast<int64_t>(
        rng.uniform_int(static_cast<uint64_t>(nlen - ilen + 1)));
  }

  AudioBuffer scaled = spec.impulse;
  scaled.samples *= spec.gain;
  SnrReport report = snr_at(scaled, spec.noise, offset, ilen);

  AudioBuffer mixture = spec.noise;
  mixture.samples.segment(offset, ilen) += scaled.samples;
  return {std::move(mixture), report};
}

double gain_for_target_snr(const EmbedSpec& spec, double target_snr_db) {
  EmbedSpec unit = spec;
  unit.gain = 1.0;
  // Resolve a seeded offset once so the reference SNR uses the same segment.
  if (!unit.offset) {
    Rng rng(unit.seed);
    unit.offset = static_cast<int64_t>(rng.uniform_int(
        static_cast<uint64_t>(unit.noise.size() - unit.impulse.size() + 1)));
  }
  const SnrReport at_unit = snr_at(unit.impulse, unit.noise, *unit.offset,
                                   unit.impulse.size());
  return std::pow(10.0, (target_snr_db - at_unit.snr_db) / 20.0);
}

AudioBuffer synth_impulse(const ImpulseParams& params) {
  check_duration(params.duration_s, 0.003, 0.007);
  if (params.decay_s <= 0.0)
    throw std::invalid_argument("decay_s must be positive");
  if (params.hf_emphasis < 0.0 || params.hf_emphasis >= 1.0)
    throw std::invalid_argument("hf_emphasis must be in [0, 1)");

  const auto n =
      static_cast<Eigen::Index>(std::lround(params.duration_s * params.rate_hz));
  Rng rng(params.seed);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.uniform_pm1();

  for (int pass = 0; pass < 2; ++pass) {
    double prev = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double cur = x[i];
      x[i] = cur - kPreEmphasis * prev;
      prev = cur;
    }
  }
  resonator(x, kResonanceHz, params.hf_emphasis, params.rate_hz);

  const double tau = params.decay_s * params.rate_hz;
  for (Eigen::Index i = 0; i < n; ++i)
    x[i] *= std::exp(-static_cast<double>(i) / tau);

  AudioBuffer out{std::move(x), params.rate_hz};
  return normalize_peak(out);
}

AudioBuffer synth_tonal_impulse(const TonalImpulseParams& params) {
  check_duration(params.duration_s, 0.003, 0.007);
  if (params.decay_s <= 0.0)
    throw std::invalid_argument("decay_s must be positive");

  const auto n =
      static_cast<Eigen::Index>(std::lround(params.duration_s * params.rate_hz));
  Rng rng(params.seed);
  const double phase = 2.0 * M_PI * rng.uniform();
  const double w = 2.0 * M_PI * params.tone_hz / params.rate_hz;
  const double tau = params.decay_s * params.rate_hz;

  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i)
    x[i] = std::sin(w * static_cast<double>(i) + phase) *
           std::exp(-static_cast<double>(i) / tau);

  AudioBuffer out{std::move(x), params.rate_hz};
  return normalize_peak(out);
}

AudioBuffer synth_noise(const NoiseParams& params) {
  if (params.duration_s <= 0.0)
    throw InvalidDuration("noise duration must be positive");
  const auto n =
      static_cast<Eigen::Index>(std::lround(params.duration_s * params.rate_hz));
  if (n < 1) throw InvalidDuration("noise duration rounds to zero samples");

  Rng rng(params.seed);
  Eigen::VectorXd x(n);

  switch (params.kind) {
    case NoiseKind::white:
      for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.uniform_pm1();
      break;
    case NoiseKind::lowpass:
      for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.uniform_pm1();
      one_pole_smooth(x, kLowpassPole);
      break;
    case NoiseKind::babble_like: {
      x.setZero();
      const double centers[] = {400.0, 800.0, 1600.0, 2600.0};
      for (double center : centers) {
        Eigen::VectorXd band(n);
        for (Eigen::Index i = 0; i < n; ++i) band[i] = rng.uniform_pm1();
        resonator(band, center, 0.95, params.rate_hz);
        // Slow envelope gives the band a syllable-like amplitude contour.
        Eigen::VectorXd env(n);
        for (Eigen::Index i = 0; i < n; ++i) env[i] = rng.uniform_pm1();
        one_pole_smooth(env, 0.999);
        const double env_peak = env.cwiseAbs().maxCoeff();
        if (env_peak > 0.0) env /= env_peak;
        x += band.cwiseProduct(env.cwiseAbs());
      }
      break;
    }
  }

  AudioBuffer out{std::move(x), params.rate_hz};
  return normalize_peak(out);
}

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::white: return "white";
    case NoiseKind::lowpass: return "lowpass";
    case NoiseKind::babble_like: return "babble_like";
  }
  return "unknown";
}

NoiseKind noise_kind_from_string(const std::string& name) {
  if (name == "white") return NoiseKind::white;
  if (name == "lowpass") return NoiseKind::lowpass;
  if (name == "babble_like" || name == "babble") return NoiseKind::babble_like;
  throw std::invalid_argument("unknown noise kind '" + name + "'");
}

void write_corpus_manifest(const std::vector<CorpusTrial>& trials,
                           std::ostream& out) {
  for (const auto& t : trials) {
    nlohmann::ordered_json j;
    j["mixture_path"] = t.mixture_path;
    j["impulse_params"] = t.impulse_params;
    j["noise_params"] = t.noise_params;
    j["offset"] = t.offset;
    j["gain"] = t.gain;
    j["snr_db"] = t.snr_db;
    j["label"] = t.label;
    out << j.dump() << '\n';
  }
}

std::vector<CorpusTrial> read_corpus_manifest(std::istream& in) {
  std::vector<CorpusTrial> trials;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    CorpusTrial t;
    t.mixture_path = j.at("mixture_path").get<std::string>();
    t.impulse_params =
        j.at("impulse_params").get<std::map<std::string, double>>();
    t.noise_params = j.at("noise_params").get<std::map<std::string, double>>();
    t.offset = j.at("offset").get<int64_t>();
    t.gain = j.at("gain").get<double>();
    t.snr_db = j.at("snr_db").get<double>();
    t.label = j.at("label").get<std::string>();
    trials.push_back(std::move(t));
  }
  return trials;
}

}  // namespace isd
