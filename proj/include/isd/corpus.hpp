#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isd/audio.hpp"

namespace isd {

// Mixing recipe: impulse added into noise at an offset (fixed, or drawn from
// seed when absent), scaled by gain.
struct EmbedSpec {
  AudioBuffer impulse;
  AudioBuffer noise;
  std::optional<int64_t> offset;
  double gain = 1.0;
  uint64_t seed = 0;
};

// Energy ratio at the embedding point: signal and noise energies taken over
// the same span, snr_db = 10*log10(signal_energy / noise_energy).
struct SnrReport {
  double snr_db = 0.0;
  double signal_energy = 0.0;
  double noise_energy = 0.0;
  int64_t offset = 0;
  int64_t span = 0;
};

// Adds gain*impulse into noise at the offset and reports the SNR over the
// impulse span. The mixture is not re-normalized and may exceed |1|.
// Throws OffsetOutOfRange, ZeroNoiseEnergy or SignalZeroEnergy.
std::pair<AudioBuffer, SnrReport> embed(const EmbedSpec& spec);

// SNR of signal[0..span) against noise[offset..offset+span).
SnrReport snr_at(const AudioBuffer& signal, const AudioBuffer& noise,
                 int64_t offset, int64_t span);

// Solves the gain that makes embed() hit target_snr_db, via the gain law
// snr(g) = snr(1) + 20*log10(g).
double gain_for_target_snr(const EmbedSpec& spec, double target_snr_db);

struct ImpulseParams {
  double duration_s = 0.006;  // 3..7 ms
  double decay_s = 0.002;
  double hf_emphasis = 0.95;  // resonance radius in [0, 1)
  uint64_t seed = 0;
  int rate_hz = 16000;
};

struct TonalImpulseParams {
  double duration_s = 0.006;
  double decay_s = 0.002;
  double tone_hz = 5200.0;
  uint64_t seed = 0;  // sets the starting phase
  int rate_hz = 16000;
};

enum class NoiseKind { white, lowpass, babble_like };

struct NoiseParams {
  NoiseKind kind = NoiseKind::white;
  double duration_s = 1.0;
  uint64_t seed = 0;
  int rate_hz = 16000;
};

// Damped broadband burst: seeded white noise, pre-emphasized twice, pushed
// through a high-frequency resonance of radius hf_emphasis, shaped by an
// exponential decay and peak-normalized. Default parameters trigger the
// detector when placed in silence.
AudioBuffer synth_impulse(const ImpulseParams& params);

// Exponentially damped sinusoid with a seeded phase; the confuser class for
// recognition experiments.
AudioBuffer synth_tonal_impulse(const TonalImpulseParams& params);

// Seeded noise, peak-normalized. lowpass runs white noise through a one-pole
// smoother; babble_like sums amplitude-modulated low/mid band noises.
AudioBuffer synth_noise(const NoiseParams& params);

std::string to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string& name);

// One corpus trial, serialized as a JSON line:
// {mixture_path, impulse_params, noise_params, offset, gain, snr_db, label}.
struct CorpusTrial {
  std::string mixture_path;
  std::map<std::string, double> impulse_params;
  std::map<std::string, double> noise_params;
  int64_t offset = 0;
  double gain = 1.0;
  double snr_db = 0.0;
  std::string label;
};

void write_corpus_manifest(const std::vector<CorpusTrial>& trials,
                           std::ostream& out);
std::vector<CorpusTrial> read_corpus_manifest(std::istream& in);

}  // namespace isd
