#include "isd/audio.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace isd {

namespace {

constexpr uint16_t kFormatPcm = 0x0001;
constexpr uint16_t kFormatIeeeFloat = 0x0003;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint16_t read_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t read_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

void write_u16(std::ostream& out, uint16_t v) {
  const char b[2] = {static_cast<char>(v & 0xFF), static_cast<char>(v >> 8)};
  out.write(b, 2);
}

void write_u32(std::ostream& out, uint32_t v) {
  const char b[4] = {static_cast<char>(v & 0xFF),
                     static_cast<char>((v >> 8) & 0xFF),
                     static_cast<char>((v >> 16) & 0xFF),
                     static_cast<char>((v >> 24) & 0xFF)};
  out.write(b, 4);
}

}  // namespace

AudioBuffer load_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open '" + path + "' for reading");

  uint8_t riff[12];
  if (!in.read(reinterpret_cast<char*>(riff), 12))
    throw MalformedHeader(path + ": truncated RIFF header");
  if (std::memcmp(riff, "RIFF", 4) != 0 || std::memcmp(riff + 8, "WAVE", 4) != 0)
    throw MalformedHeader(path + ": not a RIFF/WAVE file");

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  bool have_fmt = false;
  std::vector<uint8_t> data;
  bool have_data = false;

  // Walk chunks; keep fmt and data, skip the rest.
  for (;;) {
    uint8_t hdr[8];
    if (!in.read(reinterpret_cast<char*>(hdr), 8)) break;
    const uint32_t size = read_u32(hdr + 4);
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      std::vector<uint8_t> fmt(size);
      if (size < 16 || !in.read(reinterpret_cast<char*>(fmt.data()), size))
        throw MalformedHeader(path + ": bad fmt chunk");
      format = read_u16(fmt.data());
      channels = read_u16(fmt.data() + 2);
      rate = read_u32(fmt.data() + 4);
      bits = read_u16(fmt.data() + 14);
      if (format == kFormatExtensible && size >= 40)
        format = read_u16(fmt.data() + 24);  // first two bytes of SubFormat
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data.resize(size);
      if (!in.read(reinterpret_cast<char*>(data.data()), size))
        throw MalformedHeader(path + ": data chunk shorter than declared");
      have_data = true;
    } else {
      in.seekg(size + (size & 1), std::ios::cur);
    }
    if (size & 1) in.seekg(1, std::ios::cur);
    if (have_fmt && have_data) break;
  }

  if (!have_fmt || !have_data)
    throw MalformedHeader(path + ": missing fmt or data chunk");
  if (channels != 1)
    throw UnsupportedFormat(path + ": expected 1 channel, got " +
                            std::to_string(channels));
  if (rate == 0) throw MalformedHeader(path + ": zero sample rate");

  AudioBuffer buf;
  buf.sample_rate_hz = static_cast<int>(rate);

  if (format == kFormatPcm && bits == 16) {
    const size_t n = data.size() / 2;
    if (n == 0) throw MalformedHeader(path + ": empty data chunk");
    buf.samples.resize(static_cast<Eigen::Index>(n));
    for (size_t i = 0; i < n; ++i) {
      const int16_t s = static_cast<int16_t>(read_u16(data.data() + 2 * i));
      buf.samples[static_cast<Eigen::Index>(i)] = s / 32768.0;
    }
  } else if (format == kFormatIeeeFloat && bits == 32) {
    const size_t n = data.size() / 4;
    if (n == 0) throw MalformedHeader(path + ": empty data chunk");
    buf.samples.resize(static_cast<Eigen::Index>(n));
    for (size_t i = 0; i < n; ++i) {
      float f;
      std::memcpy(&f, data.data() + 4 * i, 4);
      buf.samples[static_cast<Eigen::Index>(i)] =
          std::clamp(static_cast<double>(f), -1.0, 1.0);
    }
  } else {
    throw UnsupportedFormat(path + ": only PCM16 and float32 supported (format tag " +
                            std::to_string(format) + ", " +
                            std::to_string(bits) + " bits)");
  }
  return buf;
}

void save_wav(const AudioBuffer& buffer, const std::string& path) {
  const double peak = buffer.samples.size() == 0
                          ? 0.0
                          : buffer.samples.cwiseAbs().maxCoeff();
  if (peak > 1.0)
    throw AmplitudeOutOfRange("peak amplitude " + std::to_string(peak) +
                              " exceeds 1.0; clamp before saving");

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open '" + path + "' for writing");

  const uint32_t n = static_cast<uint32_t>(buffer.samples.size());
  const uint32_t data_bytes = n * 2;

  out.write("RIFF", 4);
  write_u32(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  write_u32(out, 16);
  write_u16(out, kFormatPcm);
  write_u16(out, 1);  // mono
  write_u32(out, static_cast<uint32_t>(buffer.sample_rate_hz));
  write_u32(out, static_cast<uint32_t>(buffer.sample_rate_hz) * 2);
  write_u16(out, 2);   // block align
  write_u16(out, 16);  // bits per sample
  out.write("data", 4);
  write_u32(out, data_bytes);

  for (Eigen::Index i = 0; i < buffer.samples.size(); ++i) {
    long q = std::lround(buffer.samples[i] * 32768.0);
    q = std::clamp(q, -32768L, 32767L);
    write_u16(out, static_cast<uint16_t>(static_cast<int16_t>(q)));
  }
  if (!out) throw IoFailure("write to '" + path + "' failed");
}

AudioBuffer normalize_peak(const AudioBuffer& buffer) {
  AudioBuffer out = buffer;
  if (out.samples.size() == 0) return out;
  const double peak = out.samples.cwiseAbs().maxCoeff();
  if (peak > 0.0) out.samples /= peak;
  return out;
}

}  // namespace isd
