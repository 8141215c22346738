#pragma once

#include <stdexcept>
#include <string>

namespace isd {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// audio_io
struct IoFailure : Error { using Error::Error; };
struct MalformedHeader : Error { using Error::Error; };
struct UnsupportedFormat : Error { using Error::Error; };
struct AmplitudeOutOfRange : Error { using Error::Error; };

// spectral
struct LengthMismatch : Error { using Error::Error; };
struct RangeOutOfBounds : Error { using Error::Error; };

// detector
struct WrongSampleRate : Error { using Error::Error; };
struct BufferTooShort : Error { using Error::Error; };

// corpus
struct OffsetOutOfRange : Error { using Error::Error; };
struct ZeroNoiseEnergy : Error { using Error::Error; };
struct SignalZeroEnergy : Error { using Error::Error; };
struct InvalidDuration : Error { using Error::Error; };

// classify
struct NotBinary : Error { using Error::Error; };
struct EmptyClass : Error { using Error::Error; };
struct KTooLarge : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct TooFewExamples : Error { using Error::Error; };

}  // namespace isd
