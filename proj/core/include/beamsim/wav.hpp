#pragma once

#include <filesystem>
#include <vector>

#include "beamsim/signal.hpp"

namespace beamsim {

enum class WavEncoding { Pcm16, Float32 };

/// Decoded WAV content: one vector per channel, samples in [-1, 1] for
/// PCM, as stored for float.
struct WavData {
  std::vector<std::vector<double>> channels;
  double sample_rate = 0.0;
};

/// Reads a little-endian RIFF/WAVE file holding 16-bit PCM or 32-bit float
/// samples. Unknown chunks are skipped; malformed, empty, or unsupported
/// content raises FormatError, filesystem failures IoError.
WavData read_wav(const std::filesystem::path& path);

/// read_wav restricted to single-channel files.
MonoSignal read_mono_wav(const std::filesystem::path& path);

void write_wav(const std::filesystem::path& path,
               const std::vector<std::vector<double>>& channels,
               double sample_rate, WavEncoding encoding);

void write_mono_wav(const std::filesystem::path& path, const MonoSignal& signal,
                    WavEncoding encoding);

}  // namespace beamsim
