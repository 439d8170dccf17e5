#include "beamsim/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "beamsim/errors.hpp"

namespace beamsim {

namespace {

static_assert(std::endian::native == std::endian::little,
              "WAV I/O assumes a little-endian host");

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

}  // namespace

WavData read_wav(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open " + path.string());
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(file)),
                                   std::istreambuf_iterator<char>());
  if (file.bad()) {
    throw IoError("read failure on " + path.string());
  }
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw FormatError(path.string() + " is not a RIFF/WAVE file");
  }

  FmtChunk fmt;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t size = read_u32(bytes.data() + pos + 4);
    pos += 8;
    if (pos + size > bytes.size()) {
      throw FormatError(path.string() + ": truncated chunk");
    }
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) {
        throw FormatError(path.string() + ": fmt chunk too short");
      }
      fmt.format = read_u16(bytes.data() + pos);
      fmt.channels = read_u16(bytes.data() + pos + 2);
      fmt.sample_rate = read_u32(bytes.data() + pos + 4);
      fmt.block_align = read_u16(bytes.data() + pos + 12);
      fmt.bits = read_u16(bytes.data() + pos + 14);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = bytes.data() + pos;
      data_size = size;
    }
    pos += size + (size & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) {
    throw FormatError(path.string() + ": missing fmt or data chunk");
  }
  if (fmt.channels == 0 || fmt.sample_rate == 0) {
    throw FormatError(path.string() + ": invalid channel count or sample rate");
  }
  const bool pcm16 = fmt.format == kFormatPcm && fmt.bits == 16;
  const bool float32 = fmt.format == kFormatFloat && fmt.bits == 32;
  if (!pcm16 && !float32) {
    throw FormatError(path.string() + ": only 16-bit PCM and 32-bit float are supported");
  }
  const std::size_t bytes_per_sample = fmt.bits / 8u;
  const std::size_t frame_size = bytes_per_sample * fmt.channels;
  if (fmt.block_align != 0 && fmt.block_align != frame_size) {
    throw FormatError(path.string() + ": inconsistent block alignment");
  }
  if (data_size == 0) {
    throw FormatError(path.string() + ": empty data chunk");
  }
  if (data_size % frame_size != 0) {
    throw FormatError(path.string() + ": data size not a whole number of frames");
  }

  const std::size_t frames = data_size / frame_size;
  WavData wav;
  wav.sample_rate = static_cast<double>(fmt.sample_rate);
  wav.channels.assign(fmt.channels, std::vector<double>(frames));
  for (std::size_t frame = 0; frame < frames; ++frame) {
    for (std::size_t ch = 0; ch < fmt.channels; ++ch) {
      const unsigned char* p = data + (frame * fmt.channels + ch) * bytes_per_sample;
      double value;
      if (pcm16) {
        std::int16_t raw;
        std::memcpy(&raw, p, 2);
        value = static_cast<double>(raw) / 32768.0;
      } else {
        float raw;
        std::memcpy(&raw, p, 4);
        value = static_cast<double>(raw);
        if (!std::isfinite(value)) {
          throw FormatError(path.string() + ": non-finite float sample");
        }
      }
      wav.channels[ch][frame] = value;
    }
  }
  return wav;
}

MonoSignal read_mono_wav(const std::filesystem::path& path) {
  WavData wav = read_wav(path);
  if (wav.channels.size() != 1) {
    throw FormatError(path.string() + ": expected a mono file, got " +
                      std::to_string(wav.channels.size()) + " channels");
  }
  return {std::move(wav.channels.front()), wav.sample_rate};
}

namespace {

void append_u16(std::vector<unsigned char>& out, std::uint16_t value) {
  out.push_back(static_cast<unsigned char>(value & 0xFF));
  out.push_back(static_cast<unsigned char>(value >> 8));
}

void append_u32(std::vector<unsigned char>& out, std::uint32_t value) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<unsigned char>((value >> shift) & 0xFF));
  }
}

}  // namespace

void write_wav(const std::filesystem::path& path,
               const std::vector<std::vector<double>>& channels,
               double sample_rate, WavEncoding encoding) {
  if (channels.empty()) {
    throw ParameterError("need at least one channel");
  }
  const std::size_t frames = channels.front().size();
  for (const auto& channel : channels) {
    if (channel.size() != frames) {
      throw ParameterError("channels must share one length");
    }
  }
  if (!(sample_rate > 0.0)) {
    throw ParameterError("sample rate must be positive");
  }

  const std::uint16_t n_channels = static_cast<std::uint16_t>(channels.size());
  const std::uint16_t bits = encoding == WavEncoding::Pcm16 ? 16 : 32;
  const std::uint16_t frame_size = static_cast<std::uint16_t>(n_channels * bits / 8);
  const auto rate = static_cast<std::uint32_t>(std::llround(sample_rate));
  const auto data_size = static_cast<std::uint32_t>(frames * frame_size);

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  append_u32(out, 36 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  append_u32(out, 16);
  append_u16(out, encoding == WavEncoding::Pcm16 ? kFormatPcm : kFormatFloat);
  append_u16(out, n_channels);
  append_u32(out, rate);
  append_u32(out, rate * frame_size);
  append_u16(out, frame_size);
  append_u16(out, bits);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  append_u32(out, data_size);

  for (std::size_t frame = 0; frame < frames; ++frame) {
    for (std::size_t ch = 0; ch < channels.size(); ++ch) {
      const double value = channels[ch][frame];
      if (encoding == WavEncoding::Pcm16) {
        const double clamped = std::clamp(value, -1.0, 1.0);
        const auto raw = static_cast<std::int16_t>(std::lround(clamped * 32767.0));
        append_u16(out, static_cast<std::uint16_t>(raw));
      } else {
        const auto raw = static_cast<float>(value);
        std::uint32_t as_int;
        std::memcpy(&as_int, &raw, 4);
        append_u32(out, as_int);
      }
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file.good()) {
    throw IoError("write failure on " + path.string());
  }
}

void write_mono_wav(const std::filesystem::path& path, const MonoSignal& signal,
                    WavEncoding encoding) {
  write_wav(path, {signal.samples}, signal.sample_rate, encoding);
}

}  // namespace beamsim
