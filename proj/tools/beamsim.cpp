// beamsim: delay-and-sum beamforming experiments on uniform linear and
// circular microphone arrays. Subcommands: beampattern, polar, simulate,
// attenuation. All angle flags are degrees; internals are radians.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "beamsim/analysis.hpp"
#include "beamsim/angles.hpp"
#include "beamsim/beampattern.hpp"
#include "beamsim/errors.hpp"
#include "beamsim/export.hpp"
#include "beamsim/geometry.hpp"
#include "beamsim/signal.hpp"
#include "beamsim/simulator.hpp"
#include "beamsim/wav.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct ExperimentConfig {
  std::string geometry;  // "linear", "circular", "both"; empty = command default
  int mics = 8;
  double spacing_m = 0.06;
  double radius_m = 0.0;
  bool spacing_given = false;
  bool radius_given = false;
  double steer_deg = 90.0;
  double doa_deg = 45.0;
  double sound_speed = 343.0;
  double f_min = 300.0;
  double f_max = 4000.0;
  double f_step = 10.0;
  double angle_step_deg = 1.0;
  double sample_rate = 16000.0;
  int sinc_half_width = 64;
  double resolution_hz = 0.0;  // 0 = sample_rate / 1024
  double duration_s = 4.0;
  std::string input;
  std::string out_dir = ".";
  bool use_defaults = false;
  bool save_capture = false;
  std::vector<double> frequencies;
};

double wrap_degrees(double degrees) {
  double wrapped = std::fmod(degrees, 360.0);
  if (wrapped < 0.0) {
    wrapped += 360.0;
  }
  if (wrapped >= 360.0) {
    wrapped = 0.0;
  }
  return wrapped;
}

/// Fills in the derived quantities: whichever of spacing/radius was not
/// given is computed from d = 2*r*sin(pi/N), and angles wrap into [0, 360).
void resolve(ExperimentConfig& cfg) {
  if (cfg.spacing_given && cfg.radius_given) {
    throw beamsim::ParameterError("give either --spacing-m or --radius-m, not both");
  }
  if (cfg.radius_given) {
    if (!(cfg.radius_m > 0.0)) {
      throw beamsim::ParameterError("--radius-m must be positive");
    }
    cfg.spacing_m = 2.0 * cfg.radius_m * std::sin(beamsim::kPi / cfg.mics);
  } else {
    cfg.radius_m = beamsim::spacing_to_radius(cfg.spacing_m, cfg.mics);
  }
  cfg.steer_deg = wrap_degrees(cfg.steer_deg);
  cfg.doa_deg = wrap_degrees(cfg.doa_deg);
  if (!(cfg.sample_rate > 0.0)) {
    throw beamsim::ParameterError("--sample-rate must be positive");
  }
  if (cfg.resolution_hz == 0.0) {
    cfg.resolution_hz = cfg.sample_rate / 1024.0;
  }
}

std::vector<std::string> geometry_kinds(const ExperimentConfig& cfg,
                                        const std::string& command_default,
                                        bool allow_both) {
  const std::string choice = cfg.geometry.empty() ? command_default : cfg.geometry;
  if (choice == "linear" || choice == "circular") {
    return {choice};
  }
  if (choice == "both") {
    if (!allow_both) {
      throw beamsim::ParameterError("this command needs a single geometry");
    }
    return {"linear", "circular"};
  }
  throw beamsim::ParameterError("--geometry must be linear, circular, or both");
}

beamsim::ArrayGeometry make_geometry(const ExperimentConfig& cfg,
                                     const std::string& kind) {
  if (kind == "linear") {
    return beamsim::ArrayGeometry::linear(cfg.mics, cfg.spacing_m);
  }
  return beamsim::ArrayGeometry::circular(cfg.mics, cfg.radius_m);
}

json config_echo(const ExperimentConfig& cfg, const std::string& kind) {
  return json{{"geometry", kind},
              {"mic_count", cfg.mics},
              {"spacing_m", cfg.spacing_m},
              {"radius_m", cfg.radius_m},
              {"steer_deg", cfg.steer_deg},
              {"doa_deg", cfg.doa_deg},
              {"sound_speed", cfg.sound_speed},
              {"f_min_hz", cfg.f_min},
              {"f_max_hz", cfg.f_max},
              {"f_step_hz", cfg.f_step},
              {"angle_step_deg", cfg.angle_step_deg},
              {"sample_rate_hz", cfg.sample_rate},
              {"sinc_half_width", cfg.sinc_half_width},
              {"resolution_hz", cfg.resolution_hz},
              {"input", cfg.input},
              {"out_dir", cfg.out_dir}};
}

fs::path ensure_out_dir(const ExperimentConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw beamsim::IoError("cannot create output directory " + dir.string());
  }
  return dir;
}

beamsim::MonoSignal load_source(const ExperimentConfig& cfg) {
  if (!cfg.input.empty()) {
    beamsim::MonoSignal source = beamsim::read_mono_wav(cfg.input);
    if (source.sample_rate != cfg.sample_rate) {
      throw beamsim::FormatError(
          cfg.input + ": sample rate " + std::to_string(source.sample_rate) +
          " Hz does not match the configured " + std::to_string(cfg.sample_rate) +
          " Hz (no resampling is performed)");
    }
    return source;
  }
  if (cfg.use_defaults) {
    return beamsim::make_synthetic_speech(cfg.duration_s, cfg.sample_rate);
  }
  throw beamsim::ParameterError("need --input FILE or --defaults for the bundled source");
}

void warn_sample_rate(const ExperimentConfig& cfg) {
  if (!beamsim::sample_rate_adequate(cfg.sample_rate, cfg.f_max)) {
    std::fprintf(stderr,
                 "warning: sample rate %g Hz is below 4x the top analysis "
                 "frequency %g Hz; digital delays lose accuracy\n",
                 cfg.sample_rate, cfg.f_max);
  }
}

int cmd_beampattern(const ExperimentConfig& cfg) {
  const fs::path dir = ensure_out_dir(cfg);
  const beamsim::Medium medium{cfg.sound_speed};
  for (const std::string& kind : geometry_kinds(cfg, "both", true)) {
    const beamsim::ArrayGeometry geometry = make_geometry(cfg, kind);
    const beamsim::BeamPatternGrid grid = beamsim::compute_grid(
        geometry, beamsim::radians_from_degrees(cfg.steer_deg), cfg.f_min,
        cfg.f_max, cfg.f_step, beamsim::radians_from_degrees(cfg.angle_step_deg),
        medium);
    beamsim::write_grid_csv(grid, dir / ("beampattern_" + kind + ".csv"));
    const json extra{{"config", config_echo(cfg, kind)}};
    beamsim::write_grid_json(grid, dir / ("beampattern_" + kind + ".json"),
                             extra.dump());
    for (double frequency : grid.frequencies) {
      const beamsim::PolarSlice slice = beamsim::polar_slice(grid, frequency);
      const beamsim::LobeReport report = beamsim::find_lobes(slice, 0.0);
      std::printf("[beampattern %s] f=%s Hz lobes=%zu", kind.c_str(),
                  beamsim::format_number(frequency).c_str(),
                  report.lobes.size());
      if (!report.lobes.empty()) {
        std::printf(" top_deg=%s top_mag=%s",
                    beamsim::format_number(
                        beamsim::degrees_from_radians(report.lobes[0].angle))
                        .c_str(),
                    beamsim::format_number(report.lobes[0].magnitude).c_str());
      }
      std::printf("\n");
    }
  }
  return 0;
}

int cmd_polar(const ExperimentConfig& cfg) {
  const fs::path dir = ensure_out_dir(cfg);
  const beamsim::Medium medium{cfg.sound_speed};
  std::vector<double> frequencies =
      cfg.frequencies.empty() ? std::vector<double>{300.0, 2000.0, 4000.0}
                              : cfg.frequencies;
  std::sort(frequencies.begin(), frequencies.end());
  frequencies.erase(std::unique(frequencies.begin(), frequencies.end()),
                    frequencies.end());
  for (double frequency : frequencies) {
    if (frequency < cfg.f_min || frequency > cfg.f_max) {
      throw beamsim::RangeError("polar frequency " +
                                beamsim::format_number(frequency) +
                                " Hz outside [f_min, f_max]");
    }
  }
  for (const std::string& kind : geometry_kinds(cfg, "both", true)) {
    const beamsim::ArrayGeometry geometry = make_geometry(cfg, kind);
    for (double frequency : frequencies) {
      const beamsim::BeamPatternGrid grid = beamsim::compute_grid(
          geometry, beamsim::radians_from_degrees(cfg.steer_deg), frequency,
          frequency, cfg.f_step,
          beamsim::radians_from_degrees(cfg.angle_step_deg), medium);
      const beamsim::PolarSlice slice = beamsim::polar_slice(grid, frequency);
      const fs::path path =
          dir / ("polar_" + kind + "_" + beamsim::format_number(frequency) +
                 "hz.csv");
      beamsim::write_polar_csv(slice, path);
      const beamsim::LobeReport report = beamsim::find_lobes(slice, 0.0);
      std::printf("[polar %s] f=%s Hz lobes=%zu", kind.c_str(),
                  beamsim::format_number(frequency).c_str(), report.lobes.size());
      if (!report.lobes.empty()) {
        std::printf(" top_deg=%s",
                    beamsim::format_number(
                        beamsim::degrees_from_radians(report.lobes[0].angle))
                        .c_str());
      }
      std::printf("\n");
    }
  }
  return 0;
}

int cmd_simulate(const ExperimentConfig& cfg) {
  const fs::path dir = ensure_out_dir(cfg);
  const beamsim::Medium medium{cfg.sound_speed};
  const beamsim::InterpolatorSpec interp{
      beamsim::InterpolatorSpec::Kind::WindowedSinc, cfg.sinc_half_width,
      beamsim::InterpolatorSpec::Window::Hann};
  warn_sample_rate(cfg);
  const beamsim::MonoSignal source = load_source(cfg);
  const std::string kind = geometry_kinds(cfg, "linear", false).front();
  const beamsim::ArrayGeometry geometry = make_geometry(cfg, kind);

  const beamsim::MultichannelCapture capture = beamsim::propagate(
      source, geometry, beamsim::radians_from_degrees(cfg.doa_deg), medium,
      interp);
  const beamsim::BeamformResult result = beamsim::beamform(
      capture, beamsim::radians_from_degrees(cfg.steer_deg), medium, interp);

  const fs::path wav_path = dir / ("simulate_" + kind + ".wav");
  beamsim::write_mono_wav(wav_path, result.output, beamsim::WavEncoding::Float32);
  if (cfg.save_capture) {
    beamsim::write_wav(dir / ("capture_" + kind + ".wav"), capture.channels,
                       capture.sample_rate, beamsim::WavEncoding::Float32);
  }

  json metadata{{"latency_samples", result.latency_samples},
                {"warmup_samples", result.warmup_samples},
                {"samples", result.output.size()},
                {"output_wav", wav_path.filename().string()},
                {"config", config_echo(cfg, kind)}};
  const fs::path json_path = dir / ("simulate_" + kind + ".json");
  std::ofstream meta(json_path, std::ios::binary | std::ios::trunc);
  if (!meta) {
    throw beamsim::IoError("cannot open " + json_path.string() + " for writing");
  }
  meta << metadata.dump(2) << "\n";
  if (!meta.good()) {
    throw beamsim::IoError("write failure on " + json_path.string());
  }
  std::printf("[simulate %s] latency_samples=%lld warmup_samples=%lld\n",
              kind.c_str(), static_cast<long long>(result.latency_samples),
              static_cast<long long>(result.warmup_samples));
  return 0;
}

int cmd_attenuation(const ExperimentConfig& cfg) {
  const fs::path dir = ensure_out_dir(cfg);
  const beamsim::Medium medium{cfg.sound_speed};
  const beamsim::InterpolatorSpec interp{
      beamsim::InterpolatorSpec::Kind::WindowedSinc, cfg.sinc_half_width,
      beamsim::InterpolatorSpec::Window::Hann};
  warn_sample_rate(cfg);
  const beamsim::MonoSignal source = load_source(cfg);
  for (const std::string& kind : geometry_kinds(cfg, "both", true)) {
    const beamsim::ArrayGeometry geometry = make_geometry(cfg, kind);
    const beamsim::BeamformResult result = beamsim::end_to_end(
        source, geometry, beamsim::radians_from_degrees(cfg.doa_deg),
        beamsim::radians_from_degrees(cfg.steer_deg), medium, interp);
    const auto [aligned_source, aligned_output] = beamsim::latency_align(
        source, result.output, result.latency_samples, result.warmup_samples);
    const beamsim::AttenuationSpectrum spectrum = beamsim::attenuation_spectrum(
        aligned_source, aligned_output, cfg.f_min, cfg.f_max, cfg.resolution_hz);

    json summary;
    const double mid_low = std::max(1000.0, cfg.f_min);
    const double mid_high = std::min(4000.0, cfg.f_max);
    if (mid_low < mid_high) {
      summary["band_average_1000_4000_db"] =
          beamsim::band_average_attenuation(spectrum, mid_low, mid_high);
    }
    summary["peak_attenuation_db"] =
        beamsim::peak_attenuation(spectrum, cfg.f_min, cfg.f_max);
    const double low_low = std::max(300.0, cfg.f_min);
    const double low_high = std::min(600.0, cfg.f_max);
    if (low_low < low_high) {
      summary["low_band_300_600_db"] =
          beamsim::band_average_attenuation(spectrum, low_low, low_high);
    }
    summary["latency_samples"] = result.latency_samples;

    beamsim::write_attenuation_csv(spectrum, dir / ("attenuation_" + kind + ".csv"));
    const json extra{{"config", config_echo(cfg, kind)}, {"summary", summary}};
    beamsim::write_attenuation_json(
        spectrum, dir / ("attenuation_" + kind + ".json"), extra.dump());

    std::printf("[attenuation %s]", kind.c_str());
    if (summary.contains("band_average_1000_4000_db")) {
      std::printf(" band_avg_1000_4000_db=%.2f",
                  summary["band_average_1000_4000_db"].get<double>());
    }
    std::printf(" peak_db=%.2f", summary["peak_attenuation_db"].get<double>());
    if (summary.contains("low_band_300_600_db")) {
      std::printf(" low_band_300_600_db=%.2f",
                  summary["low_band_300_600_db"].get<double>());
    }
    std::printf("\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delay-and-sum beamforming simulator for uniform linear and "
               "circular microphone arrays"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");

  ExperimentConfig cfg;
  app.add_option("--geometry", cfg.geometry,
                 "Array geometry: linear, circular, or both (default depends "
                 "on the command)");
  app.add_option("--mics", cfg.mics, "Number of microphones")->check(CLI::Range(2, 1024));
  auto* spacing_opt =
      app.add_option("--spacing-m", cfg.spacing_m,
                     "Adjacent-microphone spacing in meters (default 0.06)");
  auto* radius_opt = app.add_option(
      "--radius-m", cfg.radius_m,
      "Circular-array radius in meters (alternative to --spacing-m)");
  app.add_option("--steer-deg", cfg.steer_deg, "Steering angle in degrees (default 90)");
  app.add_option("--doa-deg", cfg.doa_deg, "Direction of arrival in degrees (default 45)");
  app.add_option("--sound-speed", cfg.sound_speed, "Speed of sound in m/s (default 343)")
      ->check(CLI::PositiveNumber);
  app.add_option("--f-min", cfg.f_min, "Lowest analysis frequency in Hz (default 300)");
  app.add_option("--f-max", cfg.f_max, "Highest analysis frequency in Hz (default 4000)");
  app.add_option("--f-step", cfg.f_step, "Beam-pattern frequency step in Hz (default 10)");
  app.add_option("--angle-step-deg", cfg.angle_step_deg,
                 "Beam-pattern angle step in degrees (default 1)");
  app.add_option("--sample-rate", cfg.sample_rate,
                 "Simulation sample rate in Hz (default 16000)");
  app.add_option("--sinc-half-width", cfg.sinc_half_width,
                 "Fractional-delay taps per side (default 64)");
  app.add_option("--resolution-hz", cfg.resolution_hz,
                 "Attenuation-spectrum bin spacing (default sample-rate/1024)");
  app.add_option("--duration-s", cfg.duration_s,
                 "Duration of the bundled synthetic source (default 4)");
  app.add_option("--input", cfg.input, "Mono WAV input at the configured sample rate");
  app.add_option("--out-dir", cfg.out_dir, "Output directory (default .)");
  app.add_flag("--defaults", cfg.use_defaults,
               "Run the built-in experiment defaults; simulate/attenuation "
               "use the bundled synthetic speech source");
  app.add_flag("--save-capture", cfg.save_capture,
               "simulate: also write the N-channel capture WAV");
  app.add_option("--frequencies", cfg.frequencies,
                 "polar: comma-separated slice frequencies in Hz (default "
                 "300,2000,4000)")
      ->delimiter(',');

  CLI::App* sub_beampattern = app.add_subcommand(
      "beampattern", "Export the frequency x angle beam-pattern grid");
  CLI::App* sub_polar =
      app.add_subcommand("polar", "Export single-frequency polar slices");
  CLI::App* sub_simulate = app.add_subcommand(
      "simulate", "Run the time-domain capture + beamforming pipeline");
  CLI::App* sub_attenuation = app.add_subcommand(
      "attenuation", "Measure spectral attenuation through the pipeline");
  for (CLI::App* sub : {sub_beampattern, sub_polar, sub_simulate, sub_attenuation}) {
    sub->fallthrough();  // shared options may follow the subcommand name
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kExitConfig;
  }

  try {
    cfg.spacing_given = spacing_opt->count() > 0;
    cfg.radius_given = radius_opt->count() > 0;
    resolve(cfg);
    if (sub_beampattern->parsed()) {
      return cmd_beampattern(cfg);
    }
    if (sub_polar->parsed()) {
      return cmd_polar(cfg);
    }
    if (sub_simulate->parsed()) {
      return cmd_simulate(cfg);
    }
    if (sub_attenuation->parsed()) {
      return cmd_attenuation(cfg);
    }
    std::fprintf(stderr, "error: no subcommand selected\n");
    return kExitConfig;
  } catch (const beamsim::FormatError& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return kExitIo;
  } catch (const beamsim::IoError& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return kExitIo;
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return kExitConfig;
  }
}
