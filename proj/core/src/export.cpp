#include "beamsim/export.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "beamsim/angles.hpp"
#include "beamsim/errors.hpp"

namespace beamsim {

namespace {

using nlohmann::json;

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file.good()) {
    throw IoError("write failure on " + path.string());
  }
}

json geometry_json(const ArrayGeometry& geometry) {
  json j;
  j["kind"] = geometry.kind() == ArrayKind::UniformLinear ? "linear" : "circular";
  j["mic_count"] = geometry.mic_count();
  j["spacing_m"] = geometry.spacing();
  if (geometry.kind() == ArrayKind::UniformCircular) {
    j["radius_m"] = geometry.radius();
  }
  return j;
}

void merge_extra(json& j, std::string_view extra_json) {
  if (!extra_json.empty()) {
    j.update(json::parse(extra_json));
  }
}

void dump(const json& j, const std::filesystem::path& path) {
  write_text(path, j.dump(2) + "\n");
}

}  // namespace

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

void write_grid_csv(const BeamPatternGrid& grid,
                    const std::filesystem::path& path) {
  std::string text = "angle_deg";
  for (double frequency : grid.frequencies) {
    text += ',';
    text += format_number(frequency);
  }
  text += '\n';
  for (std::size_t a = 0; a < grid.angles.size(); ++a) {
    text += format_number(degrees_from_radians(grid.angles[a]));
    for (std::size_t f = 0; f < grid.frequencies.size(); ++f) {
      text += ',';
      text += format_number(to_decibels(std::abs(grid.values[f][a])));
    }
    text += '\n';
  }
  write_text(path, text);
}

void write_grid_json(const BeamPatternGrid& grid,
                     const std::filesystem::path& path,
                     std::string_view extra_json) {
  json j;
  j["geometry"] = geometry_json(grid.geometry);
  j["sound_speed"] = grid.medium.sound_speed;
  j["steering_angle_deg"] = degrees_from_radians(grid.steering_angle);
  j["grid"] = {{"f_min_hz", grid.frequencies.front()},
               {"f_max_hz", grid.frequencies.back()},
               {"f_step_hz", grid.frequency_step},
               {"angle_step_deg", degrees_from_radians(grid.angle_step)}};
  j["frequencies_hz"] = grid.frequencies;
  json angles = json::array();
  for (double angle : grid.angles) {
    angles.push_back(degrees_from_radians(angle));
  }
  j["angles_deg"] = std::move(angles);
  json rows = json::array();
  for (const auto& row : grid.values) {
    json cells = json::array();
    for (const auto& value : row) {
      cells.push_back({value.real(), value.imag()});
    }
    rows.push_back(std::move(cells));
  }
  j["values"] = std::move(rows);
  merge_extra(j, extra_json);
  dump(j, path);
}

void write_polar_csv(const PolarSlice& slice, const std::filesystem::path& path) {
  std::string text = "angle_deg,magnitude_linear\n";
  for (std::size_t i = 0; i < slice.angles.size(); ++i) {
    text += format_number(degrees_from_radians(slice.angles[i]));
    text += ',';
    text += format_number(slice.magnitudes[i]);
    text += '\n';
  }
  write_text(path, text);
}

void write_attenuation_csv(const AttenuationSpectrum& spectrum,
                           const std::filesystem::path& path) {
  std::string text = "frequency_hz,source_db,output_db,attenuation_db\n";
  for (std::size_t i = 0; i < spectrum.frequencies.size(); ++i) {
    text += format_number(spectrum.frequencies[i]);
    text += ',';
    text += format_number(spectrum.source_db[i]);
    text += ',';
    text += format_number(spectrum.output_db[i]);
    text += ',';
    text += format_number(spectrum.attenuation_db[i]);
    text += '\n';
  }
  write_text(path, text);
}

void write_attenuation_json(const AttenuationSpectrum& spectrum,
                            const std::filesystem::path& path,
                            std::string_view extra_json) {
  json j;
  j["band_hz"] = {spectrum.band_low, spectrum.band_high};
  j["estimator"] = {{"type", "averaged_periodogram"},
                    {"window", "hann"},
                    {"overlap", 0.5},
                    {"segment_length", spectrum.segment_length},
                    {"segment_count", spectrum.segment_count}};
  j["frequencies_hz"] = spectrum.frequencies;
  j["source_db"] = spectrum.source_db;
  j["output_db"] = spectrum.output_db;
  j["attenuation_db"] = spectrum.attenuation_db;
  merge_extra(j, extra_json);
  dump(j, path);
}

}  // namespace beamsim
