#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "beamsim/analysis.hpp"
#include "beamsim/beampattern.hpp"

namespace beamsim {

/// Formats a double with 9 significant digits ('%.9g'), the fixed numeric
/// format of every CSV export.
std::string format_number(double value);

/// Grid CSV: header "angle_deg,<f1>,<f2>,..."; one row per grid angle with
/// magnitudes in dB (|H| floored at 1e-10). '\n' line endings.
void write_grid_csv(const BeamPatternGrid& grid,
                    const std::filesystem::path& path);

/// Grid JSON: geometry, steering angle, sound speed, grid axes, and the
/// complex cells as [re, im] pairs. extra_json, when non-empty, must be a
/// JSON object; its members are merged into the top-level object (callers
/// use it to embed the resolved run configuration).
void write_grid_json(const BeamPatternGrid& grid,
                     const std::filesystem::path& path,
                     std::string_view extra_json = {});

/// Slice CSV: "angle_deg,magnitude_linear".
void write_polar_csv(const PolarSlice& slice, const std::filesystem::path& path);

/// Attenuation CSV: "frequency_hz,source_db,output_db,attenuation_db".
void write_attenuation_csv(const AttenuationSpectrum& spectrum,
                           const std::filesystem::path& path);

/// Attenuation JSON: band, estimator settings, per-bin arrays, plus the
/// optional merged extra object.
void write_attenuation_json(const AttenuationSpectrum& spectrum,
                            const std::filesystem::path& path,
                            std::string_view extra_json = {});

}  // namespace beamsim
