#pragma once

#include "oqf/ct.hpp"

#include <string>

namespace oqf {

/// Gray-level window for 16-bit output: value lo maps to 0, hi to 65535,
/// linear in between, clamped outside.
struct DisplayWindow {
  double lo = 0.0;
  double hi = 1.0;

  std::uint16_t encode(double v) const;
  double decode(std::uint16_t level) const;
};

/// Binary PGM (P5), maxval 65535, big-endian samples as the format
/// requires. The window is recorded in a comment line so read_pgm16 can
/// undo the scaling.
void write_pgm16(const ImageGrid& img, const std::string& path, const DisplayWindow& window);
/// Reads what write_pgm16 wrote. Without a window comment the levels are
/// mapped back with `fallback`.
ImageGrid read_pgm16(const std::string& path, DisplayWindow* window = nullptr,
                     const DisplayWindow& fallback = {});

/// True when the library was built against libpng.
bool png_supported();
/// 16-bit grayscale PNG with the same scaling as write_pgm16. Throws
/// InvalidArgument when PNG support is not compiled in.
void write_png16(const ImageGrid& img, const std::string& path, const DisplayWindow& window);

/// CSV: one comment line "# oqf-sinogram angles=K detectors=N t_min=.. t_max=..",
/// then one row of N comma-separated values per angle, `digits` significant
/// digits each.
void write_sinogram_csv(const Sinogram& sino, const std::string& path, int digits = 12);
Sinogram read_sinogram_csv(const std::string& path);

/// Binary: magic "OQFSINO1", uint32 angles, uint32 detectors, float64 t_min,
/// float64 t_max, then angles x detectors float64 values row-major. All
/// fields little-endian.
void write_sinogram_binary(const Sinogram& sino, const std::string& path);
Sinogram read_sinogram_binary(const std::string& path);

} // namespace oqf
