#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "curvseg/force_field.hpp"

namespace curvseg {

enum class PgmFormat { kAscii /* P2 */, kBinary /* P5 */ };

/// Decodes a P2 or P5 image with maxval <= 255. Samples of images with a
/// smaller maxval are rescaled to the 0..255 range.
IntensityGrid load_pgm(std::string_view bytes);

IntensityGrid read_pgm_file(const std::filesystem::path& path);

/// Encodes with maxval 255.
std::string write_pgm(const IntensityGrid& grid, PgmFormat format = PgmFormat::kBinary);

void write_pgm_file(const std::filesystem::path& path, const IntensityGrid& grid,
                    PgmFormat format = PgmFormat::kBinary);

}  // namespace curvseg
