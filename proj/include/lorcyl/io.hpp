/// @file include/lorcyl/io.hpp
/// @brief Plot-data writers: 17-significant-digit CSV numbers and ASCII PGM images.

#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>

namespace lorcyl {

/// printf("%.17g"), independent of the global locale.
std::string format_g17(double v);

/// Writes a P2 image with max value 255. `pixels` is row-major, first row on top.
void write_pgm(std::ostream& out, int width, int height, std::span<const std::uint8_t> pixels);

}  // namespace lorcyl
