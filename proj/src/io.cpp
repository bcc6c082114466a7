/// @file src/io.cpp

#include "lorcyl/io.hpp"

#include "lorcyl/errors.hpp"

#include <charconv>

namespace lorcyl {

std::string format_g17(double v) {
    char buf[40];
    if (v == 0.0) v = 0.0;  // print -0 as 0
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

void write_pgm(std::ostream& out, int width, int height, std::span<const std::uint8_t> pixels) {
    if (width <= 0 || height <= 0 ||
        pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw GridMismatchError("PGM pixel count does not match its dimensions");
    }
    out << "P2\n" << width << ' ' << height << "\n255\n";
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            if (c != 0) out << ' ';
            out << static_cast<int>(pixels[static_cast<std::size_t>(r) * width + c]);
        }
        out << '\n';
    }
}

}  // namespace lorcyl
