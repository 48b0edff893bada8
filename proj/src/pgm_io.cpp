#include "sceneest/pgm_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace sceneest {

void write_depth_pgm16(const std::string& path, const DepthImage& depth) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "P5\n" << depth.width << ' ' << depth.height << "\n65535\n";
  for (double d : depth.depth) {
    std::uint16_t mm = 0;
    if (DepthImage::is_valid(d)) {
      mm = static_cast<std::uint16_t>(
          std::clamp(std::lround(d * 1000.0), 0L, 65535L));
    }
    // PGM stores 16-bit samples most significant byte first.
    const char bytes[2] = {static_cast<char>(mm >> 8),
                           static_cast<char>(mm & 0xff)};
    out.write(bytes, 2);
  }
}

}  // namespace sceneest
