#pragma once

#include <string>

#include "sceneest/depth_image.hpp"

namespace sceneest {

// 16-bit binary PGM, depths quantized to millimeters (clamped to 65535);
// empty pixels map to 0.
void write_depth_pgm16(const std::string& path, const DepthImage& depth);

}  // namespace sceneest
