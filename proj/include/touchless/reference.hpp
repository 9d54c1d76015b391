#pragma once

// Plain serial implementations of the parallel kernels. Tests check the
// OpenMP paths against these; the bench target times both.

#include "touchless/image.hpp"
#include "touchless/skin.hpp"

namespace touchless::serial {

Frame to_grayscale(const Frame& frame);
EdgeImage detect_edges(const Frame& gray, int threshold);
Frame downscale(const Frame& frame, double ratio);
BinaryImage downscale(const BinaryImage& image, double ratio);
SkinMask skin_membership(const Frame& rgb, const SkinRange& range);

}  // namespace touchless::serial
