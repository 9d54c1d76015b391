#pragma once

#include <cstdint>
#include <vector>

#include "touchless/common.hpp"

namespace touchless {

// 8-bit raster, row-major, 1 (gray) or 3 (RGB) channels.
struct Frame {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<uint8_t> pixels;
    int64_t timestamp_ms = 0;

    Frame() = default;
    Frame(int w, int h, int c, int64_t ts = 0)
        : width(w), height(h), channels(c), pixels(size_t(w) * h * c, 0), timestamp_ms(ts) {
        if (w <= 0 || h <= 0 || (c != 1 && c != 3))
            throw invariant_error("bad frame geometry");
    }

    uint8_t& at(int x, int y, int c = 0) {
        return pixels[(size_t(y) * width + x) * channels + c];
    }
    uint8_t at(int x, int y, int c = 0) const {
        return pixels[(size_t(y) * width + x) * channels + c];
    }
};

// Per-pixel binary map (values 0/1). Used for both edge images and skin masks.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> bits;

    BinaryImage() = default;
    BinaryImage(int w, int h) : width(w), height(h), bits(size_t(w) * h, 0) {}

    uint8_t& at(int x, int y) { return bits[size_t(y) * width + x]; }
    uint8_t at(int x, int y) const { return bits[size_t(y) * width + x]; }

    size_t count() const;
};

using EdgeImage = BinaryImage;
using SkinMask = BinaryImage;

// BT.601 luma, rounded. Grayscale input is passed through unchanged.
Frame to_grayscale(const Frame& frame);

// 3x3 Sobel gradients; a pixel is an edge when max(|Gx|,|Gy|) > threshold.
// Border pixels are always 0. Throws input_error for frames smaller than 3x3.
EdgeImage detect_edges(const Frame& gray, int threshold);

constexpr double kPyramidRatios[] = {1.0, 0.5, 0.25, 0.125, 0.0625};

// ratio is linear per dimension and must be one of kPyramidRatios.
// Frames are box-filter averaged per block; binary maps are OR-pooled.
// Output dimensions floor(dim * ratio) must be at least 8x8.
Frame downscale(const Frame& frame, double ratio);
BinaryImage downscale(const BinaryImage& image, double ratio);

// 3x3 binary dilation, `passes` times.
BinaryImage dilate3x3(const BinaryImage& mask, int passes);

}  // namespace touchless
