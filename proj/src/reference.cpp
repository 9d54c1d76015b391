#include "touchless/reference.hpp"

#include <cmath>
#include <cstdlib>

namespace touchless::serial {

Frame to_grayscale(const Frame& frame) {
    if (frame.channels == 1) return frame;
    Frame out(frame.width, frame.height, 1, frame.timestamp_ms);
    const int n = frame.width * frame.height;
    for (int i = 0; i < n; ++i) {
        const uint8_t* p = &frame.pixels[size_t(i) * 3];
        double g = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
        long v = std::lround(g);
        out.pixels[i] = uint8_t(v < 0 ? 0 : (v > 255 ? 255 : v));
    }
    return out;
}

EdgeImage detect_edges(const Frame& gray, int threshold) {
    if (gray.channels != 1) throw input_error("detect_edges expects a grayscale frame");
    if (threshold <= 0) throw input_error("edge threshold must be positive");
    if (gray.width < 3 || gray.height < 3) throw input_error("frame smaller than 3x3");

    EdgeImage out(gray.width, gray.height);
    for (int y = 1; y < gray.height - 1; ++y) {
        for (int x = 1; x < gray.width - 1; ++x) {
            int gx = 0, gy = 0;
            static const int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
            static const int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    int v = gray.at(x + dx, y + dy);
                    gx += v * kx[dy + 1][dx + 1];
                    gy += v * ky[dy + 1][dx + 1];
                }
            out.at(x, y) = std::max(std::abs(gx), std::abs(gy)) > threshold ? 1 : 0;
        }
    }
    return out;
}

namespace {

int ratio_to_block(double ratio) {
    for (double r : kPyramidRatios)
        if (ratio == r) return int(std::lround(1.0 / r));
    throw input_error("unsupported downscale ratio");
}

}  // namespace

Frame downscale(const Frame& frame, double ratio) {
    const int block = ratio_to_block(ratio);
    if (block == 1) return frame;
    const int ow = frame.width / block;
    const int oh = frame.height / block;
    if (ow < 8 || oh < 8) throw input_error("downscale output too small");

    Frame out(ow, oh, frame.channels, frame.timestamp_ms);
    for (int oy = 0; oy < oh; ++oy)
        for (int ox = 0; ox < ow; ++ox)
            for (int c = 0; c < frame.channels; ++c) {
                int sum = 0;
                for (int dy = 0; dy < block; ++dy)
                    for (int dx = 0; dx < block; ++dx)
                        sum += frame.at(ox * block + dx, oy * block + dy, c);
                out.at(ox, oy, c) = uint8_t(std::lround(double(sum) / (block * block)));
            }
    return out;
}

BinaryImage downscale(const BinaryImage& image, double ratio) {
    const int block = ratio_to_block(ratio);
    if (block == 1) return image;
    const int ow = image.width / block;
    const int oh = image.height / block;
    if (ow < 8 || oh < 8) throw input_error("downscale output too small");

    BinaryImage out(ow, oh);
    for (int oy = 0; oy < oh; ++oy)
        for (int ox = 0; ox < ow; ++ox) {
            uint8_t bit = 0;
            for (int dy = 0; dy < block; ++dy)
                for (int dx = 0; dx < block; ++dx)
                    bit |= image.at(ox * block + dx, oy * block + dy);
            out.at(ox, oy) = bit ? 1 : 0;
        }
    return out;
}

SkinMask skin_membership(const Frame& rgb, const SkinRange& range) {
    if (rgb.channels != 3) throw input_error("skin detection expects an RGB frame");
    SkinMask mask(rgb.width, rgb.height);
    const int n = rgb.width * rgb.height;
    for (int i = 0; i < n; ++i) {
        const uint8_t* p = &rgb.pixels[size_t(i) * 3];
        mask.bits[i] = range.contains(rgb_to_hsv(p[0], p[1], p[2])) ? 1 : 0;
    }
    return mask;
}

}  // namespace touchless::serial
