#include "touchless/image.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace touchless {

size_t BinaryImage::count() const {
    return std::accumulate(bits.begin(), bits.end(), size_t(0));
}

Frame to_grayscale(const Frame& frame) {
    if (frame.channels == 1) return frame;
    Frame out(frame.width, frame.height, 1, frame.timestamp_ms);
    const int n = frame.width * frame.height;
#pragma omp parallel for schedule(static)
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
    const int w = gray.width;
#pragma omp parallel for schedule(static)
    for (int y = 1; y < gray.height - 1; ++y) {
        const uint8_t* r0 = &gray.pixels[size_t(y - 1) * w];
        const uint8_t* r1 = &gray.pixels[size_t(y) * w];
        const uint8_t* r2 = &gray.pixels[size_t(y + 1) * w];
        uint8_t* dst = &out.bits[size_t(y) * w];
        for (int x = 1; x < w - 1; ++x) {
            int gx = (r0[x + 1] + 2 * r1[x + 1] + r2[x + 1]) -
                     (r0[x - 1] + 2 * r1[x - 1] + r2[x - 1]);
            int gy = (r2[x - 1] + 2 * r2[x] + r2[x + 1]) -
                     (r0[x - 1] + 2 * r0[x] + r0[x + 1]);
            int mag = std::max(std::abs(gx), std::abs(gy));
            dst[x] = mag > threshold ? 1 : 0;
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
    const int ch = frame.channels;
    const int norm = block * block;
#pragma omp parallel for schedule(static)
    for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
            for (int c = 0; c < ch; ++c) {
                int sum = 0;
                for (int dy = 0; dy < block; ++dy)
                    for (int dx = 0; dx < block; ++dx)
                        sum += frame.at(ox * block + dx, oy * block + dy, c);
                out.at(ox, oy, c) = uint8_t(std::lround(double(sum) / norm));
            }
        }
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
#pragma omp parallel for schedule(static)
    for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
            uint8_t bit = 0;
            for (int dy = 0; dy < block && !bit; ++dy)
                for (int dx = 0; dx < block; ++dx)
                    if (image.at(ox * block + dx, oy * block + dy)) {
                        bit = 1;
                        break;
                    }
            out.at(ox, oy) = bit;
        }
    }
    return out;
}

BinaryImage dilate3x3(const BinaryImage& mask, int passes) {
    BinaryImage cur = mask;
    for (int p = 0; p < passes; ++p) {
        BinaryImage next(cur.width, cur.height);
#pragma omp parallel for schedule(static)
        for (int y = 0; y < cur.height; ++y) {
            for (int x = 0; x < cur.width; ++x) {
                uint8_t bit = 0;
                for (int dy = -1; dy <= 1 && !bit; ++dy) {
                    int yy = y + dy;
                    if (yy < 0 || yy >= cur.height) continue;
                    for (int dx = -1; dx <= 1; ++dx) {
                        int xx = x + dx;
                        if (xx < 0 || xx >= cur.width) continue;
                        if (cur.at(xx, yy)) {
                            bit = 1;
                            break;
                        }
                    }
                }
                next.at(x, y) = bit;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace touchless
