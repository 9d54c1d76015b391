#include "touchless/skin.hpp"

#include <algorithm>

namespace touchless {

Hsv rgb_to_hsv(uint8_t r8, uint8_t g8, uint8_t b8) {
    double r = r8 / 255.0, g = g8 / 255.0, b = b8 / 255.0;
    double mx = std::max({r, g, b});
    double mn = std::min({r, g, b});
    double delta = mx - mn;

    Hsv out;
    out.v = mx;
    if (mx <= 0 || delta <= 0) return out;  // s = 0, h defaults to 0
    out.s = delta / mx;

    double h;
    if (mx == r)
        h = 60.0 * ((g - b) / delta);
    else if (mx == g)
        h = 60.0 * (2.0 + (b - r) / delta);
    else
        h = 60.0 * (4.0 + (r - g) / delta);
    if (h < 0) h += 360.0;
    if (h >= 360.0) h -= 360.0;
    out.h = h;
    return out;
}

SkinMask skin_membership(const Frame& rgb, const SkinRange& range) {
    if (rgb.channels != 3) throw input_error("skin detection expects an RGB frame");
    SkinMask mask(rgb.width, rgb.height);
    const int n = rgb.width * rgb.height;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const uint8_t* p = &rgb.pixels[size_t(i) * 3];
        mask.bits[i] = range.contains(rgb_to_hsv(p[0], p[1], p[2])) ? 1 : 0;
    }
    return mask;
}

SkinMask majority3x3(const SkinMask& mask) {
    SkinMask out(mask.width, mask.height);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            int set = 0, total = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                int yy = y + dy;
                if (yy < 0 || yy >= mask.height) continue;
                for (int dx = -1; dx <= 1; ++dx) {
                    int xx = x + dx;
                    if (xx < 0 || xx >= mask.width) continue;
                    ++total;
                    set += mask.at(xx, yy);
                }
            }
            out.at(x, y) = (2 * set > total) ? 1 : 0;
        }
    }
    return out;
}

SkinMask detect_skin_regions(const Frame& rgb, const SkinRange& range, bool smoothing) {
    SkinMask mask = skin_membership(rgb, range);
    return smoothing ? majority3x3(mask) : mask;
}

}  // namespace touchless
