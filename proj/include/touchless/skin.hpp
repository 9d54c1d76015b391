#pragma once

#include "touchless/image.hpp"

namespace touchless {

struct Hsv {
    double h = 0;  // degrees in [0, 360)
    double s = 0;  // [0, 1]
    double v = 0;  // [0, 1]
};

// Standard hexcone conversion; h = 0 when s = 0.
Hsv rgb_to_hsv(uint8_t r, uint8_t g, uint8_t b);

struct SkinRange {
    double h_min = 0, h_max = 50;      // degrees; h_min > h_max wraps through 0
    double s_min = 0.20, s_max = 0.75;
    double v_min = 0.25, v_max = 1.0;

    bool contains(const Hsv& c) const {
        if (c.s < s_min || c.s > s_max || c.v < v_min || c.v > v_max) return false;
        if (h_min <= h_max) return c.h >= h_min && c.h <= h_max;
        return c.h >= h_min || c.h <= h_max;
    }
};

// Per-pixel HSV membership test. No smoothing.
SkinMask skin_membership(const Frame& rgb, const SkinRange& range);

// One pass of 3x3 majority voting (window clipped at borders, strict majority).
SkinMask majority3x3(const SkinMask& mask);

// Membership followed by one majority pass when smoothing is on.
SkinMask detect_skin_regions(const Frame& rgb, const SkinRange& range, bool smoothing = true);

}  // namespace touchless
