#pragma once

#include <algorithm>
#include <cmath>

namespace touchless {

struct Pt2 {
    double x = 0;
    double y = 0;
};

inline double distance(Pt2 a, Pt2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Axis-aligned box, continuous coordinates, x0 <= x1 and y0 <= y1.
struct Box {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return std::max(0.0, width()) * std::max(0.0, height()); }
    Pt2 center() const { return {(x0 + x1) / 2, (y0 + y1) / 2}; }

    bool contains(Pt2 p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
    bool contains(const Box& b) const {
        return b.x0 >= x0 && b.y0 >= y0 && b.x1 <= x1 && b.y1 <= y1;
    }

    static Box from_center(Pt2 c, double w, double h) {
        return {c.x - w / 2, c.y - h / 2, c.x + w / 2, c.y + h / 2};
    }
};

inline Box scaled(const Box& b, double f) { return {b.x0 * f, b.y0 * f, b.x1 * f, b.y1 * f}; }

inline double iou(const Box& a, const Box& b) {
    double ix = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
    double iy = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
    if (ix <= 0 || iy <= 0) return 0.0;
    double inter = ix * iy;
    double uni = a.area() + b.area() - inter;
    return uni > 0 ? inter / uni : 0.0;
}

}  // namespace touchless
