#pragma once

#include <optional>
#include <vector>

#include "touchless/geometry.hpp"
#include "touchless/image.hpp"

namespace touchless {

// Single-channel float image with clamped bilinear sampling.
struct GrayF {
    int width = 0;
    int height = 0;
    std::vector<float> v;

    GrayF() = default;
    GrayF(int w, int h) : width(w), height(h), v(size_t(w) * h, 0.f) {}

    float& at(int x, int y) { return v[size_t(y) * width + x]; }
    float at(int x, int y) const { return v[size_t(y) * width + x]; }
    float at_clamped(int x, int y) const;
    float bilinear(double x, double y) const;
};

GrayF to_grayf(const Frame& frame);  // converts RGB via to_grayscale first

struct FlowLevel {
    GrayF img, ix, iy;  // image and central-difference gradients
};

struct FlowPyramid {
    std::vector<FlowLevel> levels;  // levels[0] is full size
};

FlowPyramid build_flow_pyramid(const GrayF& img, int max_levels = 3);

struct FlowParams {
    int win_radius = 4;
    int iterations = 20;
    double epsilon = 0.01;    // iteration stop on update norm
    double min_eig = 0.05;    // per-pixel min eigenvalue of the gradient matrix
    int max_levels = 3;
};

struct PointFlow {
    Pt2 to;
    bool ok = false;
};

// Tracks one point a -> b by iterative gradient descent over the pyramid.
PointFlow track_point(const FlowPyramid& a, const FlowPyramid& b, Pt2 from,
                      const FlowParams& params);

struct BoxFlow {
    Box box;
    double scale = 1.0;  // median inter-point distance ratio
};

struct MedianFlowParams {
    int grid = 10;                 // grid x grid points inside the box
    double min_survivors = 0.25;   // fraction of grid points that must pass
    FlowParams flow;
};

// Median-flow box update: flows a point grid forward, drops points whose
// forward-backward round-trip error exceeds the median, then takes the
// median displacement and median pairwise distance ratio.
std::optional<BoxFlow> track_box(const FlowPyramid& prev, const FlowPyramid& cur,
                                 const Box& box, const MedianFlowParams& params);

}  // namespace touchless
