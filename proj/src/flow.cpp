#include "touchless/flow.hpp"

#include <algorithm>
#include <cmath>

namespace touchless {

float GrayF::at_clamped(int x, int y) const {
    x = std::clamp(x, 0, width - 1);
    y = std::clamp(y, 0, height - 1);
    return at(x, y);
}

float GrayF::bilinear(double x, double y) const {
    int x0 = int(std::floor(x));
    int y0 = int(std::floor(y));
    double fx = x - x0;
    double fy = y - y0;
    double v00 = at_clamped(x0, y0), v10 = at_clamped(x0 + 1, y0);
    double v01 = at_clamped(x0, y0 + 1), v11 = at_clamped(x0 + 1, y0 + 1);
    return float((v00 * (1 - fx) + v10 * fx) * (1 - fy) + (v01 * (1 - fx) + v11 * fx) * fy);
}

GrayF to_grayf(const Frame& frame) {
    Frame gray = frame.channels == 1 ? frame : to_grayscale(frame);
    GrayF out(gray.width, gray.height);
    const int n = gray.width * gray.height;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) out.v[i] = float(gray.pixels[i]);
    return out;
}

namespace {

GrayF halve(const GrayF& src) {
    GrayF out(src.width / 2, src.height / 2);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x)
            out.at(x, y) = 0.25f * (src.at(2 * x, 2 * y) + src.at(2 * x + 1, 2 * y) +
                                    src.at(2 * x, 2 * y + 1) + src.at(2 * x + 1, 2 * y + 1));
    return out;
}

FlowLevel make_level(GrayF img) {
    FlowLevel lvl;
    lvl.ix = GrayF(img.width, img.height);
    lvl.iy = GrayF(img.width, img.height);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            lvl.ix.at(x, y) = 0.5f * (img.at_clamped(x + 1, y) - img.at_clamped(x - 1, y));
            lvl.iy.at(x, y) = 0.5f * (img.at_clamped(x, y + 1) - img.at_clamped(x, y - 1));
        }
    lvl.img = std::move(img);
    return lvl;
}

}  // namespace

FlowPyramid build_flow_pyramid(const GrayF& img, int max_levels) {
    FlowPyramid pyr;
    GrayF cur = img;
    for (int l = 0; l < max_levels; ++l) {
        bool last = cur.width < 24 || cur.height < 24 || l == max_levels - 1;
        pyr.levels.push_back(make_level(cur));
        if (last) break;
        cur = halve(cur);
    }
    return pyr;
}

PointFlow track_point(const FlowPyramid& a, const FlowPyramid& b, Pt2 from,
                      const FlowParams& params) {
    const int top = int(std::min(a.levels.size(), b.levels.size())) - 1;
    const int r = params.win_radius;
    const double area = double(2 * r + 1) * (2 * r + 1);

    double dx = 0, dy = 0;  // displacement at the current level
    for (int lvl = top; lvl >= 0; --lvl) {
        const FlowLevel& A = a.levels[lvl];
        const FlowLevel& B = b.levels[lvl];
        const double px = from.x / double(1 << lvl);
        const double py = from.y / double(1 << lvl);

        // gradient matrix over the window in the first image
        double axx = 0, axy = 0, ayy = 0;
        for (int wy = -r; wy <= r; ++wy)
            for (int wx = -r; wx <= r; ++wx) {
                double gx = A.ix.bilinear(px + wx, py + wy);
                double gy = A.iy.bilinear(px + wx, py + wy);
                axx += gx * gx;
                axy += gx * gy;
                ayy += gy * gy;
            }
        double tr = axx + ayy;
        double det = axx * ayy - axy * axy;
        double min_eig = (tr - std::sqrt(std::max(0.0, tr * tr - 4 * det))) / 2.0;
        if (min_eig / area < params.min_eig) return {};  // untrackable window

        for (int it = 0; it < params.iterations; ++it) {
            double bx = 0, by = 0;
            for (int wy = -r; wy <= r; ++wy)
                for (int wx = -r; wx <= r; ++wx) {
                    double diff = B.img.bilinear(px + dx + wx, py + dy + wy) -
                                  A.img.bilinear(px + wx, py + wy);
                    bx += diff * A.ix.bilinear(px + wx, py + wy);
                    by += diff * A.iy.bilinear(px + wx, py + wy);
                }
            double ux = -(ayy * bx - axy * by) / det;
            double uy = -(-axy * bx + axx * by) / det;
            dx += ux;
            dy += uy;
            if (std::hypot(ux, uy) < params.epsilon) break;
        }
        if (lvl > 0) {
            dx *= 2;
            dy *= 2;
        }
    }

    Pt2 to{from.x + dx, from.y + dy};
    const GrayF& img0 = b.levels[0].img;
    if (to.x < 0 || to.y < 0 || to.x > img0.width - 1 || to.y > img0.height - 1) return {};
    return {to, true};
}

namespace {

double median_of(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace

std::optional<BoxFlow> track_box(const FlowPyramid& prev, const FlowPyramid& cur,
                                 const Box& box, const MedianFlowParams& params) {
    const int g = params.grid;
    std::vector<Pt2> pts;
    pts.reserve(size_t(g) * g);
    for (int iy = 0; iy < g; ++iy)
        for (int ix = 0; ix < g; ++ix) {
            double fx = (ix + 0.5) / g;
            double fy = (iy + 0.5) / g;
            pts.push_back({box.x0 + fx * box.width(), box.y0 + fy * box.height()});
        }

    const int n = int(pts.size());
    std::vector<Pt2> fwd(n);
    std::vector<double> fb_err(n);
    std::vector<uint8_t> ok(n, 0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        PointFlow f = track_point(prev, cur, pts[i], params.flow);
        if (!f.ok) continue;
        PointFlow back = track_point(cur, prev, f.to, params.flow);
        if (!back.ok) continue;
        fwd[i] = f.to;
        fb_err[i] = distance(pts[i], back.to);
        ok[i] = 1;
    }

    std::vector<double> errs;
    for (int i = 0; i < n; ++i)
        if (ok[i]) errs.push_back(fb_err[i]);
    if (errs.empty()) return std::nullopt;
    const double med_err = median_of(errs);

    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
        if (ok[i] && fb_err[i] <= med_err) keep.push_back(i);
    if (double(keep.size()) < params.min_survivors * double(n)) return std::nullopt;

    std::vector<double> dxs, dys;
    for (int i : keep) {
        dxs.push_back(fwd[i].x - pts[i].x);
        dys.push_back(fwd[i].y - pts[i].y);
    }
    const double dx = median_of(dxs);
    const double dy = median_of(dys);

    std::vector<double> ratios;
    for (size_t a = 0; a < keep.size(); ++a)
        for (size_t b = a + 1; b < keep.size(); ++b) {
            double d0 = distance(pts[keep[a]], pts[keep[b]]);
            double d1 = distance(fwd[keep[a]], fwd[keep[b]]);
            if (d0 > 1e-3) ratios.push_back(d1 / d0);
        }
    const double scale = ratios.empty() ? 1.0 : median_of(ratios);

    Pt2 c = box.center();
    BoxFlow out;
    out.scale = scale;
    out.box = Box::from_center({c.x + dx, c.y + dy}, box.width() * scale,
                               box.height() * scale);
    return out;
}

}  // namespace touchless
