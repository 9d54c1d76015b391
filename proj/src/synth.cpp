#include "touchless/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "touchless/common.hpp"
#include "touchless/sequence.hpp"

namespace touchless {

const char* to_string(TrajectoryKind kind) {
    switch (kind) {
        case TrajectoryKind::fixed: return "static";
        case TrajectoryKind::linear: return "linear";
        case TrajectoryKind::circular: return "circular";
        case TrajectoryKind::scaling: return "scaling";
        case TrajectoryKind::deforming: return "deforming";
    }
    return "?";
}

TrajectoryKind trajectory_from_string(const std::string& s) {
    if (s == "static") return TrajectoryKind::fixed;
    if (s == "linear") return TrajectoryKind::linear;
    if (s == "circular") return TrajectoryKind::circular;
    if (s == "scaling") return TrajectoryKind::scaling;
    if (s == "deforming") return TrajectoryKind::deforming;
    throw input_error("unknown trajectory kind: " + s);
}

namespace {

struct Pose {
    Pt2 center;
    double scale;
};

Pt2 start_of(const Scenario& sc) {
    return {sc.start.x < 0 ? sc.width / 2.0 : sc.start.x,
            sc.start.y < 0 ? sc.height / 2.0 : sc.start.y};
}

Pose pose_at(const Scenario& sc, int t) {
    const Pt2 start = start_of(sc);
    switch (sc.trajectory) {
        case TrajectoryKind::fixed:
            return {start, 1.0};
        case TrajectoryKind::linear:
            return {{start.x + sc.velocity.x * t, start.y + sc.velocity.y * t}, 1.0};
        case TrajectoryKind::circular: {
            double a = sc.step_deg * t * M_PI / 180.0;
            return {{start.x + sc.radius * std::cos(a), start.y + sc.radius * std::sin(a)},
                    1.0};
        }
        case TrajectoryKind::scaling:
            return {start, 1.0 + sc.scale_rate * t};
        case TrajectoryKind::deforming:
            return {start, 1.0 + sc.deform};
    }
    return {start, 1.0};
}

void put_rgb(Frame& f, int x, int y, uint8_t r, uint8_t g, uint8_t b) {
    if (x < 0 || x >= f.width || y < 0 || y >= f.height) return;
    f.at(x, y, 0) = r;
    f.at(x, y, 1) = g;
    f.at(x, y, 2) = b;
}

void draw_line(Frame& f, IPt a, IPt b, uint8_t r, uint8_t g, uint8_t bl) {
    int dx = std::abs(b.x - a.x), dy = -std::abs(b.y - a.y);
    int sx = a.x < b.x ? 1 : -1, sy = a.y < b.y ? 1 : -1;
    int err = dx + dy;
    int x = a.x, y = a.y;
    while (true) {
        put_rgb(f, x, y, r, g, bl);
        if (x == b.x && y == b.y) break;
        int e2 = 2 * err;
        if (e2 >= dy) { err += dy; x += sx; }
        if (e2 <= dx) { err += dx; y += sy; }
    }
}

// deterministic per-block texture offset in [-10, 10]
int texture_delta(int64_t u, int64_t v, uint64_t seed) {
    uint64_t h = seed ^ (uint64_t(u) * 0x9E3779B97F4A7C15ULL) ^
                 (uint64_t(v) * 0xC2B2AE3D27D4EB4FULL);
    h ^= h >> 33;
    h *= 0xFF51AFD7ED558CCDULL;
    h ^= h >> 33;
    return int(h % 21) - 10;
}

// even-odd scanline fill with skin tone (+ optional block texture in
// template coordinates so the texture moves rigidly with the target)
void fill_polygon(Frame& f, const std::vector<Pt2>& poly, const Pose& pose,
                  bool texture, uint64_t seed) {
    if (poly.size() < 3) return;
    double min_y = poly[0].y, max_y = poly[0].y;
    for (const Pt2& p : poly) {
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const int y_lo = std::max(0, int(std::floor(min_y)));
    const int y_hi = std::min(f.height - 1, int(std::ceil(max_y)));

    std::vector<double> xs;
    for (int y = y_lo; y <= y_hi; ++y) {
        const double yc = y + 0.5;
        xs.clear();
        for (size_t i = 0; i < poly.size(); ++i) {
            const Pt2& p = poly[i];
            const Pt2& q = poly[(i + 1) % poly.size()];
            if ((p.y <= yc) == (q.y <= yc)) continue;
            xs.push_back(p.x + (yc - p.y) * (q.x - p.x) / (q.y - p.y));
        }
        std::sort(xs.begin(), xs.end());
        for (size_t k = 0; k + 1 < xs.size(); k += 2) {
            int x0 = std::max(0, int(std::ceil(xs[k] - 0.5)));
            int x1 = std::min(f.width - 1, int(std::floor(xs[k + 1] - 0.5)));
            for (int x = x0; x <= x1; ++x) {
                int d = 0;
                if (texture) {
                    int64_t u = int64_t(std::floor((x - pose.center.x) / pose.scale / 8.0));
                    int64_t v = int64_t(std::floor((y - pose.center.y) / pose.scale / 8.0));
                    d = texture_delta(u, v, seed);
                }
                auto c = [&](uint8_t base) {
                    return uint8_t(std::clamp(int(base) + d, 0, 255));
                };
                put_rgb(f, x, y, c(kSkinTone[0]), c(kSkinTone[1]), c(kSkinTone[2]));
            }
        }
    }
}

}  // namespace

SynthResult generate(const Scenario& sc) {
    if (sc.frames < 1) throw input_error("scenario needs at least one frame");
    if (std::fabs(sc.deform) > 0.33 + 1e-9)
        throw input_error("deformation beyond the 33% acceptance range");

    const ContourTemplate tpl =
        sc.tpl_scale == 1.0 ? sc.tpl : scale_template(sc.tpl, sc.tpl_scale);
    const Pt2 tpl_center{tpl.bbox_w / 2.0, tpl.bbox_h / 2.0};

    SynthResult result;

    // plan all poses first: truth, bounds checks and the clutter keep-out box
    std::vector<std::vector<Pt2>> polys(sc.frames);
    Box avoid{1e18, 1e18, -1e18, -1e18};
    for (int t = 0; t < sc.frames; ++t) {
        Pose pose = pose_at(sc, t);
        std::vector<Pt2>& poly = polys[t];
        poly.reserve(tpl.points.size());
        Box bb{1e18, 1e18, -1e18, -1e18};
        for (const IPt& p : tpl.points) {
            Pt2 q{pose.center.x + pose.scale * (p.x - tpl_center.x),
                  pose.center.y + pose.scale * (p.y - tpl_center.y)};
            poly.push_back(q);
            bb.x0 = std::min(bb.x0, q.x);
            bb.y0 = std::min(bb.y0, q.y);
            bb.x1 = std::max(bb.x1, q.x);
            bb.y1 = std::max(bb.y1, q.y);
        }
        if (bb.x0 < 3 || bb.y0 < 3 || bb.x1 > sc.width - 4 || bb.y1 > sc.height - 4)
            throw input_error("trajectory exits frame bounds at frame " + std::to_string(t));
        result.truth.push_back({t, bb, bb.center(), pose.scale});
        avoid.x0 = std::min(avoid.x0, bb.x0);
        avoid.y0 = std::min(avoid.y0, bb.y0);
        avoid.x1 = std::max(avoid.x1, bb.x1);
        avoid.y1 = std::max(avoid.y1, bb.y1);
    }
    avoid = {avoid.x0 - 8, avoid.y0 - 8, avoid.x1 + 8, avoid.y1 + 8};

    // static clutter: short bright polylines kept clear of the target's path
    Rng rng(sc.seed);
    std::vector<std::vector<IPt>> clutter;
    const int n_strokes = int(std::lround(sc.clutter * sc.width * sc.height / 10000.0));
    for (int s = 0; s < n_strokes; ++s) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<IPt> stroke;
            IPt p{rng.uniform_int(2, sc.width - 3), rng.uniform_int(2, sc.height - 3)};
            stroke.push_back(p);
            int n_segs = rng.uniform_int(2, 5);
            bool ok = !avoid.contains(Pt2{double(p.x), double(p.y)});
            for (int k = 0; ok && k < n_segs; ++k) {
                double ang = rng.uniform(0, 2 * M_PI);
                double len = rng.uniform(10, 30);
                IPt q{int(std::lround(p.x + len * std::cos(ang))),
                      int(std::lround(p.y + len * std::sin(ang)))};
                if (q.x < 2 || q.x > sc.width - 3 || q.y < 2 || q.y > sc.height - 3 ||
                    avoid.contains(Pt2{double(q.x), double(q.y)}))
                    ok = false;
                else {
                    stroke.push_back(q);
                    p = q;
                }
            }
            if (ok) {
                clutter.push_back(std::move(stroke));
                break;
            }
        }
    }

    for (int t = 0; t < sc.frames; ++t) {
        Frame frame(sc.width, sc.height, 3, int64_t(t) * sc.frame_interval_ms);
        std::fill(frame.pixels.begin(), frame.pixels.end(), uint8_t(128));

        Pose pose = pose_at(sc, t);
        fill_polygon(frame, polys[t], pose, sc.fill_texture, sc.seed);

        const std::vector<Pt2>& poly = polys[t];
        for (size_t i = 0; i < poly.size(); ++i) {
            const Pt2& a = poly[i];
            const Pt2& b = poly[(i + 1) % poly.size()];
            draw_line(frame, {int(std::lround(a.x)), int(std::lround(a.y))},
                      {int(std::lround(b.x)), int(std::lround(b.y))}, 255, 255, 255);
        }
        for (const auto& stroke : clutter)
            for (size_t i = 0; i + 1 < stroke.size(); ++i)
                draw_line(frame, stroke[i], stroke[i + 1], 255, 255, 255);

        result.frames.push_back(sc.gray ? to_grayscale(frame) : std::move(frame));
    }

    // nominal labels for constant-velocity motion
    if (sc.trajectory == TrajectoryKind::linear &&
        (sc.velocity.x != 0 || sc.velocity.y != 0)) {
        const double fps = 1000.0 / double(sc.frame_interval_ms);
        const double v = std::hypot(sc.velocity.x, sc.velocity.y) * fps;
        double alpha = std::atan2(sc.velocity.y, sc.velocity.x) * 180.0 / M_PI;
        if (alpha < 0) alpha += 360.0;
        auto near = [&](double center) {
            double d = std::fmod(std::fabs(alpha - center), 360.0);
            if (d > 180.0) d = 360.0 - d;
            return d <= 45.0;
        };
        if (v >= 20) {
            if (tpl.kind == TemplateKind::hand) {
                if (near(180)) result.labels.push_back("SwingFingerLeft");
                if (near(0)) result.labels.push_back("SwingFingerRight");
                if (near(0) || near(180))
                    result.labels.push_back(v >= 300 ? "SwingFingerFast" : "SwingFingerSlow");
            } else {
                if (v >= 300 && near(90)) result.labels.push_back("KickBall");
                result.labels.push_back(v >= 300 ? "MoveFootFast" : "MoveFootSlow");
            }
        }
    }
    return result;
}

void write_dataset(const SynthResult& result, const std::filesystem::path& dir, bool gray) {
    std::filesystem::create_directories(dir);
    char name[32];
    for (size_t i = 0; i < result.frames.size(); ++i) {
        std::snprintf(name, sizeof name, "frame_%06zu.%s", i, gray ? "pgm" : "ppm");
        write_pnm(dir / name, result.frames[i]);
    }
    std::ofstream ts(dir / "timestamps.txt");
    for (const Frame& f : result.frames) ts << f.timestamp_ms << "\n";

    write_truth(result.truth, dir / "truth.jsonl");

    std::ofstream lf(dir / "labels.jsonl");
    nlohmann::json labels = nlohmann::json::array();
    for (const std::string& l : result.labels) labels.push_back(l);
    lf << nlohmann::json{{"labels", labels}}.dump() << "\n";
}

void write_truth(const std::vector<TruthRecord>& truth, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write truth file: " + path.string());
    for (const TruthRecord& r : truth) {
        nlohmann::json j{{"frame", r.frame},
                         {"bbox", {r.bbox.x0, r.bbox.y0, r.bbox.x1, r.bbox.y1}},
                         {"center", {r.center.x, r.center.y}},
                         {"scale", r.scale}};
        out << j.dump() << "\n";
    }
}

std::vector<TruthRecord> read_truth(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open truth file: " + path.string());
    std::vector<TruthRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw input_error("malformed truth record: " + line);
        TruthRecord r;
        r.frame = j.at("frame").get<int>();
        auto& bb = j.at("bbox");
        r.bbox = {bb.at(0).get<double>(), bb.at(1).get<double>(), bb.at(2).get<double>(),
                  bb.at(3).get<double>()};
        r.center = {j.at("center").at(0).get<double>(), j.at("center").at(1).get<double>()};
        r.scale = j.at("scale").get<double>();
        out.push_back(r);
    }
    return out;
}

}  // namespace touchless
