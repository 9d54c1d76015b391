#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "touchless/contour.hpp"
#include "touchless/geometry.hpp"
#include "touchless/image.hpp"

namespace touchless {

enum class TrajectoryKind { fixed, linear, circular, scaling, deforming };

const char* to_string(TrajectoryKind kind);
TrajectoryKind trajectory_from_string(const std::string& s);

// A scripted scene: one contour target over mid-gray background, skin-toned
// textured fill inside the contour, optional static clutter strokes outside
// the target's path. The seed fully determines the output.
struct Scenario {
    ContourTemplate tpl;
    double tpl_scale = 1.0;  // pre-scale applied to the template before animating
    int width = 640;
    int height = 480;
    int frames = 1;
    uint64_t seed = 1;
    int64_t frame_interval_ms = 33;
    bool gray = false;          // write P5 instead of P6
    bool fill_texture = true;   // block texture riding with the target

    TrajectoryKind trajectory = TrajectoryKind::fixed;
    Pt2 start{-1, -1};          // target center (circle center for circular);
                                // negative = frame center
    Pt2 velocity{0, 0};         // px/frame, linear
    double radius = 50;         // px, circular
    double step_deg = 15;       // degrees/frame, circular
    double scale_rate = 0;      // per-frame target scale increment, scaling
    double deform = 0;          // fixed length change in [-0.33, 0.33], deforming
    double clutter = 0;         // strokes per 100x100 px of frame area
};

struct TruthRecord {
    int frame = 0;
    Box bbox;      // full-resolution tight bound of the rendered contour
    Pt2 center;    // bbox center
    double scale = 1.0;
};

struct SynthResult {
    std::vector<Frame> frames;
    std::vector<TruthRecord> truth;
    std::vector<std::string> labels;  // nominal gesture labels for the motion
};

SynthResult generate(const Scenario& scenario);

// Writes frame_%06d.p?m, timestamps.txt, truth.jsonl, labels.jsonl.
void write_dataset(const SynthResult& result, const std::filesystem::path& dir, bool gray);

std::vector<TruthRecord> read_truth(const std::filesystem::path& path);
void write_truth(const std::vector<TruthRecord>& truth, const std::filesystem::path& path);

constexpr uint8_t kSkinTone[3] = {224, 172, 105};

}  // namespace touchless
