#pragma once

#include <deque>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "touchless/geometry.hpp"
#include "touchless/pipeline.hpp"

namespace touchless {

enum class Gesture {
    SwingFingerLeft,
    SwingFingerRight,
    FingerFlexionExtension,
    SwingFingerSlow,
    SwingFingerFast,
    CollideBall,
    KickBall,
    MoveFootSlow,
    MoveFootFast,
    PressKey,
    ReleaseKey,
};

const char* to_string(Gesture g);
Gesture gesture_from_string(const std::string& s);

struct TrajectorySample {
    Pt2 center;       // full-resolution pixels
    double scale = 1; // ROI size relative to its initial size
    double t = 0;     // seconds, strictly increasing
};

struct MotionVector {
    double d = 0;      // endpoint distance, px
    double t = 0;      // window duration, s
    double alpha = 0;  // degrees in [0, 360), atan2 convention, 0 = +x
    double v = 0;      // d / t
};

// Endpoint motion of a window; alpha = 0 for zero displacement.
MotionVector compute_motion(std::span<const TrajectorySample> window);

struct GestureEvent {
    Gesture label;
    MotionVector motion;
    double t_start = 0;
    double t_end = 0;
};

struct GestureParams {
    double v_idle = 20;     // px/s, below this nothing is emitted
    double v_fast = 300;    // px/s, slow/fast split
    double window_s = 0.4;
    double flex_depth = 0.20;  // scale peak-to-trough for flexion/extension
    double d_click = 15;       // px, max endpoint displacement for flexion
};

// Streaming window classifier. Feed samples in time order; events come out
// as they are recognized. Direction and speed labels are emitted together
// for the same window; the window restarts after every emission so event
// groups never overlap in time.
class GestureClassifier {
public:
    GestureClassifier(Mode mode, GestureParams params = {})
        : mode_(mode), params_(params) {}

    std::vector<GestureEvent> push(const TrajectorySample& sample);

private:
    std::vector<GestureEvent> evaluate();

    Mode mode_;
    GestureParams params_;
    std::deque<TrajectorySample> window_;
};

// Track records -> trajectory samples at full resolution. Lost frames are
// skipped; t = frame_index * frame_interval_ms / 1000.
std::vector<TrajectorySample> trajectory_from_track(const TrackFile& track,
                                                    int64_t frame_interval_ms);

// Event file: "t_start t_end label D T alpha V" per line.
void write_event(std::ostream& out, const GestureEvent& e);
std::vector<GestureEvent> read_events(const std::filesystem::path& path);

}  // namespace touchless
