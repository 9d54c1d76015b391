#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "touchless/gestures.hpp"
#include "touchless/geometry.hpp"

namespace touchless {

// Linear camera-to-screen coordinate map, output clamped to the screen.
struct ScreenMap {
    double cam_w = 640, cam_h = 480;
    double scr_w = 1280, scr_h = 720;

    Pt2 to_screen(Pt2 camera) const;
};

struct GameEvent {
    int step = 0;
    double t = 0;
    std::string kind;   // CollideBall, Throw, Goal, PressKey, ReleaseKey
    std::string key;    // piano key code, when applicable
    double value = 0;   // speed index / key progress, when applicable
};

struct BallLayout {
    Box court{0, 0, 1280, 720};
    Box goal{1180, 280, 1280, 440};
    Pt2 ball_start{640, 360};
    Pt2 ball_vel{180, 120};
    double radius = 18;
    double catch_radius = 36;
    double v_max = 600;  // camera px/s mapped to speed_index 1.0
};

struct BallState {
    Pt2 ball_pos;
    Pt2 ball_vel;
    bool held = false;
    Pt2 cursor;
    int score = 0;
    double speed_index = 0;
};

// Bouncing Ball / Football machine (identical rules; hand vs foot events).
// Free ball integrates with elastic wall reflection; cursor contact holds
// it, slow motion dribbles, fast motion throws, full goal entry scores.
class BallGame {
public:
    BallGame(BallLayout layout, ScreenMap map);

    // cursor_cam is the tracked hand/foot center in camera pixels; pass
    // nothing on frames without a localization (the last cursor holds).
    std::vector<GameEvent> step(const std::optional<GestureEvent>& event,
                                const std::optional<Pt2>& cursor_cam, double dt);

    const BallState& state() const { return state_; }
    const BallLayout& layout() const { return layout_; }

private:
    void integrate(double dt);

    BallLayout layout_;
    ScreenMap map_;
    BallState state_;
    bool has_cursor_ = false;
    int step_index_ = 0;
    double time_ = 0;
};

struct PianoKeyDef {
    Box region;
    std::string code;
};

struct PianoLayout {
    std::vector<PianoKeyDef> keys;
    double mora_s = 0.6;
};

struct PianoState {
    int active_key = -1;  // index into layout keys, -1 when none pressed
    double hold_s = 0;
    Pt2 cursor;
};

// Foot piano: press on cursor-in-key with press_active, release on leaving
// or dropping press_active; release reports hold progress in moras.
class PianoGame {
public:
    PianoGame(PianoLayout layout, ScreenMap map);  // rejects overlapping keys

    std::vector<GameEvent> step(const std::optional<Pt2>& cursor_cam, bool press_active,
                                double dt);

    const PianoState& state() const { return state_; }
    const PianoLayout& layout() const { return layout_; }
    double progress() const { return state_.hold_s / layout_.mora_s; }

private:
    int key_at(Pt2 p) const;

    PianoLayout layout_;
    ScreenMap map_;
    PianoState state_;
    int step_index_ = 0;
    double time_ = 0;
};

// Derives the piano press flag from cursor dwell inside any key.
class PressDetector {
public:
    explicit PressDetector(double dwell_s) : dwell_s_(dwell_s) {}

    bool update(bool inside_key, double dt) {
        dwell_ = inside_key ? dwell_ + dt : 0;
        return inside_key && dwell_ >= dwell_s_;
    }

private:
    double dwell_s_;
    double dwell_ = 0;
};

struct GameLayout {
    BallLayout ball;
    PianoLayout piano;
};

// Keyword layout file: court/goal/ball/ball_vel/catch/vmax/mora/key lines.
GameLayout load_layout(const std::filesystem::path& path);

}  // namespace touchless
