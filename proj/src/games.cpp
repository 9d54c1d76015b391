#include "touchless/games.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace touchless {

Pt2 ScreenMap::to_screen(Pt2 camera) const {
    Pt2 p{camera.x * scr_w / cam_w, camera.y * scr_h / cam_h};
    p.x = std::clamp(p.x, 0.0, scr_w);
    p.y = std::clamp(p.y, 0.0, scr_h);
    return p;
}

BallGame::BallGame(BallLayout layout, ScreenMap map)
    : layout_(std::move(layout)), map_(map) {
    if (layout_.court.width() <= 2 * layout_.radius ||
        layout_.court.height() <= 2 * layout_.radius)
        throw input_error("court too small for the ball");
    state_.ball_pos = layout_.ball_start;
    state_.ball_vel = layout_.ball_vel;
    state_.cursor = layout_.court.center();
}

void BallGame::integrate(double dt) {
    const Box& c = layout_.court;
    const double r = layout_.radius;
    double x = state_.ball_pos.x + state_.ball_vel.x * dt;
    double y = state_.ball_pos.y + state_.ball_vel.y * dt;

    // elastic reflection; loop handles multiple bounces in one step
    for (int guard = 0; guard < 64; ++guard) {
        bool bounced = false;
        if (x < c.x0 + r) { x = 2 * (c.x0 + r) - x; state_.ball_vel.x = -state_.ball_vel.x; bounced = true; }
        if (x > c.x1 - r) { x = 2 * (c.x1 - r) - x; state_.ball_vel.x = -state_.ball_vel.x; bounced = true; }
        if (y < c.y0 + r) { y = 2 * (c.y0 + r) - y; state_.ball_vel.y = -state_.ball_vel.y; bounced = true; }
        if (y > c.y1 - r) { y = 2 * (c.y1 - r) - y; state_.ball_vel.y = -state_.ball_vel.y; bounced = true; }
        if (!bounced) break;
    }
    // the center always lands inside the court, whatever dt was
    state_.ball_pos = {std::clamp(x, c.x0 + r, c.x1 - r), std::clamp(y, c.y0 + r, c.y1 - r)};
}

std::vector<GameEvent> BallGame::step(const std::optional<GestureEvent>& event,
                                      const std::optional<Pt2>& cursor_cam, double dt) {
    if (dt <= 0) throw input_error("dt must be positive");
    ++step_index_;
    time_ += dt;
    std::vector<GameEvent> events;

    const Box& c = layout_.court;
    const double r = layout_.radius;
    if (cursor_cam) {
        Pt2 cursor = map_.to_screen(*cursor_cam);
        // keep the cursor (and with it a held ball) inside the court
        cursor.x = std::clamp(cursor.x, c.x0 + r, c.x1 - r);
        cursor.y = std::clamp(cursor.y, c.y0 + r, c.y1 - r);
        state_.cursor = cursor;
        has_cursor_ = true;
    }
    const Pt2 cursor = state_.cursor;

    bool throw_now = false;
    if (state_.held && event) {
        Gesture g = event->label;
        if (g == Gesture::SwingFingerFast || g == Gesture::MoveFootFast ||
            g == Gesture::KickBall)
            throw_now = true;
        // slow swings dribble: the held ball simply keeps following the cursor
    }

    if (state_.held && throw_now) {
        const double a = event->motion.alpha * M_PI / 180.0;
        const double v = event->motion.v;
        state_.ball_vel = {v * std::cos(a) * map_.scr_w / map_.cam_w,
                           v * std::sin(a) * map_.scr_h / map_.cam_h};
        state_.speed_index = std::min(1.0, v / layout_.v_max);
        state_.held = false;
        events.push_back({step_index_, time_, "Throw", "", state_.speed_index});
        integrate(dt);
    } else if (state_.held) {
        state_.ball_pos = cursor;
    } else {
        integrate(dt);
        if (has_cursor_ && distance(cursor, state_.ball_pos) <= layout_.catch_radius) {
            state_.held = true;
            state_.ball_vel = {0, 0};
            state_.ball_pos = cursor;
            events.push_back({step_index_, time_, "CollideBall", "", 0});
        }
    }

    Box ball{state_.ball_pos.x - r, state_.ball_pos.y - r, state_.ball_pos.x + r,
             state_.ball_pos.y + r};
    if (layout_.goal.contains(ball)) {
        ++state_.score;
        state_.ball_pos = layout_.court.center();
        state_.ball_vel = {0, 0};
        state_.held = false;
        events.push_back({step_index_, time_, "Goal", "", double(state_.score)});
    }
    return events;
}

PianoGame::PianoGame(PianoLayout layout, ScreenMap map)
    : layout_(std::move(layout)), map_(map) {
    if (layout_.keys.empty()) throw input_error("piano layout has no keys");
    if (layout_.mora_s <= 0) throw input_error("mora duration must be positive");
    for (size_t i = 0; i < layout_.keys.size(); ++i)
        for (size_t j = i + 1; j < layout_.keys.size(); ++j)
            if (iou(layout_.keys[i].region, layout_.keys[j].region) > 0)
                throw input_error("piano key regions overlap: " + layout_.keys[i].code +
                                  " and " + layout_.keys[j].code);
}

int PianoGame::key_at(Pt2 p) const {
    for (size_t i = 0; i < layout_.keys.size(); ++i)
        if (layout_.keys[i].region.contains(p)) return int(i);
    return -1;
}

std::vector<GameEvent> PianoGame::step(const std::optional<Pt2>& cursor_cam,
                                       bool press_active, double dt) {
    if (dt <= 0) throw input_error("dt must be positive");
    ++step_index_;
    time_ += dt;
    std::vector<GameEvent> events;

    if (cursor_cam) state_.cursor = map_.to_screen(*cursor_cam);
    const int key = press_active && cursor_cam ? key_at(state_.cursor) : -1;

    if (state_.active_key >= 0 && key != state_.active_key) {
        events.push_back({step_index_, time_, "ReleaseKey",
                          layout_.keys[state_.active_key].code, progress()});
        state_.active_key = -1;
        state_.hold_s = 0;
    }
    if (state_.active_key < 0 && key >= 0) {
        state_.active_key = key;
        state_.hold_s = 0;
        events.push_back({step_index_, time_, "PressKey", layout_.keys[key].code, 0});
    }
    if (state_.active_key >= 0) state_.hold_s += dt;
    return events;
}

GameLayout load_layout(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open layout file: " + path.string());

    GameLayout layout;
    layout.piano.keys.clear();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        auto fail = [&]() {
            throw input_error("malformed layout line " + std::to_string(lineno) + ": " + line);
        };
        if (word == "court") {
            if (!(ls >> layout.ball.court.x0 >> layout.ball.court.y0 >> layout.ball.court.x1 >>
                  layout.ball.court.y1)) fail();
        } else if (word == "goal") {
            if (!(ls >> layout.ball.goal.x0 >> layout.ball.goal.y0 >> layout.ball.goal.x1 >>
                  layout.ball.goal.y1)) fail();
        } else if (word == "ball") {
            if (!(ls >> layout.ball.ball_start.x >> layout.ball.ball_start.y >>
                  layout.ball.radius)) fail();
            layout.ball.catch_radius = 2 * layout.ball.radius;
        } else if (word == "ball_vel") {
            if (!(ls >> layout.ball.ball_vel.x >> layout.ball.ball_vel.y)) fail();
        } else if (word == "catch") {
            if (!(ls >> layout.ball.catch_radius)) fail();
        } else if (word == "vmax") {
            if (!(ls >> layout.ball.v_max)) fail();
        } else if (word == "mora") {
            if (!(ls >> layout.piano.mora_s)) fail();
        } else if (word == "key") {
            PianoKeyDef key;
            if (!(ls >> key.region.x0 >> key.region.y0 >> key.region.x1 >> key.region.y1 >>
                  key.code)) fail();
            layout.piano.keys.push_back(std::move(key));
        } else {
            fail();
        }
    }
    return layout;
}

}  // namespace touchless
