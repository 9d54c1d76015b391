#include "touchless/gestures.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace touchless {

namespace {

constexpr const char* kGestureNames[] = {
    "SwingFingerLeft", "SwingFingerRight", "FingerFlexionExtension", "SwingFingerSlow",
    "SwingFingerFast", "CollideBall",      "KickBall",               "MoveFootSlow",
    "MoveFootFast",    "PressKey",         "ReleaseKey",
};

// true when angle lies within +/-45 degrees of center (mod 360)
bool in_sector(double angle, double center) {
    double d = std::fmod(std::fabs(angle - center), 360.0);
    if (d > 180.0) d = 360.0 - d;
    return d <= 45.0;
}

}  // namespace

const char* to_string(Gesture g) { return kGestureNames[int(g)]; }

Gesture gesture_from_string(const std::string& s) {
    for (int i = 0; i < int(std::size(kGestureNames)); ++i)
        if (s == kGestureNames[i]) return Gesture(i);
    throw input_error("unknown gesture label: " + s);
}

MotionVector compute_motion(std::span<const TrajectorySample> window) {
    if (window.size() < 2) throw input_error("motion window needs at least 2 samples");
    const TrajectorySample& a = window.front();
    const TrajectorySample& b = window.back();

    MotionVector m;
    m.d = distance(a.center, b.center);
    m.t = b.t - a.t;
    if (m.t <= 0) throw input_error("motion window must span positive time");
    if (m.d > 0) {
        m.alpha = std::atan2(b.center.y - a.center.y, b.center.x - a.center.x) * 180.0 / M_PI;
        if (m.alpha < 0) m.alpha += 360.0;
        if (m.alpha >= 360.0) m.alpha -= 360.0;
    }
    m.v = m.d / m.t;
    return m;
}

std::vector<GestureEvent> GestureClassifier::push(const TrajectorySample& sample) {
    if (!window_.empty() && sample.t <= window_.back().t)
        throw input_error("trajectory samples must be strictly increasing in time");
    window_.push_back(sample);

    // keep the window span at window_s
    while (window_.size() > 2 && window_.back().t - window_[1].t >= params_.window_s)
        window_.pop_front();

    if (window_.back().t - window_.front().t < params_.window_s) return {};

    std::vector<GestureEvent> events = evaluate();
    if (!events.empty())
        window_.clear();  // restart so consecutive event groups never overlap
    return events;
}

std::vector<GestureEvent> GestureClassifier::evaluate() {
    std::vector<TrajectorySample> samples(window_.begin(), window_.end());
    MotionVector m = compute_motion(samples);
    const double t0 = samples.front().t;
    const double t1 = samples.back().t;

    auto event = [&](Gesture g) { return GestureEvent{g, m, t0, t1}; };
    std::vector<GestureEvent> out;

    if (mode_ == Mode::hand) {
        // flexion/extension: scale dip or bump with the hand held in place
        double s_min = samples[0].scale, s_max = samples[0].scale;
        for (const TrajectorySample& s : samples) {
            s_min = std::min(s_min, s.scale);
            s_max = std::max(s_max, s.scale);
        }
        if (s_max > 0 && (s_max - s_min) / s_max >= params_.flex_depth &&
            m.d < params_.d_click) {
            out.push_back(event(Gesture::FingerFlexionExtension));
            return out;
        }
        if (m.v < params_.v_idle) return out;
        if (in_sector(m.alpha, 180.0))
            out.push_back(event(Gesture::SwingFingerLeft));
        else if (in_sector(m.alpha, 0.0))
            out.push_back(event(Gesture::SwingFingerRight));
        else
            return out;  // ambiguous direction, stay quiet
        out.push_back(event(m.v >= params_.v_fast ? Gesture::SwingFingerFast
                                                  : Gesture::SwingFingerSlow));
    } else {
        if (m.v < params_.v_idle) return out;
        if (m.v >= params_.v_fast && in_sector(m.alpha, 90.0))
            out.push_back(event(Gesture::KickBall));
        out.push_back(event(m.v >= params_.v_fast ? Gesture::MoveFootFast
                                                  : Gesture::MoveFootSlow));
    }
    return out;
}

std::vector<TrajectorySample> trajectory_from_track(const TrackFile& track,
                                                    int64_t frame_interval_ms) {
    std::vector<TrajectorySample> out;
    const double to_full = track.meta.coord_ratio > 0 ? 1.0 / track.meta.coord_ratio : 1.0;
    for (const TrackRecord& rec : track.records) {
        if (rec.lost) continue;
        TrajectorySample s;
        Pt2 c = rec.box.center();
        s.center = {c.x * to_full, c.y * to_full};
        s.scale = rec.scale;
        s.t = double(rec.frame_index) * double(frame_interval_ms) / 1000.0;
        out.push_back(s);
    }
    return out;
}

void write_event(std::ostream& out, const GestureEvent& e) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "%.4f %.4f %s %.4f %.4f %.4f %.4f\n", e.t_start, e.t_end,
                  to_string(e.label), e.motion.d, e.motion.t, e.motion.alpha, e.motion.v);
    out << buf;
}

std::vector<GestureEvent> read_events(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open event file: " + path.string());
    std::vector<GestureEvent> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        GestureEvent e;
        std::string label;
        if (!(ls >> e.t_start >> e.t_end >> label >> e.motion.d >> e.motion.t >>
              e.motion.alpha >> e.motion.v))
            throw input_error("malformed event record: " + line);
        e.label = gesture_from_string(label);
        out.push_back(e);
    }
    return out;
}

}  // namespace touchless
