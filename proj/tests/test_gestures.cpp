#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "touchless/gestures.hpp"

using namespace touchless;

namespace {

// samples at 30 fps between two endpoints, linear in time
std::vector<TrajectorySample> line(Pt2 from, Pt2 to, double dur, double scale = 1.0,
                                   double t0 = 0.0) {
    std::vector<TrajectorySample> out;
    int n = int(std::lround(dur * 30));
    for (int i = 0; i <= n; ++i) {
        double f = double(i) / n;
        out.push_back({{from.x + (to.x - from.x) * f, from.y + (to.y - from.y) * f}, scale,
                       t0 + f * dur});
    }
    return out;
}

std::vector<GestureEvent> run(GestureClassifier& c, const std::vector<TrajectorySample>& s) {
    std::vector<GestureEvent> all;
    for (const TrajectorySample& x : s)
        for (const GestureEvent& e : c.push(x)) all.push_back(e);
    return all;
}

bool has(const std::vector<GestureEvent>& events, Gesture g) {
    for (const GestureEvent& e : events)
        if (e.label == g) return true;
    return false;
}

}  // namespace

TEST_SUITE("gestures") {

TEST_CASE("compute_motion: 3-4-5 triangle") {
    std::vector<TrajectorySample> w{{{0, 0}, 1, 0.0}, {{30, 40}, 1, 0.5}};
    MotionVector m = compute_motion(w);
    CHECK(m.d == doctest::Approx(50.0));
    CHECK(m.t == doctest::Approx(0.5));
    CHECK(m.v == doctest::Approx(100.0));
    CHECK(m.alpha == doctest::Approx(53.13).epsilon(1e-3));
    CHECK(m.v == m.d / m.t);  // exact by construction
}

TEST_CASE("compute_motion: degenerate and leftward cases") {
    std::vector<TrajectorySample> still{{{5, 5}, 1, 0.0}, {{5, 5}, 1, 1.0}};
    MotionVector m = compute_motion(still);
    CHECK(m.d == 0.0);
    CHECK(m.v == 0.0);
    CHECK(m.alpha == 0.0);

    std::vector<TrajectorySample> left{{{0, 0}, 1, 0.0}, {{-10, 0}, 1, 1.0}};
    m = compute_motion(left);
    CHECK(m.alpha == doctest::Approx(180.0));
    CHECK(m.v == doctest::Approx(10.0));

    std::vector<TrajectorySample> one{{{0, 0}, 1, 0.0}};
    CHECK_THROWS_AS(compute_motion(one), input_error);
}

TEST_CASE("slow left swing emits direction plus speed") {
    GestureClassifier c(Mode::hand);
    auto events = run(c, line({300, 200}, {220, 200}, 0.8));  // 100 px/s leftward
    REQUIRE(!events.empty());
    CHECK(has(events, Gesture::SwingFingerLeft));
    CHECK(has(events, Gesture::SwingFingerSlow));
    CHECK_FALSE(has(events, Gesture::SwingFingerFast));
    CHECK_FALSE(has(events, Gesture::SwingFingerRight));
    for (const GestureEvent& e : events) CHECK(e.motion.v == e.motion.d / e.motion.t);
}

TEST_CASE("fast right swing emits direction plus speed") {
    GestureClassifier c(Mode::hand);
    auto events = run(c, line({100, 200}, {260, 200}, 0.4));  // 400 px/s rightward
    CHECK(has(events, Gesture::SwingFingerRight));
    CHECK(has(events, Gesture::SwingFingerFast));
}

TEST_CASE("scale oscillation with a still hand is flexion/extension") {
    GestureClassifier c(Mode::hand);
    std::vector<GestureEvent> events;
    for (int i = 0; i <= 13; ++i) {
        double t = i / 30.0;
        double scale = 1.0 - 0.25 * std::sin(M_PI * std::min(1.0, t / 0.4));
        for (const GestureEvent& e : c.push({{320, 240}, scale, t})) events.push_back(e);
    }
    REQUIRE(events.size() == 1);
    CHECK(events[0].label == Gesture::FingerFlexionExtension);
}

TEST_CASE("idle hand emits nothing") {
    GestureClassifier c(Mode::hand);
    auto events = run(c, line({320, 240}, {322, 240}, 1.0));  // 2 px/s
    CHECK(events.empty());
}

TEST_CASE("foot: fast forward motion is a kick") {
    // the raw kick: 200 px along +y in 0.25 s
    auto kick = line({320, 100}, {320, 300}, 0.25);
    MotionVector m = compute_motion(kick);
    CHECK(m.v == doctest::Approx(800.0));
    CHECK(m.alpha == doctest::Approx(90.0));

    // streamed through the classifier the foot then holds still until the
    // 0.4 s window fills; the window still reads as a fast forward motion
    GestureClassifier c(Mode::foot);
    auto events = run(c, kick);
    auto hold = line({320, 300}, {320, 300}, 0.25, 1.0, 0.25 + 1.0 / 30);
    for (const TrajectorySample& s : hold)
        for (const GestureEvent& e : c.push(s)) events.push_back(e);
    CHECK(has(events, Gesture::KickBall));
    CHECK(has(events, Gesture::MoveFootFast));
}

TEST_CASE("foot: slow sideways motion is only a slow move") {
    GestureClassifier c(Mode::foot);
    auto events = run(c, line({320, 240}, {260, 230}, 0.6));
    CHECK(has(events, Gesture::MoveFootSlow));
    CHECK_FALSE(has(events, Gesture::KickBall));
    CHECK_FALSE(has(events, Gesture::MoveFootFast));
}

TEST_CASE("classification is translation invariant") {
    auto base = line({300, 200}, {220, 180}, 0.5);
    auto moved = base;
    for (auto& s : moved) {
        s.center.x += 1234;
        s.center.y += 987;
    }
    GestureClassifier c1(Mode::hand), c2(Mode::hand);
    auto e1 = run(c1, base);
    auto e2 = run(c2, moved);
    REQUIRE(e1.size() == e2.size());
    for (size_t i = 0; i < e1.size(); ++i) {
        CHECK(e1[i].label == e2[i].label);
        CHECK(e1[i].t_start == e2[i].t_start);
        CHECK(e1[i].t_end == e2[i].t_end);
    }
}

TEST_CASE("time scaling divides V and leaves D and alpha alone") {
    std::vector<TrajectorySample> w{{{10, 20}, 1, 0.0}, {{80, 60}, 1, 0.5}};
    std::vector<TrajectorySample> slow{{{10, 20}, 1, 0.0}, {{80, 60}, 1, 1.5}};
    MotionVector a = compute_motion(w);
    MotionVector b = compute_motion(slow);
    CHECK(a.d == b.d);
    CHECK(a.alpha == b.alpha);
    CHECK(b.v == doctest::Approx(a.v / 3.0));
}

TEST_CASE("mirroring x swaps left and right") {
    auto traj = line({300, 200}, {200, 200}, 0.5);
    auto mirrored = traj;
    for (auto& s : mirrored) s.center.x = 640 - s.center.x;

    GestureClassifier c1(Mode::hand), c2(Mode::hand);
    auto e1 = run(c1, traj);
    auto e2 = run(c2, mirrored);
    REQUIRE(e1.size() == e2.size());
    for (size_t i = 0; i < e1.size(); ++i) {
        Gesture want = e1[i].label == Gesture::SwingFingerLeft    ? Gesture::SwingFingerRight
                       : e1[i].label == Gesture::SwingFingerRight ? Gesture::SwingFingerLeft
                                                                  : e1[i].label;
        CHECK(e2[i].label == want);
    }
}

TEST_CASE("event groups never overlap in time") {
    GestureClassifier c(Mode::hand);
    auto long_sweep = line({600, 200}, {100, 200}, 2.0);
    auto events = run(c, long_sweep);
    REQUIRE(events.size() >= 4);  // several windows fire along the sweep
    double last_end = -1;
    double last_start = -1;
    for (const GestureEvent& e : events) {
        if (e.t_start != last_start) CHECK(e.t_start > last_end);
        last_start = e.t_start;
        last_end = e.t_end;
    }
}

TEST_CASE("event records round trip through the text format") {
    GestureClassifier c(Mode::hand);
    auto events = run(c, line({300, 200}, {220, 200}, 0.8));
    REQUIRE(!events.empty());

    std::stringstream buf;
    for (const GestureEvent& e : events) write_event(buf, e);
    auto tmp = std::filesystem::temp_directory_path() / "touchless_events.txt";
    {
        std::ofstream f(tmp);
        f << "# touchless-events v1\n" << buf.str();
    }
    auto back = read_events(tmp);
    REQUIRE(back.size() == events.size());
    for (size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].label == events[i].label);
        CHECK(back[i].t_start == doctest::Approx(events[i].t_start));
        CHECK(back[i].motion.v == doctest::Approx(events[i].motion.v).epsilon(1e-4));
    }
}

TEST_CASE("out-of-order samples are rejected") {
    GestureClassifier c(Mode::hand);
    c.push({{0, 0}, 1, 0.5});
    CHECK_THROWS_AS(c.push({{1, 1}, 1, 0.5}), input_error);
}

}  // TEST_SUITE
