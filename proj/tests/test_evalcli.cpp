#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "touchless/config.hpp"
#include "touchless/eval.hpp"
#include "touchless/gestures.hpp"

using namespace touchless;
namespace fs = std::filesystem;

namespace {

// a track measured at ratio 0.125 whose boxes sit exactly on the truth
TrackFile track_from_truth(const std::vector<TruthRecord>& truth, double ratio) {
    TrackFile tf;
    tf.meta = {Mode::foot, 640, 480, ratio, ratio};
    for (const TruthRecord& t : truth)
        tf.records.push_back({t.frame, false, scaled(t.bbox, ratio), 1.0, t.scale});
    return tf;
}

std::vector<TruthRecord> fake_truth(int n) {
    std::vector<TruthRecord> truth;
    for (int i = 0; i < n; ++i) {
        Box bb{100.0 + i, 120.0, 260.0 + i, 180.0};
        truth.push_back({i, bb, bb.center(), 1.0});
    }
    return truth;
}

int run_cli(const std::string& args, std::string* out = nullptr) {
    fs::path tmp = fs::temp_directory_path() / "touchless_cli_out.txt";
    std::string cmd = std::string(TOUCHLESS_BIN) + " " + args + " >" + tmp.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    if (out) {
        std::ifstream in(tmp);
        std::stringstream ss;
        ss << in.rdbuf();
        *out = ss.str();
    }
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_SUITE("evalcli") {

TEST_CASE("eval: identity track scores perfectly") {
    auto truth = fake_truth(20);
    EvalReport r = evaluate(track_from_truth(truth, 0.125), truth);
    CHECK(r.success_rate == doctest::Approx(1.0));
    CHECK(r.mean_err == 0.0);
    CHECK(r.max_err == 0.0);
    CHECK(r.lost == 0);
}

TEST_CASE("eval: constant offset shows up as mean with zero spread") {
    auto truth = fake_truth(10);
    TrackFile tf = track_from_truth(truth, 0.125);
    for (TrackRecord& rec : tf.records) {
        rec.box.x0 += 2;
        rec.box.x1 += 2;
    }
    EvalReport r = evaluate(tf, truth);
    CHECK(r.mean_err == doctest::Approx(2.0));
    CHECK(r.sd_err == doctest::Approx(0.0));
    CHECK(r.max_err == doctest::Approx(2.0));
    CHECK(r.max_err >= r.mean_err);
}

TEST_CASE("eval: lost frames count as failures, excluded from the error stats") {
    auto truth = fake_truth(10);
    TrackFile tf = track_from_truth(truth, 0.125);
    for (int i = 0; i < 5; ++i) tf.records[2 * i].lost = true;
    EvalReport r = evaluate(tf, truth);
    CHECK(r.lost == 5);
    CHECK(r.success_rate == doctest::Approx(0.5));
    CHECK(r.mean_err == 0.0);
}

TEST_CASE("eval: full-resolution tracks are rescaled before comparison") {
    auto truth = fake_truth(8);
    TrackFile tf = track_from_truth(truth, 0.125);
    // same geometry stored at full resolution
    for (TrackRecord& rec : tf.records) rec.box = scaled(rec.box, 8.0);
    tf.meta.coord_ratio = 1.0;
    EvalReport r = evaluate(tf, truth);
    CHECK(r.success_rate == doctest::Approx(1.0));
    CHECK(r.mean_err == doctest::Approx(0.0));
}

TEST_CASE("eval: frame-count mismatch is an input error") {
    auto truth = fake_truth(5);
    TrackFile tf = track_from_truth(truth, 0.125);
    tf.records.pop_back();
    CHECK_THROWS_AS(evaluate(tf, truth), input_error);
}

TEST_CASE("config: defaults, file, overrides, and errors") {
    Config cfg;
    CHECK(cfg.get_i("edge_threshold") == 80);
    CHECK(cfg.get_d("gesture.v_fast") == doctest::Approx(300));
    CHECK(cfg.get_b("skin.smoothing"));

    fs::path file = fs::temp_directory_path() / "touchless_test.cfg";
    {
        std::ofstream f(file);
        f << "# comment\nedge_threshold = 50\nskin.smoothing = false  # trailing\n";
    }
    cfg.load_file(file);
    CHECK(cfg.get_i("edge_threshold") == 50);
    CHECK_FALSE(cfg.get_b("skin.smoothing"));

    cfg.set_kv("gesture.v_idle=25");
    CHECK(cfg.get_d("gesture.v_idle") == doctest::Approx(25));

    CHECK_THROWS_AS(cfg.set("no.such.key", "1"), input_error);
    cfg.set("edge_threshold", "abc");
    CHECK_THROWS_AS(cfg.get_i("edge_threshold"), input_error);
    CHECK_THROWS_AS(cfg.load_file("missing.cfg"), input_error);
}

TEST_CASE("cli: bad inputs exit with code 1") {
    std::string out;
    CHECK(run_cli("track --seq /nonexistent --template /nonexistent.tpl", &out) == 1);
    CHECK(out.find("template not found") != std::string::npos);

    CHECK(run_cli("eval --track /nonexistent.trk --truth /nonexistent.jsonl") == 1);
    CHECK(run_cli("play --game tic_tac_toe --layout /nonexistent") == 1);
    CHECK(run_cli("definitely-not-a-subcommand") == 1);
}

TEST_CASE("cli: gestures on a static track emits nothing") {
    fs::path dir = fs::temp_directory_path() / "touchless_cli_gestures";
    fs::create_directories(dir);
    fs::path trk = dir / "static.trk";
    {
        std::ofstream f(trk);
        TrackMeta meta{Mode::hand, 640, 480, 0.0625, 0.0625};
        write_track_header(f, meta);
        for (int i = 0; i < 60; ++i)
            write_track_record(f, {i, false, {10, 10, 20, 25}, 1.0, 1.0});
    }
    std::string out;
    CHECK(run_cli("gestures --track " + trk.string(), &out) == 0);
    CHECK(out.find("SwingFinger") == std::string::npos);
}

TEST_CASE("cli: scripted piano press reports whole and half moras") {
    fs::path dir = fs::temp_directory_path() / "touchless_cli_piano";
    fs::create_directories(dir);
    fs::path layout = dir / "layout.txt";
    {
        std::ofstream f(layout);
        f << "mora 0.6\nkey 100 600 260 710 C4\n";
    }
    // cursor parked inside the key (camera (90,435) -> screen (180,652.5))
    auto write_press_track = [&](const fs::path& path, int inside_frames) {
        std::ofstream f(path);
        TrackMeta meta{Mode::foot, 640, 480, 1.0, 1.0};
        write_track_header(f, meta);
        for (int i = 0; i <= 30; ++i) {
            bool inside = i >= 1 && i <= inside_frames;
            Pt2 c = inside ? Pt2{90, 435} : Pt2{10, 10};
            write_track_record(f, {i, false, Box::from_center(c, 10, 10), 1.0, 1.0});
        }
    };

    std::string out;
    fs::path trk = dir / "full.trk";
    write_press_track(trk, 18);  // inside for 0.6 s of 50 ms steps
    CHECK(run_cli("play --game foot_piano --layout " + layout.string() + " --track " +
                      trk.string() + " --set piano.press_dwell_s=0 --set game.dt=0.05",
                  &out) == 0);
    CHECK(out.find("PressKey C4") != std::string::npos);
    CHECK(out.find("ReleaseKey C4 1.000") != std::string::npos);

    write_press_track(trk, 9);  // half a mora
    CHECK(run_cli("play --game foot_piano --layout " + layout.string() + " --track " +
                      trk.string() + " --set piano.press_dwell_s=0 --set game.dt=0.05",
                  &out) == 0);
    CHECK(out.find("ReleaseKey C4 0.500") != std::string::npos);
}

TEST_CASE("cli: free-bouncing ball trace without inputs") {
    fs::path dir = fs::temp_directory_path() / "touchless_cli_play";
    fs::create_directories(dir);
    fs::path layout = dir / "layout.txt";
    {
        std::ofstream f(layout);
        f << "court 0 0 1280 720\ngoal 1180 280 1280 440\nball 640 360 18\n"
          << "ball_vel 180 120\nkey 100 600 260 710 C4\n";
    }
    std::string out;
    CHECK(run_cli("play --game bouncing_ball --layout " + layout.string() + " --steps 60",
                  &out) == 0);
    CHECK(out.find("state 60") != std::string::npos);
    CHECK(out.find("CollideBall") == std::string::npos);  // nothing to hold it
}

TEST_CASE("cli: --jobs fans out over sequences into a track directory") {
    fs::path base = fs::temp_directory_path() / "touchless_cli_jobs";
    fs::remove_all(base);
    fs::create_directories(base);
    std::string tpl = std::string(TOUCHLESS_DATA) + "/templates/foot.tpl";

    for (int i = 0; i < 2; ++i) {
        std::string cmd = "synth --template " + tpl + " --frames 4 --seed " +
                          std::to_string(50 + i) + " --out " +
                          (base / ("seq" + std::to_string(i))).string();
        REQUIRE(run_cli(cmd) == 0);
    }
    std::string cmd = "track --seq " + (base / "seq0").string() + " --seq " +
                      (base / "seq1").string() + " --template " + tpl + " --jobs 2 --out " +
                      (base / "tracks").string();
    CHECK(run_cli(cmd) == 0);
    CHECK(fs::exists(base / "tracks" / "seq0.trk"));
    CHECK(fs::exists(base / "tracks" / "seq1.trk"));
    CHECK(read_track(base / "tracks" / "seq1.trk").records.size() == 4);
}

}  // TEST_SUITE
