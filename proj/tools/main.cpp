#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "touchless/config.hpp"
#include "touchless/eval.hpp"
#include "touchless/games.hpp"
#include "touchless/gestures.hpp"
#include "touchless/pipeline.hpp"
#include "touchless/sequence.hpp"
#include "touchless/synth.hpp"

namespace tl = touchless;

namespace {

tl::Config make_config(const std::string& config_path, const std::vector<std::string>& sets) {
    tl::Config cfg;
    if (!config_path.empty()) cfg.load_file(config_path);
    for (const std::string& kv : sets) cfg.set_kv(kv);
#ifdef _OPENMP
    if (int threads = cfg.get_i("threads"); threads > 0) omp_set_num_threads(threads);
#endif
    return cfg;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw tl::input_error("cannot write output file: " + path);
    return file;
}

struct TrackArgs {
    std::vector<std::string> sequences;
    std::vector<std::string> templates;
    std::string mode;
    std::string config_path;
    std::vector<std::string> sets;
    std::string out;
    bool full_res = false;
    int jobs = 1;
};

struct TrackOutput {
    std::string text;
    double fps = 0;
};

TrackOutput run_track_one(const std::string& seq_path,
                          const std::vector<tl::ContourTemplate>& templates, tl::Mode mode,
                          const tl::Config& cfg, bool full_res) {
    tl::SequenceOptions seq_opts;
    seq_opts.frame_interval_ms = cfg.get_i("frame_interval_ms");
    tl::FrameSequence seq = tl::FrameSequence::open(seq_path, seq_opts);

    tl::Pipeline pipeline(tl::pipeline_params_from_config(cfg, mode), templates);

    std::vector<tl::TrackRecord> records;
    records.reserve(seq.size());
    int width = 0, height = 0;

    auto t0 = std::chrono::steady_clock::now();
    for (size_t i = 0; i < seq.size(); ++i) {
        tl::Frame frame = seq.frame(i);
        width = frame.width;
        height = frame.height;
        records.push_back(pipeline.process(frame));
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double fps = secs > 0 ? double(seq.size()) / secs : 0;

    const double ratio = pipeline.track_ratio();
    tl::TrackMeta meta{mode, width, height, ratio, full_res ? 1.0 : ratio};

    std::ostringstream out;
    tl::write_track_header(out, meta);
    for (tl::TrackRecord& rec : records) {
        if (full_res && !rec.lost) rec.box = tl::scaled(rec.box, 1.0 / ratio);
        tl::write_track_record(out, rec);
    }
    return {out.str(), fps};
}

int run_track(const TrackArgs& args) {
    tl::Config cfg = make_config(args.config_path, args.sets);

    std::vector<tl::ContourTemplate> templates;
    for (const std::string& path : args.templates)
        templates.push_back(tl::load_template(path));
    tl::Mode mode = args.mode.empty() ? (templates[0].kind == tl::TemplateKind::hand
                                             ? tl::Mode::hand
                                             : tl::Mode::foot)
                                      : tl::mode_from_string(args.mode);

    if (args.sequences.size() == 1) {
        TrackOutput result =
            run_track_one(args.sequences[0], templates, mode, cfg, args.full_res);
        std::ofstream file;
        open_out(file, args.out) << result.text;
        std::fprintf(stderr, "fps=%.2f\n", result.fps);
        return 0;
    }

    // several sequences: --out names a directory, --jobs fans out across them
    if (args.out.empty())
        throw tl::input_error("--out directory is required with multiple sequences");
    std::filesystem::create_directories(args.out);
    std::vector<TrackOutput> results(args.sequences.size());
    std::vector<std::string> errors(args.sequences.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, args.jobs))
#endif
    for (int i = 0; i < int(args.sequences.size()); ++i) {
        try {
            results[i] = run_track_one(args.sequences[i], templates, mode, cfg, args.full_res);
        } catch (const std::exception& e) {
            errors[i] = e.what();  // exceptions must not escape the parallel region
        }
    }
    for (size_t i = 0; i < args.sequences.size(); ++i)
        if (!errors[i].empty())
            throw tl::input_error(args.sequences[i] + ": " + errors[i]);

    for (size_t i = 0; i < args.sequences.size(); ++i) {
        std::filesystem::path name =
            std::filesystem::path(args.sequences[i]).filename().string() + std::string(".trk");
        std::ofstream out(std::filesystem::path(args.out) / name);
        out << results[i].text;
        std::fprintf(stderr, "%s fps=%.2f\n", args.sequences[i].c_str(), results[i].fps);
    }
    return 0;
}

int run_gestures(const std::string& track_path, const std::string& mode_str,
                 const std::string& config_path, const std::vector<std::string>& sets,
                 const std::string& out_path) {
    tl::Config cfg = make_config(config_path, sets);
    tl::TrackFile track = tl::read_track(track_path);
    tl::Mode mode = mode_str.empty() ? track.meta.mode : tl::mode_from_string(mode_str);

    auto samples = tl::trajectory_from_track(track, cfg.get_i("frame_interval_ms"));
    tl::GestureClassifier classifier(mode, tl::gesture_params_from_config(cfg));

    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << "# touchless-events v1\n";
    for (const tl::TrajectorySample& s : samples)
        for (const tl::GestureEvent& e : classifier.push(s)) tl::write_event(out, e);
    return 0;
}

void print_game_event(std::ostream& out, const tl::GameEvent& e) {
    char buf[160];
    if (!e.key.empty())
        std::snprintf(buf, sizeof buf, "event %d %.4f %s %s %.3f\n", e.step, e.t,
                      e.kind.c_str(), e.key.c_str(), e.value);
    else
        std::snprintf(buf, sizeof buf, "event %d %.4f %s %.3f\n", e.step, e.t, e.kind.c_str(),
                      e.value);
    out << buf;
}

int run_play(const std::string& game, const std::string& layout_path,
             const std::string& events_path, const std::string& track_path, int steps,
             const std::string& config_path, const std::vector<std::string>& sets,
             const std::string& out_path) {
    tl::Config cfg = make_config(config_path, sets);
    tl::GameLayout layout = tl::load_layout(layout_path);
    tl::ScreenMap map = screen_map_from_config(cfg);
    const double dt = cfg.get_d("game.dt");

    std::vector<tl::GestureEvent> events;
    if (!events_path.empty()) events = tl::read_events(events_path);

    std::vector<tl::TrajectorySample> cursor_track;
    if (!track_path.empty()) {
        tl::TrackFile track = tl::read_track(track_path);
        cursor_track = tl::trajectory_from_track(track, cfg.get_i("frame_interval_ms"));
    }

    if (steps <= 0) {
        double t_max = 1.0;
        for (const tl::GestureEvent& e : events) t_max = std::max(t_max, e.t_end + 0.5);
        if (!cursor_track.empty()) t_max = std::max(t_max, cursor_track.back().t + 0.5);
        steps = int(std::ceil(t_max / dt));
    }

    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    char buf[256];

    size_t next_event = 0;
    size_t next_cursor = 0;
    std::optional<tl::Pt2> cursor;

    auto advance_inputs = [&](double t) -> std::optional<tl::GestureEvent> {
        while (next_cursor < cursor_track.size() && cursor_track[next_cursor].t <= t)
            cursor = cursor_track[next_cursor++].center;
        if (next_event < events.size() && events[next_event].t_end <= t)
            return events[next_event++];
        return std::nullopt;
    };

    if (game == "bouncing_ball" || game == "football") {
        out << "# touchless-trace v1 game=" << game << "\n";
        tl::BallGame ball(layout.ball, map);
        for (int s = 0; s < steps; ++s) {
            double t = (s + 1) * dt;
            std::optional<tl::GestureEvent> ev = advance_inputs(t);
            auto game_events = ball.step(ev, cursor, dt);
            const tl::BallState& st = ball.state();
            std::snprintf(buf, sizeof buf,
                          "state %d %.4f %.3f %.3f %.3f %.3f %d %d %.3f %.3f %.3f\n", s + 1, t,
                          st.ball_pos.x, st.ball_pos.y, st.ball_vel.x, st.ball_vel.y,
                          st.held ? 1 : 0, st.score, st.speed_index, st.cursor.x, st.cursor.y);
            out << buf;
            for (const tl::GameEvent& e : game_events) print_game_event(out, e);
        }
    } else if (game == "foot_piano") {
        out << "# touchless-trace v1 game=foot_piano\n";
        tl::PianoGame piano(layout.piano, map);
        tl::PressDetector press(cfg.get_d("piano.press_dwell_s"));
        for (int s = 0; s < steps; ++s) {
            double t = (s + 1) * dt;
            advance_inputs(t);
            bool inside = false;
            if (cursor) {
                tl::Pt2 p = map.to_screen(*cursor);
                for (const tl::PianoKeyDef& k : piano.layout().keys)
                    if (k.region.contains(p)) {
                        inside = true;
                        break;
                    }
            }
            bool active = press.update(inside, dt);
            auto game_events = piano.step(cursor, active, dt);
            const tl::PianoState& st = piano.state();
            const char* code =
                st.active_key >= 0 ? piano.layout().keys[st.active_key].code.c_str() : "-";
            std::snprintf(buf, sizeof buf, "state %d %.4f %.3f %.3f %s %.4f %.3f\n", s + 1, t,
                          st.cursor.x, st.cursor.y, code, st.hold_s,
                          st.active_key >= 0 ? piano.progress() : 0.0);
            out << buf;
            for (const tl::GameEvent& e : game_events) print_game_event(out, e);
        }
    } else {
        throw tl::input_error("unknown game: " + game +
                              " (expected bouncing_ball, football or foot_piano)");
    }
    return 0;
}

struct SynthArgs {
    std::string template_path;
    double tpl_scale = 1.0;
    int width = 640, height = 480, frames = 1;
    uint64_t seed = 1;
    int interval_ms = 33;
    bool gray = false;
    bool no_texture = false;
    std::string trajectory = "static";
    double cx = -1, cy = -1;
    double vx = 0, vy = 0;
    double radius = 50, step_deg = 15;
    double scale_rate = 0, deform = 0, clutter = 0;
    std::string out;
};

int run_synth(const SynthArgs& args) {
    tl::Scenario sc;
    sc.tpl = tl::load_template(args.template_path);
    sc.tpl_scale = args.tpl_scale;
    sc.width = args.width;
    sc.height = args.height;
    sc.frames = args.frames;
    sc.seed = args.seed;
    sc.frame_interval_ms = args.interval_ms;
    sc.gray = args.gray;
    sc.fill_texture = !args.no_texture;
    sc.trajectory = tl::trajectory_from_string(args.trajectory);
    sc.start = {args.cx, args.cy};  // negative = frame center
    sc.velocity = {args.vx, args.vy};
    sc.radius = args.radius;
    sc.step_deg = args.step_deg;
    sc.scale_rate = args.scale_rate;
    sc.deform = args.deform;
    sc.clutter = args.clutter;

    tl::SynthResult result = tl::generate(sc);
    tl::write_dataset(result, args.out, sc.gray);
    std::fprintf(stderr, "wrote %zu frames to %s\n", result.frames.size(), args.out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"touch-less gesture tracking engine"};
    app.require_subcommand(1);

    TrackArgs track_args;
    CLI::App* track = app.add_subcommand("track", "run the detect+track pipeline");
    track->add_option("--seq", track_args.sequences, "sequence directory or list file")
        ->required();
    track->add_option("--template", track_args.templates, "contour template file")->required();
    track->add_option("--mode", track_args.mode, "hand|foot (default: template kind)");
    track->add_option("--config", track_args.config_path, "config file");
    track->add_option("--set", track_args.sets, "config override key=value");
    track->add_option("--out", track_args.out, "output track file (or directory)");
    track->add_flag("--full-res", track_args.full_res, "emit full-resolution coordinates");
    track->add_option("--jobs", track_args.jobs, "parallel sequences");

    std::string eval_track, eval_truth;
    double eval_fps = 0;
    CLI::App* eval = app.add_subcommand("eval", "compare a track against ground truth");
    eval->add_option("--track", eval_track, "track file")->required();
    eval->add_option("--truth", eval_truth, "truth.jsonl file")->required();
    eval->add_option("--fps", eval_fps, "fps figure to report");

    std::string g_track, g_mode, g_config, g_out;
    std::vector<std::string> g_sets;
    CLI::App* gestures = app.add_subcommand("gestures", "classify gestures from a track");
    gestures->add_option("--track", g_track, "track file")->required();
    gestures->add_option("--mode", g_mode, "hand|foot (default: track header)");
    gestures->add_option("--config", g_config, "config file");
    gestures->add_option("--set", g_sets, "config override key=value");
    gestures->add_option("--out", g_out, "output event file");

    std::string p_game, p_layout, p_events, p_track, p_config, p_out;
    std::vector<std::string> p_sets;
    int p_steps = 0;
    CLI::App* play = app.add_subcommand("play", "replay events through a game machine");
    play->add_option("--game", p_game, "bouncing_ball|football|foot_piano")->required();
    play->add_option("--layout", p_layout, "layout file")->required();
    play->add_option("--events", p_events, "gesture event file");
    play->add_option("--track", p_track, "track file as the cursor source");
    play->add_option("--steps", p_steps, "fixed step count (default: cover the inputs)");
    play->add_option("--config", p_config, "config file");
    play->add_option("--set", p_sets, "config override key=value");
    play->add_option("--out", p_out, "output trace file");

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic dataset");
    synth->add_option("--template", synth_args.template_path, "contour template file")
        ->required();
    synth->add_option("--tpl-scale", synth_args.tpl_scale, "template pre-scale");
    synth->add_option("--width", synth_args.width, "frame width");
    synth->add_option("--height", synth_args.height, "frame height");
    synth->add_option("--frames", synth_args.frames, "frame count");
    synth->add_option("--seed", synth_args.seed, "rng seed");
    synth->add_option("--interval-ms", synth_args.interval_ms, "frame interval");
    synth->add_flag("--gray", synth_args.gray, "write P5 grayscale frames");
    synth->add_flag("--no-texture", synth_args.no_texture, "disable fill texture");
    synth->add_option("--trajectory", synth_args.trajectory,
                      "static|linear|circular|scaling|deforming");
    synth->add_option("--cx", synth_args.cx, "target center x (default: frame center)");
    synth->add_option("--cy", synth_args.cy, "target center y");
    synth->add_option("--vx", synth_args.vx, "px/frame, linear");
    synth->add_option("--vy", synth_args.vy, "px/frame, linear");
    synth->add_option("--radius", synth_args.radius, "circle radius, circular");
    synth->add_option("--step-deg", synth_args.step_deg, "degrees/frame, circular");
    synth->add_option("--scale-rate", synth_args.scale_rate, "scale increment/frame");
    synth->add_option("--deform", synth_args.deform, "fixed length change, deforming");
    synth->add_option("--clutter", synth_args.clutter, "strokes per 100x100 px");
    synth->add_option("--out", synth_args.out, "output directory")->required();

    try {
        app.parse(argc, argv);
        if (track->parsed()) return run_track(track_args);
        if (eval->parsed()) {
            tl::EvalReport report =
                tl::evaluate(tl::read_track(eval_track), tl::read_truth(eval_truth), eval_fps);
            tl::print_report(std::cout, report);
            return 0;
        }
        if (gestures->parsed())
            return run_gestures(g_track, g_mode, g_config, g_sets, g_out);
        if (play->parsed())
            return run_play(p_game, p_layout, p_events, p_track, p_steps, p_config, p_sets,
                            p_out);
        if (synth->parsed()) return run_synth(synth_args);
        return 1;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const tl::input_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 2;
    }
}
