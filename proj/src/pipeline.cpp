#include "touchless/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace touchless {

const char* to_string(Mode mode) { return mode == Mode::hand ? "hand" : "foot"; }

Mode mode_from_string(const std::string& s) {
    if (s == "hand") return Mode::hand;
    if (s == "foot") return Mode::foot;
    throw input_error("unknown mode: " + s);
}

PipelineParams PipelineParams::for_mode(Mode mode) {
    PipelineParams p;
    p.mode = mode;
    if (mode == Mode::hand) {
        p.ctm_ratio = 0.125;
        p.track_ratio = 0.0625;
    } else {
        p.ctm_ratio = 0.25;
        p.track_ratio = 0.125;
        p.skin_gate = false;
    }
    return p;
}

Pipeline::Pipeline(PipelineParams params, std::vector<ContourTemplate> templates)
    : params_(std::move(params)), tld_(params_.tld) {
    if (templates.empty()) throw input_error("pipeline needs at least one template");
    for (const ContourTemplate& t : templates)
        ctm_templates_.push_back(scale_template(t, params_.ctm_ratio));
}

std::optional<Box> Pipeline::ctm_locate(const Frame& frame, const Frame& gray) {
    Frame small = downscale(gray, params_.ctm_ratio);
    EdgeImage edges = detect_edges(small, params_.edge_threshold);

    SkinMask mask;
    bool use_mask = params_.mode == Mode::hand && params_.skin_gate;
    if (use_mask) {
        if (frame.channels != 3)
            throw input_error("hand mode with skin gating requires RGB frames");
        Frame rgb_small = downscale(frame, params_.ctm_ratio);
        mask = detect_skin_regions(rgb_small, params_.skin, params_.skin_smoothing);
    }

    CtmDetection det =
        cb_template_matching(edges, use_mask ? &mask : nullptr, ctm_templates_, params_.ctm);
    if (!det.found || det.norm_score < params_.ctm_accept_score) return std::nullopt;

    const double f = params_.track_ratio / params_.ctm_ratio;
    return scaled(det.match.bbox, f);
}

TrackRecord Pipeline::process(const Frame& frame) {
    TrackRecord rec;
    rec.frame_index = frame_index_;

    Frame gray = to_grayscale(frame);

    auto reinit = [&]() {
        std::optional<Box> box0 = ctm_locate(frame, gray);
        if (!box0) return;
        GrayF track_frame = to_grayf(downscale(gray, params_.track_ratio));
        tld_.init(track_frame, *box0);
        initialized_ = true;
        rec.lost = false;
        rec.box = *box0;
        rec.confidence = 1.0;
        rec.scale = 1.0;
    };

    if (!initialized_ || tld_.status() == TldTracker::Status::lost) {
        reinit();
    } else {
        GrayF track_frame = to_grayf(downscale(gray, params_.track_ratio));
        TldTracker::Result res = tld_.process(track_frame);
        if (res.status == TldTracker::Status::tracking) {
            rec.lost = false;
            rec.box = res.roi.box;
            rec.confidence = res.roi.confidence;
            rec.scale = res.roi.scale;
        } else {
            reinit();  // CTM fallback on the current frame
        }
    }

    ++frame_index_;
    return rec;
}

void write_track_header(std::ostream& out, const TrackMeta& meta) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "# touchless-track v1\n# mode=%s width=%d height=%d track_ratio=%.6f "
                  "coord_ratio=%.6f\n",
                  to_string(meta.mode), meta.width, meta.height, meta.track_ratio,
                  meta.coord_ratio);
    out << buf;
}

void write_track_record(std::ostream& out, const TrackRecord& rec) {
    char buf[200];
    if (rec.lost) {
        std::snprintf(buf, sizeof buf, "%d lost 0 0 0 0 0 0\n", rec.frame_index);
    } else {
        std::snprintf(buf, sizeof buf, "%d tracking %.4f %.4f %.4f %.4f %.4f %.4f\n",
                      rec.frame_index, rec.box.x0, rec.box.y0, rec.box.x1, rec.box.y1,
                      rec.confidence, rec.scale);
    }
    out << buf;
}

TrackFile read_track(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open track file: " + path.string());

    TrackFile tf;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string kv;
            while (hs >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) continue;
                std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
                if (key == "mode") tf.meta.mode = mode_from_string(val);
                else if (key == "width") tf.meta.width = std::stoi(val);
                else if (key == "height") tf.meta.height = std::stoi(val);
                else if (key == "track_ratio") tf.meta.track_ratio = std::stod(val);
                else if (key == "coord_ratio") tf.meta.coord_ratio = std::stod(val);
            }
            continue;
        }
        std::istringstream ls(line);
        TrackRecord rec;
        std::string status;
        if (!(ls >> rec.frame_index >> status >> rec.box.x0 >> rec.box.y0 >> rec.box.x1 >>
              rec.box.y1 >> rec.confidence >> rec.scale))
            throw input_error("malformed track record: " + line);
        rec.lost = status == "lost";
        if (!rec.lost && status != "tracking")
            throw input_error("unknown track status: " + status);
        tf.records.push_back(rec);
    }
    return tf;
}

}  // namespace touchless
