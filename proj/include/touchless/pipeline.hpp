#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "touchless/ctm.hpp"
#include "touchless/image.hpp"
#include "touchless/skin.hpp"
#include "touchless/tld.hpp"

namespace touchless {

enum class Mode { hand, foot };

const char* to_string(Mode mode);
Mode mode_from_string(const std::string& s);

struct PipelineParams {
    Mode mode = Mode::foot;
    double ctm_ratio = 0.25;    // first frame / re-detection scale
    double track_ratio = 0.125; // per-frame tracking scale
    int edge_threshold = 80;
    bool skin_gate = true;      // hand mode: restrict CTM by skin support
    SkinRange skin;
    bool skin_smoothing = true;
    CtmParams ctm;
    double ctm_accept_score = 0.4;  // minimum normalized CTM score for (re)init
    TldParams tld;

    // Default schedule: 25%/12.5% for foot, 12.5%/6.25% for hand.
    static PipelineParams for_mode(Mode mode);
};

struct TrackRecord {
    int frame_index = 0;
    bool lost = true;
    Box box;               // at tracking resolution
    double confidence = 0;
    double scale = 0;
};

// Per-sequence tracker: CTM localization on the first (and any lost) frame,
// TLD tracking in between, everything on the downscale schedule.
class Pipeline {
public:
    Pipeline(PipelineParams params, std::vector<ContourTemplate> templates);

    TrackRecord process(const Frame& frame);

    double track_ratio() const { return params_.track_ratio; }
    const PipelineParams& params() const { return params_; }

private:
    std::optional<Box> ctm_locate(const Frame& frame, const Frame& gray);

    PipelineParams params_;
    std::vector<ContourTemplate> ctm_templates_;  // pre-scaled to ctm_ratio
    TldTracker tld_;
    bool initialized_ = false;
    int frame_index_ = 0;
};

struct TrackMeta {
    Mode mode = Mode::foot;
    int width = 0, height = 0;   // source frame size
    double track_ratio = 0.125;  // pipeline tracking scale
    double coord_ratio = 0.125;  // resolution the stored coordinates are in
};

// Line format: frame_index status x_min y_min x_max y_max confidence scale,
// preceded by "# key=value" header lines carrying TrackMeta.
void write_track_header(std::ostream& out, const TrackMeta& meta);
void write_track_record(std::ostream& out, const TrackRecord& rec);

struct TrackFile {
    TrackMeta meta;
    std::vector<TrackRecord> records;
};
TrackFile read_track(const std::filesystem::path& path);

}  // namespace touchless
