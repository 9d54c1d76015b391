#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "touchless/flow.hpp"
#include "touchless/geometry.hpp"

namespace touchless {

// Zero-mean, unit-norm gray patch; valid == false for flat (zero-variance)
// windows, which correlate to 0 with everything.
struct Patch {
    std::vector<float> v;
    bool valid = false;
};

Patch extract_patch(const GrayF& frame, const Box& box, int size = 15);
double ncc(const Patch& a, const Patch& b);

struct TldParams {
    int patch_size = 15;
    size_t pos_capacity = 64;
    size_t neg_capacity = 128;
    double detect_threshold = 0.6;
    double valid_threshold = 0.55;
    double nms_iou = 0.5;
    double neg_iou = 0.2;      // detections farther than this from the validated
                               // box become negatives
    double novelty_ncc = 0.95; // positives closer than this are not re-added
    double scale_steps[3] = {0.8, 1.0, 1.2};
    double stride_frac = 0.10; // sliding-window stride as a fraction of side
    MedianFlowParams median_flow;
};

// Positive/negative patch lists with FIFO eviction at capacity.
struct OnlineModel {
    size_t pos_capacity = 64;
    size_t neg_capacity = 128;
    std::deque<Patch> positives;
    std::deque<Patch> negatives;

    void add_positive(Patch p);
    void add_negative(Patch p);
    double max_ncc_positive(const Patch& p) const;
    // (clamp(maxNCC+ - maxNCC-, -1, 1) + 1) / 2; empty negatives count as 0.
    double confidence(const Patch& p) const;
};

struct Roi {
    Box box;
    double confidence = 0;
    double scale = 1.0;  // size relative to the ROI the tracker was initialized on
    int frame_index = 0;
};

// Sliding windows at 0.8/1.0/1.2 of ref_box's size, scored by the model,
// thresholded and non-maximum suppressed. Deterministic ordering throughout.
std::vector<Roi> detect(const GrayF& frame, const OnlineModel& model, const Box& ref_box,
                        const TldParams& params);

// P-expert grows positives from the validated box (novelty gated); N-expert
// prunes by pushing far-away detections into the negatives.
void pn_learn(OnlineModel& model, const GrayF& frame, const Box& validated,
              const std::vector<Roi>& detections, const TldParams& params);

// Picks the most confident candidate; the tracker candidate wins ties.
// Returns nothing when no candidate exceeds valid_threshold.
std::optional<Roi> integrate(const std::optional<Box>& track_candidate,
                             const std::vector<Roi>& detections, const GrayF& frame,
                             const OnlineModel& model, const TldParams& params);

// One tracker instance per sequence: median-flow tracking, detection,
// integration and P-N learning per frame.
class TldTracker {
public:
    enum class Status { tracking, lost };

    explicit TldTracker(TldParams params = {}) : params_(std::move(params)) {}

    // Resets the model to the single patch of roi0. Throws input_error when
    // roi0 falls outside the frame.
    void init(const GrayF& frame, const Box& roi0);

    struct Result {
        Status status = Status::lost;
        Roi roi;
    };
    Result process(const GrayF& frame);

    Status status() const { return status_; }
    const Roi& last_roi() const { return last_roi_; }
    const OnlineModel& model() const { return model_; }

private:
    TldParams params_;
    OnlineModel model_;
    FlowPyramid prev_pyramid_;
    Roi last_roi_;
    Status status_ = Status::lost;
    int frame_index_ = 0;
    double init_w_ = 0, init_h_ = 0;
};

}  // namespace touchless
