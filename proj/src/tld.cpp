#include "touchless/tld.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "touchless/common.hpp"

namespace touchless {

Patch extract_patch(const GrayF& frame, const Box& box, int size) {
    Patch p;
    p.v.resize(size_t(size) * size);
    double sum = 0;
    for (int j = 0; j < size; ++j)
        for (int i = 0; i < size; ++i) {
            double x = box.x0 + (i + 0.5) * box.width() / size - 0.5;
            double y = box.y0 + (j + 0.5) * box.height() / size - 0.5;
            double v = frame.bilinear(x, y);
            p.v[size_t(j) * size + i] = float(v);
            sum += v;
        }
    const double mean = sum / double(p.v.size());
    double norm2 = 0;
    for (float& v : p.v) {
        v = float(v - mean);
        norm2 += double(v) * v;
    }
    if (norm2 < 1e-6) {
        std::fill(p.v.begin(), p.v.end(), 0.f);
        return p;  // flat window, invalid
    }
    const float inv = float(1.0 / std::sqrt(norm2));
    for (float& v : p.v) v *= inv;
    p.valid = true;
    return p;
}

double ncc(const Patch& a, const Patch& b) {
    if (!a.valid || !b.valid || a.v.size() != b.v.size()) return 0.0;
    double dot = 0;
    for (size_t i = 0; i < a.v.size(); ++i) dot += double(a.v[i]) * b.v[i];
    return std::clamp(dot, -1.0, 1.0);
}

void OnlineModel::add_positive(Patch p) {
    positives.push_back(std::move(p));
    while (positives.size() > pos_capacity) positives.pop_front();
}

void OnlineModel::add_negative(Patch p) {
    negatives.push_back(std::move(p));
    while (negatives.size() > neg_capacity) negatives.pop_front();
}

double OnlineModel::max_ncc_positive(const Patch& p) const {
    if (positives.empty()) throw invariant_error("online model has no positives");
    double best = -1;
    for (const Patch& q : positives) best = std::max(best, ncc(p, q));
    return best;
}

double OnlineModel::confidence(const Patch& p) const {
    double pos = max_ncc_positive(p);
    double neg = 0;
    for (const Patch& q : negatives) neg = std::max(neg, ncc(p, q));
    double s = std::clamp(pos - neg, -1.0, 1.0);
    return (s + 1.0) / 2.0;
}

std::vector<Roi> detect(const GrayF& frame, const OnlineModel& model, const Box& ref_box,
                        const TldParams& params) {
    std::vector<Box> windows;
    for (double s : params.scale_steps) {
        const double w = ref_box.width() * s;
        const double h = ref_box.height() * s;
        if (w < 3 || h < 3 || w > frame.width - 1 || h > frame.height - 1) continue;
        const int sx = std::max(1, int(std::lround(params.stride_frac * w)));
        const int sy = std::max(1, int(std::lround(params.stride_frac * h)));
        for (int y = 0; y + h <= frame.height - 1; y += sy)
            for (int x = 0; x + w <= frame.width - 1; x += sx)
                windows.push_back({double(x), double(y), x + w, y + h});
    }

    std::vector<double> conf(windows.size());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < int(windows.size()); ++i)
        conf[i] = model.confidence(extract_patch(frame, windows[i], params.patch_size));

    std::vector<int> order;
    for (int i = 0; i < int(windows.size()); ++i)
        if (conf[i] > params.detect_threshold) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (conf[a] != conf[b]) return conf[a] > conf[b];
        return a < b;
    });

    std::vector<Roi> kept;
    for (int i : order) {
        bool suppressed = false;
        for (const Roi& k : kept)
            if (iou(windows[i], k.box) >= params.nms_iou) {
                suppressed = true;
                break;
            }
        if (!suppressed) kept.push_back({windows[i], conf[i], 1.0, 0});
    }
    return kept;
}

void pn_learn(OnlineModel& model, const GrayF& frame, const Box& validated,
              const std::vector<Roi>& detections, const TldParams& params) {
    Patch p = extract_patch(frame, validated, params.patch_size);
    if (p.valid && model.max_ncc_positive(p) < params.novelty_ncc)
        model.add_positive(std::move(p));

    for (const Roi& det : detections) {
        if (iou(det.box, validated) >= params.neg_iou) continue;
        Patch n = extract_patch(frame, det.box, params.patch_size);
        if (n.valid) model.add_negative(std::move(n));
    }
}

std::optional<Roi> integrate(const std::optional<Box>& track_candidate,
                             const std::vector<Roi>& detections, const GrayF& frame,
                             const OnlineModel& model, const TldParams& params) {
    std::vector<Roi> candidates;
    if (track_candidate) {
        Patch p = extract_patch(frame, *track_candidate, params.patch_size);
        candidates.push_back({*track_candidate, model.confidence(p), 1.0, 0});
    }
    for (const Roi& d : detections) candidates.push_back(d);

    const Roi* best = nullptr;
    for (const Roi& c : candidates)
        if (!best || c.confidence > best->confidence) best = &c;  // tracker wins ties
    if (!best || best->confidence <= params.valid_threshold) return std::nullopt;
    return *best;
}

void TldTracker::init(const GrayF& frame, const Box& roi0) {
    if (roi0.x0 < 0 || roi0.y0 < 0 || roi0.x1 > frame.width - 1 ||
        roi0.y1 > frame.height - 1 || roi0.width() <= 1 || roi0.height() <= 1)
        throw input_error("initial ROI out of frame bounds");

    Patch p = extract_patch(frame, roi0, params_.patch_size);
    model_ = OnlineModel{params_.pos_capacity, params_.neg_capacity, {}, {}};
    model_.add_positive(std::move(p));
    prev_pyramid_ = build_flow_pyramid(frame, params_.median_flow.flow.max_levels);
    last_roi_ = {roi0, 1.0, 1.0, frame_index_};
    init_w_ = roi0.width();
    init_h_ = roi0.height();
    status_ = Status::tracking;
}

TldTracker::Result TldTracker::process(const GrayF& frame) {
    ++frame_index_;
    FlowPyramid pyramid = build_flow_pyramid(frame, params_.median_flow.flow.max_levels);

    std::optional<Box> track_candidate;
    if (status_ == Status::tracking) {
        auto bf = track_box(prev_pyramid_, pyramid, last_roi_.box, params_.median_flow);
        if (bf && bf->box.x0 >= 0 && bf->box.y0 >= 0 && bf->box.x1 <= frame.width - 1 &&
            bf->box.y1 <= frame.height - 1 && bf->box.width() > 1 && bf->box.height() > 1)
            track_candidate = bf->box;
    }

    std::vector<Roi> detections = detect(frame, model_, last_roi_.box, params_);
    std::optional<Roi> validated = integrate(track_candidate, detections, frame, model_, params_);

    Result result;
    if (validated) {
        validated->frame_index = frame_index_;
        validated->scale =
            std::sqrt((validated->box.width() / init_w_) * (validated->box.height() / init_h_));
        pn_learn(model_, frame, validated->box, detections, params_);
        last_roi_ = *validated;
        status_ = Status::tracking;
        result = {status_, *validated};
    } else {
        status_ = Status::lost;
        result = {status_, {}};
    }
    prev_pyramid_ = std::move(pyramid);
    return result;
}

}  // namespace touchless
