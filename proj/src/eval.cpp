#include "touchless/eval.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace touchless {

EvalReport evaluate(const TrackFile& track, const std::vector<TruthRecord>& truth,
                    double fps, double success_iou) {
    if (track.records.size() != truth.size())
        throw input_error("frame-count mismatch between track and truth");

    EvalReport report;
    report.frames = int(truth.size());
    report.fps = fps;

    const double r = track.meta.track_ratio;
    const double to_track = track.meta.coord_ratio > 0 ? r / track.meta.coord_ratio : 1.0;

    std::vector<double> errs;
    int successes = 0;
    for (size_t i = 0; i < truth.size(); ++i) {
        const TrackRecord& rec = track.records[i];
        if (rec.frame_index != truth[i].frame)
            throw input_error("track and truth are not frame-aligned");
        if (rec.lost) {
            ++report.lost;
            continue;
        }
        Box t = scaled(rec.box, to_track);
        Box g = scaled(truth[i].bbox, r);
        if (iou(t, g) >= success_iou) ++successes;
        errs.push_back(distance(t.center(), g.center()));
    }

    report.success_rate = report.frames > 0 ? double(successes) / report.frames : 0;
    if (!errs.empty()) {
        double sum = 0, max = 0;
        for (double e : errs) {
            sum += e;
            max = std::max(max, e);
        }
        report.mean_err = sum / double(errs.size());
        report.max_err = max;
        double var = 0;
        for (double e : errs) var += (e - report.mean_err) * (e - report.mean_err);
        report.sd_err = std::sqrt(var / double(errs.size()));
    }
    return report;
}

void print_report(std::ostream& out, const EvalReport& report) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "frames=%d\nlost=%d\nsuccess_rate=%.4f\nmean_err=%.4f\nsd_err=%.4f\n"
                  "max_err=%.4f\nfps=%.2f\n",
                  report.frames, report.lost, report.success_rate, report.mean_err,
                  report.sd_err, report.max_err, report.fps);
    out << buf;
}

}  // namespace touchless
