#pragma once

#include <iosfwd>

#include "touchless/pipeline.hpp"
#include "touchless/synth.hpp"

namespace touchless {

struct EvalReport {
    int frames = 0;
    int lost = 0;
    double success_rate = 0;  // fraction of frames with IoU >= 0.5 (lost = failure)
    double mean_err = 0;      // px center distance at tracking resolution
    double sd_err = 0;
    double max_err = 0;
    double fps = 0;           // supplied by the caller, not measured here
};

// Frame-aligned comparison at tracking resolution. Lost frames count against
// the success rate and are excluded from the error statistics.
EvalReport evaluate(const TrackFile& track, const std::vector<TruthRecord>& truth,
                    double fps = 0, double success_iou = 0.5);

void print_report(std::ostream& out, const EvalReport& report);

}  // namespace touchless
