#pragma once

#include <optional>
#include <vector>

#include "touchless/contour.hpp"
#include "touchless/geometry.hpp"
#include "touchless/image.hpp"

namespace touchless {

struct Shift {
    int x = 0;
    int y = 0;
    bool operator==(const Shift&) const = default;
};

// The shift set: a rectangle of displacements keeping the whole template
// inside the image, optionally thinned by a feasibility mask (skin gating).
struct ShiftDomain {
    int x0 = 0, y0 = 0, x1 = -1, y1 = -1;  // inclusive; x1 < x0 means empty
    std::vector<uint8_t> feasible;         // empty => every rect cell feasible

    int width() const { return x1 - x0 + 1; }
    int height() const { return y1 - y0 + 1; }
    int size() const { return empty() ? 0 : width() * height(); }
    bool empty() const { return x1 < x0 || y1 < y0; }

    int index(Shift s) const { return (s.y - y0) * width() + (s.x - x0); }
    Shift at(int i) const { return {x0 + i % width(), y0 + i / width()}; }

    bool in_rect(Shift s) const {
        return s.x >= x0 && s.x <= x1 && s.y >= y0 && s.y <= y1;
    }
    bool is_feasible(Shift s) const {
        return in_rect(s) && (feasible.empty() || feasible[index(s)]);
    }
    int feasible_count() const;

    // All in-bounds shifts for tpl on a w x h image.
    static ShiftDomain full(const ContourTemplate& tpl, int image_w, int image_h);
};

// Chebyshev-1 neighborhood of p within the domain, p itself included,
// in ascending (x, y) lexicographic order.
std::vector<Shift> neighbor_shifts(Shift p, const ShiftDomain& domain);

// Edge pixels covered by segment seg of tpl placed at shift.
int local_reward(const ContourTemplate& tpl, int seg, Shift shift, const EdgeImage& edges);

struct MatchResult {
    Box bbox;                   // tight bound of all shifted segment points
    int score = 0;              // edge pixels covered along the optimal path
    std::vector<Shift> shifts;  // one per segment
};

// Globally optimal segment placement under the unit-Chebyshev chain
// constraint between consecutive segments. Ties are broken toward the
// lexicographically smallest shift at every backtrack step.
// Throws input_error when the domain has no feasible shift.
MatchResult viterbi_match(const ContourTemplate& tpl, const EdgeImage& edges,
                          const ShiftDomain& domain);

struct CtmParams {
    double mask_coverage = 0.5;  // fraction of template points required on the mask
    int mask_dilate = 2;         // 3x3 dilation passes applied to the mask
};

struct CtmDetection {
    bool found = false;
    int template_id = -1;
    MatchResult match;
    double norm_score = 0;  // score / template point count
};

// Thins domain to shifts placing at least `coverage` of the template points
// on the support mask (callers dilate the raw skin mask first).
ShiftDomain restrict_to_mask(const ShiftDomain& domain, const ContourTemplate& tpl,
                             const SkinMask& support, double coverage);

// Best normalized match across templates; mask is optional (hand gating).
// found == false when no template has a feasible shift.
CtmDetection cb_template_matching(const EdgeImage& edges, const SkinMask* mask,
                                  const std::vector<ContourTemplate>& templates,
                                  const CtmParams& params = {});

}  // namespace touchless
