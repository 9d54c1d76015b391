#include "touchless/ctm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace touchless {

int ShiftDomain::feasible_count() const {
    if (empty()) return 0;
    if (feasible.empty()) return size();
    return int(std::accumulate(feasible.begin(), feasible.end(), size_t(0)));
}

ShiftDomain ShiftDomain::full(const ContourTemplate& tpl, int image_w, int image_h) {
    ShiftDomain d;
    d.x0 = 0;
    d.y0 = 0;
    d.x1 = image_w - tpl.bbox_w;
    d.y1 = image_h - tpl.bbox_h;
    return d;  // empty when the template does not fit
}

std::vector<Shift> neighbor_shifts(Shift p, const ShiftDomain& domain) {
    std::vector<Shift> out;
    out.reserve(9);
    for (int x = p.x - 1; x <= p.x + 1; ++x)
        for (int y = p.y - 1; y <= p.y + 1; ++y)
            if (domain.is_feasible({x, y})) out.push_back({x, y});
    return out;
}

int local_reward(const ContourTemplate& tpl, int seg, Shift shift, const EdgeImage& edges) {
    auto [b, e] = tpl.segment_span(seg);
    int reward = 0;
    for (int i = b; i < e; ++i) {
        int x = tpl.points[i].x + shift.x;
        int y = tpl.points[i].y + shift.y;
        if (x < 0 || x >= edges.width || y < 0 || y >= edges.height) continue;
        reward += edges.at(x, y);
    }
    return reward;
}

MatchResult viterbi_match(const ContourTemplate& tpl, const EdgeImage& edges,
                          const ShiftDomain& domain) {
    if (domain.empty() || domain.feasible_count() == 0)
        throw input_error("shift domain is empty");

    const int n_nodes = domain.size();
    const int n_segs = tpl.segment_count();
    const int dw = domain.width();

    std::vector<int32_t> prev(n_nodes), cur(n_nodes);
    // back[(i-1)*n_nodes + n]: predecessor node of n in column i
    std::vector<int32_t> back(size_t(std::max(0, n_segs - 1)) * n_nodes, -1);

#pragma omp parallel for schedule(static)
    for (int n = 0; n < n_nodes; ++n) {
        Shift s = domain.at(n);
        cur[n] = domain.is_feasible(s) ? local_reward(tpl, 0, s, edges) : -1;
    }

    for (int col = 1; col < n_segs; ++col) {
        std::swap(prev, cur);
        int32_t* bp = &back[size_t(col - 1) * n_nodes];
#pragma omp parallel for schedule(static)
        for (int n = 0; n < n_nodes; ++n) {
            Shift s = domain.at(n);
            if (!domain.is_feasible(s)) {
                cur[n] = -1;
                continue;
            }
            // scan sigma(s) in ascending (x, y) lexicographic order so the
            // first maximum seen is the tie-break winner
            int32_t best = -1;
            int32_t best_idx = -1;
            for (int x = s.x - 1; x <= s.x + 1; ++x) {
                if (x < domain.x0 || x > domain.x1) continue;
                for (int y = s.y - 1; y <= s.y + 1; ++y) {
                    if (y < domain.y0 || y > domain.y1) continue;
                    int idx = (y - domain.y0) * dw + (x - domain.x0);
                    if (prev[idx] > best) {
                        best = prev[idx];
                        best_idx = idx;
                    }
                }
            }
            if (best < 0) {
                cur[n] = -1;  // no feasible predecessor
            } else {
                cur[n] = best + local_reward(tpl, col, s, edges);
                bp[n] = best_idx;
            }
        }
    }

    // highest R in the last column, lexicographic smallest shift on ties
    int32_t best = -1;
    int best_idx = -1;
    for (int x = domain.x0; x <= domain.x1; ++x)
        for (int y = domain.y0; y <= domain.y1; ++y) {
            int idx = (y - domain.y0) * dw + (x - domain.x0);
            if (cur[idx] > best) {
                best = cur[idx];
                best_idx = idx;
            }
        }
    if (best_idx < 0) throw input_error("no feasible path through the trellis");

    MatchResult result;
    result.score = best;
    result.shifts.resize(n_segs);
    int node = best_idx;
    for (int col = n_segs - 1; col >= 0; --col) {
        result.shifts[col] = domain.at(node);
        if (col > 0) node = back[size_t(col - 1) * n_nodes + node];
    }

    int min_x = std::numeric_limits<int>::max(), min_y = min_x;
    int max_x = std::numeric_limits<int>::min(), max_y = max_x;
    for (int seg = 0; seg < n_segs; ++seg) {
        auto [b, e] = tpl.segment_span(seg);
        for (int i = b; i < e; ++i) {
            int x = tpl.points[i].x + result.shifts[seg].x;
            int y = tpl.points[i].y + result.shifts[seg].y;
            min_x = std::min(min_x, x);
            min_y = std::min(min_y, y);
            max_x = std::max(max_x, x);
            max_y = std::max(max_y, y);
        }
    }
    result.bbox = {double(min_x), double(min_y), double(max_x), double(max_y)};
    return result;
}

ShiftDomain restrict_to_mask(const ShiftDomain& domain, const ContourTemplate& tpl,
                             const SkinMask& support, double coverage) {
    ShiftDomain out = domain;
    out.feasible.assign(size_t(domain.size()), 0);
    const int needed = int(std::ceil(coverage * double(tpl.points.size())));
#pragma omp parallel for schedule(static)
    for (int n = 0; n < domain.size(); ++n) {
        Shift s = domain.at(n);
        if (!domain.is_feasible(s)) continue;
        int on = 0;
        for (const IPt& p : tpl.points) {
            int x = p.x + s.x;
            int y = p.y + s.y;
            if (x >= 0 && x < support.width && y >= 0 && y < support.height)
                on += support.at(x, y);
        }
        out.feasible[n] = on >= needed ? 1 : 0;
    }
    return out;
}

CtmDetection cb_template_matching(const EdgeImage& edges, const SkinMask* mask,
                                  const std::vector<ContourTemplate>& templates,
                                  const CtmParams& params) {
    if (templates.empty()) throw input_error("no templates supplied");

    SkinMask support;
    if (mask) support = dilate3x3(*mask, params.mask_dilate);

    CtmDetection best;
    for (int id = 0; id < int(templates.size()); ++id) {
        const ContourTemplate& tpl = templates[id];
        ShiftDomain domain = ShiftDomain::full(tpl, edges.width, edges.height);
        if (domain.empty()) continue;
        if (mask) {
            domain = restrict_to_mask(domain, tpl, support, params.mask_coverage);
            if (domain.feasible_count() == 0) continue;
        }
        MatchResult match = viterbi_match(tpl, edges, domain);
        double norm = double(match.score) / double(tpl.points.size());
        if (!best.found || norm > best.norm_score) {
            best.found = true;
            best.template_id = id;
            best.match = std::move(match);
            best.norm_score = norm;
        }
    }
    return best;
}

}  // namespace touchless
