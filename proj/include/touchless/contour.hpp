#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "touchless/common.hpp"

namespace touchless {

enum class TemplateKind { hand, foot };

const char* to_string(TemplateKind kind);
TemplateKind template_kind_from_string(const std::string& s);

struct IPt {
    int x = 0;
    int y = 0;
    bool operator==(const IPt&) const = default;
};

// Ordered contour points, origin at the bounding-box top-left, decomposed
// into consecutive runs of seg_len points (a shorter remainder is kept).
struct ContourTemplate {
    std::vector<IPt> points;
    int seg_len = 3;
    TemplateKind kind = TemplateKind::hand;
    int bbox_w = 0;
    int bbox_h = 0;

    int segment_count() const {
        return int((points.size() + seg_len - 1) / size_t(seg_len));
    }
    // [begin, end) point range of segment i
    std::pair<int, int> segment_span(int i) const {
        int b = i * seg_len;
        int e = std::min(int(points.size()), b + seg_len);
        return {b, e};
    }
};

// Normalizes points to a (0,0) bbox origin and validates.
ContourTemplate segment_template(std::vector<IPt> points, int seg_len, TemplateKind kind);

// Uniform geometric scaling; consecutive duplicate points after rounding are
// dropped so one point still stands for roughly one pixel of arc.
ContourTemplate scale_template(const ContourTemplate& tpl, double factor);

// Text format: first line "seg_len kind", then one "x y" pair per line.
ContourTemplate load_template(const std::filesystem::path& path);
void save_template(const std::filesystem::path& path, const ContourTemplate& tpl);

}  // namespace touchless
