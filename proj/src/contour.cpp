#include "touchless/contour.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace touchless {

const char* to_string(TemplateKind kind) {
    return kind == TemplateKind::hand ? "hand" : "foot";
}

TemplateKind template_kind_from_string(const std::string& s) {
    if (s == "hand") return TemplateKind::hand;
    if (s == "foot") return TemplateKind::foot;
    throw input_error("unknown template kind: " + s);
}

ContourTemplate segment_template(std::vector<IPt> points, int seg_len, TemplateKind kind) {
    if (points.empty()) throw input_error("empty template point list");
    if (seg_len < 1) throw input_error("segment length must be >= 1");

    int mx = std::numeric_limits<int>::max();
    int my = std::numeric_limits<int>::max();
    for (const IPt& p : points) {
        mx = std::min(mx, p.x);
        my = std::min(my, p.y);
    }
    ContourTemplate tpl;
    tpl.seg_len = seg_len;
    tpl.kind = kind;
    tpl.points.reserve(points.size());
    for (const IPt& p : points) tpl.points.push_back({p.x - mx, p.y - my});
    for (const IPt& p : tpl.points) {
        tpl.bbox_w = std::max(tpl.bbox_w, p.x + 1);
        tpl.bbox_h = std::max(tpl.bbox_h, p.y + 1);
    }
    return tpl;
}

ContourTemplate scale_template(const ContourTemplate& tpl, double factor) {
    if (factor <= 0) throw input_error("scale factor must be positive");
    std::vector<IPt> pts;
    pts.reserve(tpl.points.size());
    for (const IPt& p : tpl.points) {
        IPt q{int(std::lround(p.x * factor)), int(std::lround(p.y * factor))};
        if (pts.empty() || !(q == pts.back())) pts.push_back(q);
    }
    if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
    return segment_template(std::move(pts), tpl.seg_len, tpl.kind);
}

ContourTemplate load_template(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw input_error("template not found: " + path.string());
    int seg_len;
    std::string kind;
    if (!(in >> seg_len >> kind)) throw input_error("malformed template header: " + path.string());
    std::vector<IPt> points;
    int x, y;
    while (in >> x >> y) points.push_back({x, y});
    if (points.empty()) throw input_error("template has no points: " + path.string());
    return segment_template(std::move(points), seg_len, template_kind_from_string(kind));
}

void save_template(const std::filesystem::path& path, const ContourTemplate& tpl) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write template: " + path.string());
    out << tpl.seg_len << " " << to_string(tpl.kind) << "\n";
    for (const IPt& p : tpl.points) out << p.x << " " << p.y << "\n";
}

}  // namespace touchless
