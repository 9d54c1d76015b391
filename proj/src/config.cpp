#include "touchless/config.hpp"

#include <fstream>
#include <sstream>

namespace touchless {

namespace {

const std::map<std::string, std::string>& default_values() {
    static const std::map<std::string, std::string> defaults = {
        {"threads", "0"},
        {"edge_threshold", "80"},
        {"frame_interval_ms", "33"},
        {"skin.h_min", "0"},
        {"skin.h_max", "50"},
        {"skin.s_min", "0.20"},
        {"skin.s_max", "0.75"},
        {"skin.v_min", "0.25"},
        {"skin.v_max", "1.0"},
        {"skin.smoothing", "true"},
        {"ctm.mask_coverage", "0.5"},
        {"ctm.mask_dilate", "2"},
        {"ctm.accept_score", "0.4"},
        {"ctm.skin_gate", "true"},
        {"pyramid.ctm_ratio", "0"},    // 0 = mode default (0.25 foot / 0.125 hand)
        {"pyramid.track_ratio", "0"},  // 0 = mode default (0.125 foot / 0.0625 hand)
        {"tld.patch_size", "15"},
        {"tld.pos_capacity", "64"},
        {"tld.neg_capacity", "128"},
        {"tld.detect_threshold", "0.6"},
        {"tld.valid_threshold", "0.55"},
        {"tld.nms_iou", "0.5"},
        {"tld.neg_iou", "0.2"},
        {"tld.novelty_ncc", "0.95"},
        {"tld.stride_frac", "0.10"},
        {"tld.grid", "10"},
        {"tld.min_survivors", "0.25"},
        {"flow.win_radius", "4"},
        {"flow.iterations", "20"},
        {"flow.min_eig", "0.05"},
        {"flow.max_levels", "3"},
        {"gesture.v_idle", "20"},
        {"gesture.v_fast", "300"},
        {"gesture.window_s", "0.4"},
        {"gesture.flex_depth", "0.20"},
        {"gesture.d_click", "15"},
        {"game.dt", "0.033333333333333333"},
        {"game.cam_w", "640"},
        {"game.cam_h", "480"},
        {"game.scr_w", "1280"},
        {"game.scr_h", "720"},
        {"piano.press_dwell_s", "0.1"},
    };
    return defaults;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Config::Config() : values_(default_values()) {}

void Config::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open config file: " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw input_error("config line " + std::to_string(lineno) + " is not key = value");
        set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void Config::set(const std::string& key, const std::string& value) {
    auto it = values_.find(key);
    if (it == values_.end()) throw input_error("unknown config key: " + key);
    it->second = value;
}

void Config::set_kv(const std::string& key_eq_value) {
    auto eq = key_eq_value.find('=');
    if (eq == std::string::npos)
        throw input_error("expected key=value, got: " + key_eq_value);
    set(trim(key_eq_value.substr(0, eq)), trim(key_eq_value.substr(eq + 1)));
}

const std::string& Config::get_s(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw input_error("unknown config key: " + key);
    return it->second;
}

double Config::get_d(const std::string& key) const {
    try {
        return std::stod(get_s(key));
    } catch (const std::exception&) {
        throw input_error("config key " + key + " is not a number: " + get_s(key));
    }
}

int Config::get_i(const std::string& key) const {
    try {
        return std::stoi(get_s(key));
    } catch (const std::exception&) {
        throw input_error("config key " + key + " is not an integer: " + get_s(key));
    }
}

bool Config::get_b(const std::string& key) const {
    const std::string& v = get_s(key);
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw input_error("config key " + key + " is not a boolean: " + v);
}

PipelineParams pipeline_params_from_config(const Config& cfg, Mode mode) {
    PipelineParams p = PipelineParams::for_mode(mode);
    if (double r = cfg.get_d("pyramid.ctm_ratio"); r > 0) p.ctm_ratio = r;
    if (double r = cfg.get_d("pyramid.track_ratio"); r > 0) p.track_ratio = r;
    p.edge_threshold = cfg.get_i("edge_threshold");
    p.skin_gate = mode == Mode::hand && cfg.get_b("ctm.skin_gate");
    p.skin = {cfg.get_d("skin.h_min"), cfg.get_d("skin.h_max"), cfg.get_d("skin.s_min"),
              cfg.get_d("skin.s_max"), cfg.get_d("skin.v_min"), cfg.get_d("skin.v_max")};
    p.skin_smoothing = cfg.get_b("skin.smoothing");
    p.ctm.mask_coverage = cfg.get_d("ctm.mask_coverage");
    p.ctm.mask_dilate = cfg.get_i("ctm.mask_dilate");
    p.ctm_accept_score = cfg.get_d("ctm.accept_score");

    TldParams& t = p.tld;
    t.patch_size = cfg.get_i("tld.patch_size");
    t.pos_capacity = size_t(cfg.get_i("tld.pos_capacity"));
    t.neg_capacity = size_t(cfg.get_i("tld.neg_capacity"));
    t.detect_threshold = cfg.get_d("tld.detect_threshold");
    t.valid_threshold = cfg.get_d("tld.valid_threshold");
    t.nms_iou = cfg.get_d("tld.nms_iou");
    t.neg_iou = cfg.get_d("tld.neg_iou");
    t.novelty_ncc = cfg.get_d("tld.novelty_ncc");
    t.stride_frac = cfg.get_d("tld.stride_frac");
    t.median_flow.grid = cfg.get_i("tld.grid");
    t.median_flow.min_survivors = cfg.get_d("tld.min_survivors");
    t.median_flow.flow.win_radius = cfg.get_i("flow.win_radius");
    t.median_flow.flow.iterations = cfg.get_i("flow.iterations");
    t.median_flow.flow.min_eig = cfg.get_d("flow.min_eig");
    t.median_flow.flow.max_levels = cfg.get_i("flow.max_levels");
    return p;
}

GestureParams gesture_params_from_config(const Config& cfg) {
    GestureParams g;
    g.v_idle = cfg.get_d("gesture.v_idle");
    g.v_fast = cfg.get_d("gesture.v_fast");
    g.window_s = cfg.get_d("gesture.window_s");
    g.flex_depth = cfg.get_d("gesture.flex_depth");
    g.d_click = cfg.get_d("gesture.d_click");
    return g;
}

ScreenMap screen_map_from_config(const Config& cfg) {
    return {cfg.get_d("game.cam_w"), cfg.get_d("game.cam_h"), cfg.get_d("game.scr_w"),
            cfg.get_d("game.scr_h")};
}

}  // namespace touchless
