#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "touchless/games.hpp"
#include "touchless/gestures.hpp"
#include "touchless/pipeline.hpp"

namespace touchless {

// Flat dotted-key configuration. Every key has a default; unknown keys are
// rejected so typos fail loudly.
class Config {
public:
    Config();

    // "key = value" lines, '#' comments
    void load_file(const std::filesystem::path& path);
    void set(const std::string& key, const std::string& value);
    void set_kv(const std::string& key_eq_value);  // "key=value"

    const std::string& get_s(const std::string& key) const;
    double get_d(const std::string& key) const;
    int get_i(const std::string& key) const;
    bool get_b(const std::string& key) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

PipelineParams pipeline_params_from_config(const Config& cfg, Mode mode);
GestureParams gesture_params_from_config(const Config& cfg);
ScreenMap screen_map_from_config(const Config& cfg);

}  // namespace touchless
