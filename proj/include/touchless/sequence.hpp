#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "touchless/image.hpp"

namespace touchless {

// Binary PGM (P5) / PPM (P6), 8-bit only.
Frame read_pnm(const std::filesystem::path& path);
void write_pnm(const std::filesystem::path& path, const Frame& frame);

struct SequenceOptions {
    int64_t frame_interval_ms = 33;  // used when no timestamps.txt sidecar exists
};

// Ordered frame stream from a directory of stills or a list file. Frames are
// visited in filename-sorted order (list files keep their own order). All
// frames must share one geometry; timestamps are strictly increasing.
class FrameSequence {
public:
    static FrameSequence open(const std::filesystem::path& path,
                              const SequenceOptions& options = {});

    size_t size() const { return files_.size(); }
    // Loads frame i; validates dimensions against the first frame read.
    Frame frame(size_t i);

    // Convenience for tests and batch tools.
    std::vector<Frame> load_all();

private:
    std::vector<std::filesystem::path> files_;
    std::vector<int64_t> timestamps_;
    int width_ = 0, height_ = 0;
};

}  // namespace touchless
