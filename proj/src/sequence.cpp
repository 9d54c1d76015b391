#include "touchless/sequence.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace touchless {

namespace fs = std::filesystem;

namespace {

// Skips whitespace and '#' comments between PNM header tokens.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (!isspace(c)) {
            tok.push_back(char(c));
            break;
        }
    }
    while ((c = in.get()) != EOF && !isspace(c)) tok.push_back(char(c));
    return tok;
}

}  // namespace

Frame read_pnm(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open image: " + path.string());

    std::string magic = next_token(in);
    int channels;
    if (magic == "P5")
        channels = 1;
    else if (magic == "P6")
        channels = 3;
    else
        throw input_error("unsupported image format in " + path.string() +
                          " (want binary P5/P6)");

    int w = 0, h = 0, maxval = 0;
    try {
        w = std::stoi(next_token(in));
        h = std::stoi(next_token(in));
        maxval = std::stoi(next_token(in));
    } catch (const std::exception&) {
        throw input_error("malformed header in " + path.string());
    }
    if (w <= 0 || h <= 0) throw input_error("bad dimensions in " + path.string());
    if (maxval != 255) throw input_error("only 8-bit images supported: " + path.string());

    Frame frame(w, h, channels);
    in.read(reinterpret_cast<char*>(frame.pixels.data()),
            std::streamsize(frame.pixels.size()));
    if (size_t(in.gcount()) != frame.pixels.size())
        throw input_error("truncated image data in " + path.string());
    return frame;
}

void write_pnm(const fs::path& path, const Frame& frame) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write image: " + path.string());
    out << (frame.channels == 1 ? "P5" : "P6") << "\n"
        << frame.width << " " << frame.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.pixels.data()),
              std::streamsize(frame.pixels.size()));
    if (!out) throw input_error("short write: " + path.string());
}

FrameSequence FrameSequence::open(const fs::path& path, const SequenceOptions& options) {
    FrameSequence seq;
    fs::path dir;

    if (fs::is_directory(path)) {
        dir = path;
        for (const auto& entry : fs::directory_iterator(path)) {
            if (!entry.is_regular_file()) continue;
            auto ext = entry.path().extension().string();
            if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm")
                seq.files_.push_back(entry.path());
        }
        std::sort(seq.files_.begin(), seq.files_.end());
    } else if (fs::is_regular_file(path)) {
        // list file: one image path per line, relative to the list's directory
        dir = path.parent_path();
        std::ifstream in(path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            fs::path p(line);
            seq.files_.push_back(p.is_absolute() ? p : dir / p);
        }
    } else {
        throw input_error("sequence path not found: " + path.string());
    }

    if (seq.files_.empty()) throw input_error("empty sequence: " + path.string());

    fs::path side = dir / "timestamps.txt";
    if (fs::exists(side)) {
        std::ifstream in(side);
        int64_t t;
        while (in >> t) seq.timestamps_.push_back(t);
        if (seq.timestamps_.size() != seq.files_.size())
            throw input_error("timestamps.txt entry count does not match frame count");
        for (size_t i = 0; i < seq.timestamps_.size(); ++i) {
            if (seq.timestamps_[i] < 0 || (i > 0 && seq.timestamps_[i] <= seq.timestamps_[i - 1]))
                throw input_error("timestamps must be nonnegative and strictly increasing");
        }
    } else {
        for (size_t i = 0; i < seq.files_.size(); ++i)
            seq.timestamps_.push_back(int64_t(i) * options.frame_interval_ms);
    }
    return seq;
}

Frame FrameSequence::frame(size_t i) {
    Frame f = read_pnm(files_.at(i));
    f.timestamp_ms = timestamps_[i];
    if (width_ == 0) {
        width_ = f.width;
        height_ = f.height;
    } else if (f.width != width_ || f.height != height_) {
        std::ostringstream msg;
        msg << "dimension mismatch in sequence: " << files_[i].string() << " is "
            << f.width << "x" << f.height << ", expected " << width_ << "x" << height_;
        throw input_error(msg.str());
    }
    return f;
}

std::vector<Frame> FrameSequence::load_all() {
    std::vector<Frame> frames;
    frames.reserve(size());
    for (size_t i = 0; i < size(); ++i) frames.push_back(frame(i));
    return frames;
}

}  // namespace touchless
