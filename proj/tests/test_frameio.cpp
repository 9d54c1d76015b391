#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "touchless/common.hpp"
#include "touchless/image.hpp"
#include "touchless/reference.hpp"
#include "touchless/sequence.hpp"

using namespace touchless;
namespace fs = std::filesystem;

namespace {

Frame solid(int w, int h, uint8_t r, uint8_t g, uint8_t b) {
    Frame f(w, h, 3);
    for (int i = 0; i < w * h; ++i) {
        f.pixels[3 * i] = r;
        f.pixels[3 * i + 1] = g;
        f.pixels[3 * i + 2] = b;
    }
    return f;
}

fs::path fresh_dir(const char* name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_SUITE("frameio") {

TEST_CASE("grayscale conversion") {
    Frame f = solid(4, 4, 255, 255, 255);
    CHECK(to_grayscale(f).pixels[0] == 255);
    f = solid(4, 4, 0, 0, 0);
    CHECK(to_grayscale(f).pixels[0] == 0);
    f = solid(4, 4, 255, 0, 0);
    CHECK(to_grayscale(f).pixels[0] == 76);  // round(0.299 * 255)

    Frame gray(4, 4, 1, 42);
    gray.pixels[5] = 17;
    Frame back = to_grayscale(gray);
    CHECK(back.pixels == gray.pixels);
    CHECK(back.timestamp_ms == 42);
}

TEST_CASE("edges: uniform frame has none") {
    Frame f(16, 16, 1);
    std::fill(f.pixels.begin(), f.pixels.end(), uint8_t(77));
    EdgeImage e = detect_edges(f, 80);
    CHECK(e.count() == 0);
}

TEST_CASE("edges: vertical step forms a vertical band") {
    Frame f(16, 16, 1);
    for (int y = 0; y < 16; ++y)
        for (int x = 8; x < 16; ++x) f.at(x, y) = 255;
    EdgeImage e = detect_edges(f, 100);
    CHECK(e.count() > 0);
    for (int y = 1; y < 15; ++y)
        for (int x = 1; x < 15; ++x)
            if (e.at(x, y)) CHECK((x == 7 || x == 8));
    // borders stay clear
    for (int x = 0; x < 16; ++x) {
        CHECK(e.at(x, 0) == 0);
        CHECK(e.at(x, 15) == 0);
    }
}

TEST_CASE("edges: single bright pixel against a hand-evaluated 3x3 oracle") {
    Frame f(5, 5, 1);
    f.at(2, 2) = 255;
    EdgeImage e = detect_edges(f, 100);
    // Sobel around the impulse: all 8 neighbors respond, the center cancels
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x) {
            bool border = x == 0 || y == 0 || x == 4 || y == 4;
            bool neighbor = !border && !(x == 2 && y == 2);
            CHECK(int(e.at(x, y)) == (neighbor ? 1 : 0));
        }
}

TEST_CASE("edges: errors") {
    Frame tiny(2, 2, 1);
    CHECK_THROWS_AS(detect_edges(tiny, 80), input_error);
    Frame ok(8, 8, 1);
    CHECK_THROWS_AS(detect_edges(ok, 0), input_error);
}

TEST_CASE("edges: translation covariance on interior pixels") {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        Frame f(20, 20, 1);
        for (auto& p : f.pixels) p = uint8_t(rng.uniform_int(0, 255));
        const int dx = rng.uniform_int(0, 4), dy = rng.uniform_int(0, 4);
        Frame g(20, 20, 1);
        for (int y = 0; y < 20; ++y)
            for (int x = 0; x < 20; ++x)
                if (x - dx >= 0 && y - dy >= 0) g.at(x, y) = f.at(x - dx, y - dy);
        EdgeImage ef = detect_edges(f, 60);
        EdgeImage eg = detect_edges(g, 60);
        for (int y = 1; y < 20 - 1 - dy; ++y)
            for (int x = 1; x < 20 - 1 - dx; ++x)
                CHECK(int(ef.at(x, y)) == int(eg.at(x + dx, y + dy)));
    }
}

TEST_CASE("downscale: ratio table and identity") {
    Frame f(640, 480, 1);
    Frame q = downscale(f, 0.25);
    CHECK(q.width == 160);
    CHECK(q.height == 120);

    Rng rng(3);
    Frame r(16, 16, 3);
    for (auto& p : r.pixels) p = uint8_t(rng.uniform_int(0, 255));
    Frame same = downscale(r, 1.0);
    CHECK(same.pixels == r.pixels);

    CHECK_THROWS_AS(downscale(f, 0.3), input_error);
    Frame small(16, 16, 1);
    CHECK_THROWS_AS(downscale(small, 0.0625), input_error);  // 1x1 output
}

TEST_CASE("downscale: checkerboard box mean rounds to 128") {
    Frame f(16, 16, 1);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) f.at(x, y) = ((x + y) % 2) ? 255 : 0;
    Frame h = downscale(f, 0.5);
    for (uint8_t p : h.pixels) CHECK(int(p) == 128);
}

TEST_CASE("downscale: OR-pooling keeps any set bit") {
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        BinaryImage b(16, 16);
        for (auto& bit : b.bits) bit = rng.uniform() < 0.1 ? 1 : 0;
        BinaryImage h = downscale(b, 0.5);
        for (int oy = 0; oy < 8; ++oy)
            for (int ox = 0; ox < 8; ++ox) {
                int any = b.at(2 * ox, 2 * oy) | b.at(2 * ox + 1, 2 * oy) |
                          b.at(2 * ox, 2 * oy + 1) | b.at(2 * ox + 1, 2 * oy + 1);
                CHECK(int(h.at(ox, oy)) == any);
            }
    }
}

TEST_CASE("parallel kernels match the serial reference") {
    Rng rng(5);
    Frame rgb(67, 43, 3);
    for (auto& p : rgb.pixels) p = uint8_t(rng.uniform_int(0, 255));
    CHECK(to_grayscale(rgb).pixels == serial::to_grayscale(rgb).pixels);

    Frame gray = to_grayscale(rgb);
    CHECK(detect_edges(gray, 60).bits == serial::detect_edges(gray, 60).bits);

    Frame big(128, 96, 3);
    for (auto& p : big.pixels) p = uint8_t(rng.uniform_int(0, 255));
    CHECK(downscale(big, 0.25).pixels == serial::downscale(big, 0.25).pixels);

    BinaryImage b(64, 64);
    for (auto& bit : b.bits) bit = rng.uniform() < 0.2 ? 1 : 0;
    CHECK(downscale(b, 0.25).bits == serial::downscale(b, 0.25).bits);
}

TEST_CASE("pnm round trip") {
    fs::path dir = fresh_dir("touchless_pnm");
    Rng rng(8);
    Frame rgb(21, 13, 3);
    for (auto& p : rgb.pixels) p = uint8_t(rng.uniform_int(0, 255));
    write_pnm(dir / "a.ppm", rgb);
    Frame back = read_pnm(dir / "a.ppm");
    CHECK(back.channels == 3);
    CHECK(back.pixels == rgb.pixels);

    Frame gray = to_grayscale(rgb);
    write_pnm(dir / "a.pgm", gray);
    CHECK(read_pnm(dir / "a.pgm").pixels == gray.pixels);

    CHECK_THROWS_AS(read_pnm(dir / "missing.pgm"), input_error);
}

TEST_CASE("sequence: default timestamps at 33 ms") {
    fs::path dir = fresh_dir("touchless_seq");
    for (int i = 0; i < 3; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "f%02d.pgm", i);
        write_pnm(dir / name, Frame(10, 10, 1));
    }
    FrameSequence seq = FrameSequence::open(dir);
    REQUIRE(seq.size() == 3);
    std::vector<Frame> frames = seq.load_all();
    CHECK(frames[0].timestamp_ms == 0);
    CHECK(frames[1].timestamp_ms == 33);
    CHECK(frames[2].timestamp_ms == 66);
}

TEST_CASE("sequence: sidecar timestamps and validation") {
    fs::path dir = fresh_dir("touchless_seq_ts");
    write_pnm(dir / "a.pgm", Frame(10, 10, 1));
    write_pnm(dir / "b.pgm", Frame(10, 10, 1));
    {
        std::ofstream ts(dir / "timestamps.txt");
        ts << "5\n40\n";
    }
    FrameSequence seq = FrameSequence::open(dir);
    auto frames = seq.load_all();
    CHECK(frames[0].timestamp_ms == 5);
    CHECK(frames[1].timestamp_ms == 40);

    {
        std::ofstream ts(dir / "timestamps.txt");
        ts << "5\n5\n";  // not strictly increasing
    }
    CHECK_THROWS_AS(FrameSequence::open(dir), input_error);
}

TEST_CASE("sequence: error paths") {
    fs::path dir = fresh_dir("touchless_seq_err");
    CHECK_THROWS_WITH_AS(FrameSequence::open(dir), doctest::Contains("empty sequence"),
                         input_error);
    CHECK_THROWS_AS(FrameSequence::open(dir / "nope"), input_error);

    write_pnm(dir / "a.pgm", Frame(10, 10, 1));
    write_pnm(dir / "b.pgm", Frame(12, 10, 1));
    FrameSequence seq = FrameSequence::open(dir);
    CHECK_THROWS_WITH_AS(seq.load_all(), doctest::Contains("dimension mismatch"), input_error);
}

TEST_CASE("sequence: list file keeps its order") {
    fs::path dir = fresh_dir("touchless_seq_list");
    write_pnm(dir / "z.pgm", Frame(10, 10, 1));
    write_pnm(dir / "a.pgm", Frame(10, 10, 1));
    {
        std::ofstream list(dir / "frames.txt");
        list << "z.pgm\na.pgm\n";
    }
    FrameSequence seq = FrameSequence::open(dir / "frames.txt");
    CHECK(seq.size() == 2);
    CHECK_NOTHROW(seq.load_all());
}

}  // TEST_SUITE
