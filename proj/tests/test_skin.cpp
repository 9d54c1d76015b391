#include <doctest.h>

#include <algorithm>

#include "touchless/common.hpp"
#include "touchless/reference.hpp"
#include "touchless/skin.hpp"

using namespace touchless;

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

Frame random_rgb(int w, int h, Rng& rng) {
    Frame f(w, h, 3);
    for (auto& p : f.pixels) p = uint8_t(rng.uniform_int(0, 255));
    return f;
}

}  // namespace

TEST_SUITE("skin") {

TEST_CASE("hsv conversion") {
    Hsv red = rgb_to_hsv(255, 0, 0);
    CHECK(red.h == doctest::Approx(0.0));
    CHECK(red.s == doctest::Approx(1.0));
    CHECK(red.v == doctest::Approx(1.0));

    Hsv black = rgb_to_hsv(0, 0, 0);
    CHECK(black.h == 0.0);
    CHECK(black.s == 0.0);
    CHECK(black.v == 0.0);

    Hsv gray = rgb_to_hsv(128, 128, 128);
    CHECK(gray.h == 0.0);
    CHECK(gray.s == 0.0);
    CHECK(gray.v == doctest::Approx(0.502).epsilon(1e-3));

    Hsv green = rgb_to_hsv(0, 255, 0);
    CHECK(green.h == doctest::Approx(120.0));
}

TEST_CASE("default range accepts the reference skin tone") {
    Hsv tone = rgb_to_hsv(224, 172, 105);
    CHECK(tone.h == doctest::Approx(33.78).epsilon(1e-2));
    CHECK(tone.s == doctest::Approx(0.53125));
    CHECK(tone.v == doctest::Approx(224.0 / 255.0));
    CHECK(SkinRange{}.contains(tone));

    SkinMask mask = detect_skin_regions(solid(12, 9, 224, 172, 105), SkinRange{});
    CHECK(mask.count() == 12 * 9);
}

TEST_CASE("black frame yields an empty mask") {
    SkinMask mask = detect_skin_regions(solid(10, 10, 0, 0, 0), SkinRange{});
    CHECK(mask.count() == 0);
}

TEST_CASE("hue wrap range") {
    SkinRange wrap{350, 10, 0, 1, 0, 1};
    CHECK(wrap.contains(rgb_to_hsv(255, 0, 0)));       // h = 0
    CHECK(wrap.contains({355, 0.5, 0.5}));
    CHECK_FALSE(wrap.contains({180, 0.5, 0.5}));
}

TEST_CASE("grayscale input is rejected") {
    Frame gray(8, 8, 1);
    CHECK_THROWS_AS(detect_skin_regions(gray, SkinRange{}), input_error);
}

TEST_CASE("majority smoothing removes salt noise, keeps solid regions") {
    Frame f = solid(11, 11, 224, 172, 105);
    // one non-skin pixel in the middle
    f.at(5, 5, 0) = 0;
    f.at(5, 5, 1) = 0;
    f.at(5, 5, 2) = 0;
    SkinMask raw = detect_skin_regions(f, SkinRange{}, false);
    CHECK(raw.count() == 11 * 11 - 1);
    SkinMask smooth = detect_skin_regions(f, SkinRange{}, true);
    CHECK(smooth.count() == 11 * 11);  // hole voted away
}

TEST_CASE("raw mask commutes with row permutation") {
    Rng rng(12);
    Frame f = random_rgb(9, 7, rng);
    std::vector<int> perm{3, 0, 6, 1, 5, 2, 4};
    Frame g(9, 7, 3);
    for (int y = 0; y < 7; ++y)
        for (int x = 0; x < 9; ++x)
            for (int c = 0; c < 3; ++c) g.at(x, y, c) = f.at(x, perm[y], c);

    SkinMask mf = detect_skin_regions(f, SkinRange{}, false);
    SkinMask mg = detect_skin_regions(g, SkinRange{}, false);
    for (int y = 0; y < 7; ++y)
        for (int x = 0; x < 9; ++x) CHECK(int(mg.at(x, y)) == int(mf.at(x, perm[y])));
}

TEST_CASE("widening the range never clears a raw bit") {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        Frame f = random_rgb(12, 12, rng);
        double h0 = rng.uniform(0, 180), h1 = h0 + rng.uniform(10, 120);
        double s0 = rng.uniform(0, 0.5), s1 = s0 + rng.uniform(0.1, 0.5);
        double v0 = rng.uniform(0, 0.5), v1 = v0 + rng.uniform(0.1, 0.5);
        SkinRange narrow{h0, h1, s0, s1, v0, v1};
        SkinRange wide{std::max(0.0, h0 - 10), std::min(359.9, h1 + 20),
                       std::max(0.0, s0 - 0.1), std::min(1.0, s1 + 0.1),
                       std::max(0.0, v0 - 0.1), std::min(1.0, v1 + 0.1)};
        SkinMask a = detect_skin_regions(f, narrow, false);
        SkinMask b = detect_skin_regions(f, wide, false);
        for (size_t i = 0; i < a.bits.size(); ++i)
            if (a.bits[i]) CHECK(b.bits[i]);
    }
}

TEST_CASE("parallel membership matches the serial reference") {
    Rng rng(31);
    Frame f = random_rgb(53, 37, rng);
    CHECK(skin_membership(f, SkinRange{}).bits == serial::skin_membership(f, SkinRange{}).bits);
}

}  // TEST_SUITE
