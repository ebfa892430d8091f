#include <cmath>

#include "doctest.h"
#include "guidiff/image_analysis.hpp"
#include "support.hpp"

using namespace gt;

namespace {

// Straightforward re-derivation of the perceptual mask: separable [1 2 1]
// blur with replicated borders, integer rescale after every pass but the
// first, then a normalized weighted RGB distance compared to the sensitivity.
std::vector<std::uint8_t> oracle_mask(const Raster& a, const Raster& b, double s, int radius) {
    const int w = a.width(), h = a.height();
    auto planes = [&](const Raster& img) {
        std::array<std::vector<long>, 3> p;
        for (int c = 0; c < 3; ++c) {
            p[c].resize(static_cast<std::size_t>(w * h));
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const Rgb px = img.at(x, y);
                    p[c][y * w + x] = c == 0 ? px.r : c == 1 ? px.g : px.b;
                }
            if (radius == 0) {
                for (auto& v : p[c]) v *= 16;
                continue;
            }
            for (int pass = 0; pass < radius; ++pass) {
                std::vector<long> out(p[c].size());
                for (int y = 0; y < h; ++y)
                    for (int x = 0; x < w; ++x) {
                        long acc = 0;
                        for (int dy = -1; dy <= 1; ++dy)
                            for (int dx = -1; dx <= 1; ++dx) {
                                const int xx = std::clamp(x + dx, 0, w - 1);
                                const int yy = std::clamp(y + dy, 0, h - 1);
                                acc += (2 - std::abs(dx)) * (2 - std::abs(dy)) * p[c][yy * w + xx];
                            }
                        out[y * w + x] = pass == 0 ? acc : (acc + 8) / 16;
                    }
                p[c] = out;
            }
        }
        return p;
    };
    const auto pa = planes(a), pb = planes(b);
    std::vector<std::uint8_t> m(static_cast<std::size_t>(w * h));
    for (std::size_t i = 0; i < m.size(); ++i) {
        double d = 0;
        const double wts[3] = {77, 150, 29};
        for (int c = 0; c < 3; ++c) d += wts[c] * double(pa[c][i] - pb[c][i]) * double(pa[c][i] - pb[c][i]);
        m[i] = std::sqrt(d / (256.0 * 4080.0 * 4080.0)) > s ? 1 : 0;
    }
    return m;
}

Raster noisy(std::mt19937& rng, int w, int h) {
    Raster r(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const auto v = static_cast<std::uint8_t>(rng() % 256);
            r.set(x, y, {v, static_cast<std::uint8_t>(v ^ (rng() % 64)), static_cast<std::uint8_t>(rng() % 256)});
        }
    return r;
}

}  // namespace

TEST_SUITE("image-analysis") {

TEST_CASE("color_distance endpoints") {
    const Raster black(10, 10, {0, 0, 0}), white(10, 10, {255, 255, 255}), red(10, 10, {255, 0, 0});
    CHECK(color_distance(black, black) == 0.0);
    CHECK(color_distance(black, white) == doctest::Approx(1.0));
    CHECK(color_distance(black, red) == doctest::Approx(1.0 / std::sqrt(3.0)));
    // Second image is resampled to the first one's size.
    CHECK(color_distance(black, Raster(3, 7, {255, 255, 255})) == doctest::Approx(1.0));
    CHECK_THROWS_AS(color_distance(Raster(), black), Error);
}

TEST_CASE("silhouette and bbox_diff") {
    auto cap = flat_capture(100, 100, {255, 255, 255},
                            {comp("A", 10, 10, 20, 20), comp("Big", 0, 50, 100, 50), comp("Z", 40, 40, 0, 5)});
    const Mask sil = bbox_silhouette(cap, 1000);
    CHECK(sil.popcount() == 400);  // Big is over the cap, Z has no area, root is no leaf
    CHECK(bbox_silhouette(cap).popcount() == 400 + 5000);
    auto other = flat_capture(100, 100, {}, {comp("A", 20, 10, 20, 20)});
    // Two 20x20 boxes offset by 10 px disagree on 2 * 200 pixels.
    CHECK(bbox_diff(sil, bbox_silhouette(other, 1000)) == doctest::Approx(400.0 / 10000.0));
    CHECK(bbox_diff(sil, sil) == 0.0);
}

TEST_CASE("perceptual diff of a gray patch") {
    Raster a(100, 100, {128, 128, 128});
    Raster b = a;
    b.fill_rect(40, 40, 20, 20, {168, 168, 168});
    const DiffResult d = perceptual_diff(a, b);
    CHECK(d.mask.popcount() == 400);
    CHECK(d.diff_percent == doctest::Approx(4.0));
    REQUIRE(d.diff_regions.size() == 1);
    CHECK(d.diff_regions[0] == BoundingBox{40, 40, 20, 20});
    CHECK(d.mask.bits().size() == oracle_mask(a, b, 0.05, 1).size());
    CHECK(std::vector<std::uint8_t>(d.mask.bits().begin(), d.mask.bits().end()) == oracle_mask(a, b, 0.05, 1));
}

TEST_CASE("one gray level is below the default sensitivity") {
    const DiffResult d = perceptual_diff(Raster(30, 30, {128, 128, 128}), Raster(30, 30, {129, 129, 129}));
    CHECK(d.mask.popcount() == 0);
    CHECK(d.diff_regions.empty());
}

TEST_CASE("perceptual mask matches the reference derivation on noise") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 6; ++trial) {
        const Raster a = noisy(rng, 23, 19);
        Raster b = a;
        for (int i = 0; i < 60; ++i) b.set(rng() % 23, rng() % 19, {static_cast<std::uint8_t>(rng() % 256), 0, 0});
        for (int radius : {0, 1, 2, 3}) {
            for (double s : {0.02, 0.05, 0.2}) {
                CAPTURE(radius);
                CAPTURE(s);
                const DiffResult d = perceptual_diff(a, b, {s, radius});
                CHECK(std::vector<std::uint8_t>(d.mask.bits().begin(), d.mask.bits().end()) ==
                      oracle_mask(a, b, s, radius));
            }
        }
    }
}

TEST_CASE("connected regions use 8-connectivity") {
    Mask m(10, 10);
    m.set(1, 1, 1);
    m.set(2, 2, 1);  // diagonal neighbour joins
    m.set(7, 7, 1);
    m.fill_rect(5, 0, 3, 2, 1);
    const auto r = connected_regions(m);
    REQUIRE(r.size() == 3);
    // raster-scan order of each region's first pixel
    CHECK(r[0] == BoundingBox{5, 0, 3, 2});
    CHECK(r[1] == BoundingBox{1, 1, 2, 2});
    CHECK(r[2] == BoundingBox{7, 7, 1, 1});
}

TEST_CASE("histogram similarity") {
    Raster a(10, 10, {255, 255, 255});
    a.fill_rect(0, 0, 10, 3, {0, 0, 0});  // 30% black
    Raster b(10, 10, {255, 255, 255});
    b.fill_rect(0, 0, 10, 3, {255, 0, 0});  // 30% red
    CHECK(histogram_similarity(color_histogram(a), color_histogram(a)) == 1.0);
    // p = (0.7, 0.3, 0), q = (0.7, 0, 0.3): distance 0.3 * sqrt 2
    CHECK(histogram_similarity(color_histogram(a), color_histogram(b)) == doctest::Approx(0.7));
    CHECK(histogram_similarity(color_histogram(Raster(4, 4, {0, 0, 0})), color_histogram(Raster(4, 4, {255, 255, 255}))) ==
          doctest::Approx(0.0));
    const auto h = color_histogram(a);
    CHECK(h.total == 100);
    CHECK(h.bins.at(0) == 30);
    CHECK(h.bins.at((31u << 10) | (31u << 5) | 31u) == 70);
}

TEST_CASE("luma and otsu") {
    Raster r(2, 1);
    r.set(0, 0, {255, 0, 0});
    r.set(1, 0, {0, 0, 255});
    const auto l = luma_plane(r);
    CHECK(l[0] == 77);
    CHECK(l[1] == 29);
    CHECK(luma_plane(Raster(1, 1, {255, 255, 255}))[0] == 255);
    CHECK(otsu_threshold(std::vector<std::uint8_t>(50, 0)) == 0);
    std::vector<std::uint8_t> half(100, 0);
    std::fill(half.begin() + 50, half.end(), 255);
    CHECK(otsu_threshold(half) == 0);
    CHECK(binarize(Raster(3, 3, {0, 0, 0})).popcount() == 0);
}

TEST_CASE("red and blue glyphs binarize identically") {
    Raster red(20, 20, {255, 255, 255}), blue(20, 20, {255, 255, 255});
    red.fill_rect(5, 5, 8, 8, {255, 0, 0});
    blue.fill_rect(5, 5, 8, 8, {0, 0, 255});
    CHECK(binarize(red) == binarize(blue));
    CHECK(binarize(red).popcount() == 400 - 64);
}

}  // TEST_SUITE
