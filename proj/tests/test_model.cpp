#include "doctest.h"
#include "support.hpp"

using namespace gt;

TEST_SUITE("model") {

TEST_CASE("box overlap and IoU") {
    const BoundingBox a{0, 0, 10, 10}, b{5, 5, 10, 10};
    const auto g = bbox_geometry(a, b);
    CHECK(g.intersection_area == 25);
    CHECK(g.iou == doctest::Approx(25.0 / 175.0));
    CHECK(bbox_geometry(a, a).iou == 1.0);
    CHECK(bbox_geometry(a, {20, 20, 5, 5}).intersection_area == 0);
    CHECK(bbox_geometry({0, 0, 0, 0}, {0, 0, 0, 0}).iou == 0.0);
}

TEST_CASE("clamping to the screen") {
    CHECK(BoundingBox{-5, -5, 20, 20}.clamped(10, 10) == BoundingBox{0, 0, 10, 10});
    CHECK(BoundingBox{8, 2, 5, 5}.clamped(10, 10) == BoundingBox{8, 2, 2, 5});
    CHECK(BoundingBox{30, 30, 5, 5}.clamped(10, 10).area() == 0);
}

TEST_CASE("hierarchy builder assigns preorder indices and leaf flags") {
    HierarchyBuilder hb;
    hb.open(comp("Root", 0, 0, 100, 100));
    hb.open(comp("Group", 0, 0, 50, 50));
    hb.open(comp("A", 0, 0, 10, 10));
    hb.close();
    hb.open(comp("Zero", 5, 5, 0, 10));
    hb.close();
    hb.close();
    hb.open(comp("B", 60, 60, 10, 10));
    hb.close();
    hb.close();
    const GuiHierarchy h = hb.build();
    REQUIRE(h.size() == 5);
    for (std::size_t i = 0; i < h.size(); ++i) CHECK(h.node(i).component.node_index == static_cast<int>(i));
    CHECK(h.node(1).component.component_type == "Group");
    CHECK_FALSE(h.node(1).component.is_leaf);
    CHECK(h.node(2).component.is_leaf);
    CHECK(h.node(3).component.excluded);
    CHECK_FALSE(h.node(4).component.excluded);
    CHECK(h.node(4).parent == std::optional<std::size_t>(0));
    CHECK(h.depth() == 3);
    const auto leaves = leaf_components(h);
    REQUIRE(leaves.size() == 3);
    CHECK(leaves[0].component_type == "A");
    CHECK(leaves[2].component_type == "B");
}

TEST_CASE("hierarchy rejects a second root") {
    std::vector<HierarchyNode> nodes(2);
    nodes[0].component = comp("R", 0, 0, 10, 10);
    nodes[1].component = comp("S", 0, 0, 10, 10);
    CHECK_THROWS_AS(GuiHierarchy{nodes}, Error);
}

TEST_CASE("short type names and pair ids") {
    CHECK(short_type_name("android.widget.ImageButton") == "ImageButton");
    CHECK(short_type_name("View") == "View");
    ScreenCapture a = flat_capture(4, 4, {}, {}, "A", "12");
    ScreenCapture b = flat_capture(4, 4, {}, {}, "A", "7");
    CHECK(pair_of(a, b).pair_id() == "12-7");
}

}  // TEST_SUITE

TEST_SUITE("raster") {

TEST_CASE("crop copies the region and rejects bad rectangles") {
    Raster r(8, 6, {1, 2, 3});
    r.fill_rect(2, 1, 3, 2, {200, 0, 0});
    const Raster c = r.crop(2, 1, 3, 2);
    CHECK(c.width() == 3);
    CHECK(c.height() == 2);
    for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 3; ++x) CHECK(c.at(x, y) == Rgb{200, 0, 0});
    CHECK_THROWS_AS((void)r.crop(6, 0, 3, 2), Error);
    CHECK_THROWS_AS((void)r.crop(0, 0, 0, 2), Error);
}

TEST_CASE("nearest resize duplicates pixels") {
    Raster r(2, 2);
    r.set(0, 0, {10, 0, 0});
    r.set(1, 0, {20, 0, 0});
    r.set(0, 1, {30, 0, 0});
    r.set(1, 1, {40, 0, 0});
    const Raster big = resize_nearest(r, 4, 4);
    CHECK(big.at(0, 0).r == 10);
    CHECK(big.at(1, 1).r == 10);
    CHECK(big.at(3, 0).r == 20);
    CHECK(big.at(0, 3).r == 30);
    CHECK(big.at(3, 3).r == 40);
}

TEST_CASE("mask helpers") {
    Mask m(5, 4);
    m.fill_rect(1, 1, 2, 2, 1);
    CHECK(m.popcount() == 4);
    const Raster r = m.to_raster();
    CHECK(r.at(1, 1) == Rgb{255, 255, 255});
    CHECK(r.at(0, 0) == Rgb{0, 0, 0});
}

TEST_CASE("png round trip is lossless and deterministic") {
    const auto dir = temp_dir("png");
    Raster r(17, 9);
    std::mt19937 rng(3);
    for (int y = 0; y < 9; ++y)
        for (int x = 0; x < 17; ++x)
            r.set(x, y, {static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()),
                         static_cast<std::uint8_t>(rng())});
    write_png(dir / "a.png", r);
    write_png(dir / "b.png", r);
    CHECK(read_png(dir / "a.png") == r);
    CHECK(read_file(dir / "a.png") == read_file(dir / "b.png"));
    write_file(dir / "bad.png", "not a png");
    CHECK_THROWS_AS(read_png(dir / "bad.png"), Error);
    CHECK_THROWS_AS(read_png(dir / "missing.png"), Error);
}

}  // TEST_SUITE
