#include "doctest.h"
#include "support.hpp"

using namespace gt;

namespace {

const char* kDump = R"(<?xml version="1.0" encoding="UTF-8"?>
<hierarchy rotation="0">
  <node class="android.widget.FrameLayout" bounds="[0,0][100,200]">
    <node class="android.widget.TextView" text="Hello &amp; bye" resource-id="app:id/t" bounds="[10,10][60,30]"/>
    <node class="android.widget.LinearLayout">
      <node class="android.widget.Button" bounds="[0,0][5,5]"/>
    </node>
    <node class="android.widget.ImageView" bounds="[80,190][140,260]"/>
  </node>
</hierarchy>)";

void write_triple(const fs::path& dir, int index, const std::string& activity, const std::string& xml) {
    char base[16];
    std::snprintf(base, sizeof base, "%03d", index);
    write_png(dir / (std::string(base) + ".png"), Raster(100, 200, {240, 240, 240}));
    write_file(dir / (std::string(base) + ".xml"), xml);
    write_file(dir / (std::string(base) + ".json"),
               R"({"activity": ")" + activity + R"(", "window_name": "w", "window_type": "ACTIVITY"})");
}

}  // namespace

TEST_SUITE("capture-ingest") {

TEST_CASE("bounds parsing") {
    CHECK(parse_bounds("[0,0][1080,1920]") == BoundingBox{0, 0, 1080, 1920});
    CHECK(parse_bounds("[10,20][30,25]") == BoundingBox{10, 20, 20, 5});
    CHECK(parse_bounds("[5,5][5,5]").area() == 0);
    CHECK_THROWS_AS(parse_bounds("[30,0][10,10]"), ParseError);
    CHECK_THROWS_AS(parse_bounds("0,0,10,10"), ParseError);
    CHECK_THROWS_AS(parse_bounds(""), ParseError);
}

TEST_CASE("hierarchy parsing drops nodes without bounds and clamps") {
    Warnings w;
    const GuiHierarchy h = parse_hierarchy(kDump, {100, 200}, &w);
    REQUIRE(h.size() == 3);
    CHECK(w.size() == 1);
    CHECK(h.node(1).component.text == std::optional<std::string>("Hello & bye"));
    CHECK(h.node(1).component.resource_id == std::optional<std::string>("app:id/t"));
    CHECK(h.node(1).component.bounds == BoundingBox{10, 10, 50, 20});
    CHECK(h.node(2).component.bounds == BoundingBox{80, 190, 20, 10});
    const auto leaves = leaf_components(h);
    CHECK(leaves.size() == 2);
}

TEST_CASE("several top-level nodes get a synthetic root") {
    const char* xml = R"(<hierarchy><node class="A" bounds="[0,0][10,10]"/><node class="B" bounds="[10,10][20,20]"/></hierarchy>)";
    const GuiHierarchy h = parse_hierarchy(xml, {50, 50});
    REQUIRE(h.size() == 3);
    CHECK(h.root().children.size() == 2);
    CHECK(h.node(1).component.component_type == "A");
}

TEST_CASE("malformed dumps throw") {
    CHECK_THROWS_AS(parse_hierarchy("<hierarchy><node class=", {10, 10}), ParseError);
    CHECK_THROWS_AS(parse_hierarchy("", {10, 10}), ParseError);
    CHECK_THROWS_AS(parse_hierarchy("<hierarchy/>", {10, 10}), ParseError);
    CHECK_THROWS_AS(parse_hierarchy(R"(<node class="A" bounds="[9,9][1,1]"/>)", {10, 10}), ParseError);
}

TEST_CASE("serialize and parse round trip") {
    const ScreenCapture cap = corpus::render_screen(corpus::random_screen_spec(3, 1));
    const GuiHierarchy again = parse_hierarchy(serialize_hierarchy(cap.hierarchy), {360, 640});
    REQUIRE(again.size() == cap.hierarchy.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
        const auto& a = again.node(i).component;
        const auto& b = cap.hierarchy.node(i).component;
        CHECK(a.component_type == b.component_type);
        CHECK(a.bounds == b.bounds);
        CHECK(a.text == b.text);
        CHECK(a.resource_id == b.resource_id);
        CHECK(again.node(i).parent == cap.hierarchy.node(i).parent);
    }
}

TEST_CASE("capture sets skip incomplete and corrupt triples") {
    const auto dir = temp_dir("ingest");
    for (int i = 0; i < 10; ++i) write_triple(dir, i, "Act" + std::to_string(i), kDump);
    write_file(dir / "004.xml", "<hierarchy><node");             // corrupt
    write_png(dir / "011.png", Raster(4, 4));                    // incomplete
    write_file(dir / "notes.txt", "ignored");
    Warnings w;
    const CaptureSet set = load_capture_set(dir, "old", w, 2);
    CHECK(set.captures.size() == 9);
    CHECK(w.size() >= 2);
    CHECK(set.captures.front()->source_id == "000");
    CHECK(set.captures.front()->activity == "Act0");
    for (std::size_t i = 1; i < set.captures.size(); ++i) {
        CHECK(set.captures[i - 1]->capture_index < set.captures[i]->capture_index);
    }
}

TEST_CASE("empty or missing directories are fatal") {
    const auto dir = temp_dir("ingest-empty");
    Warnings w;
    CHECK_THROWS_AS(load_capture_set(dir, "x", w), IoError);
    CHECK_THROWS_AS(load_capture_set(dir / "nope", "x", w), IoError);
}

TEST_CASE("write_capture output loads back") {
    const auto dir = temp_dir("ingest-write");
    const ScreenCapture cap = corpus::render_screen(corpus::random_screen_spec(8, 4));
    write_capture(dir, cap);
    Warnings w;
    const CaptureSet set = load_capture_set(dir, "x", w);
    REQUIRE(set.captures.size() == 1);
    CHECK(set.captures[0]->image == cap.image);
    CHECK(set.captures[0]->activity == cap.activity);
    CHECK(set.captures[0]->hierarchy.size() == cap.hierarchy.size());
    CHECK(w.empty());
}

}  // TEST_SUITE
