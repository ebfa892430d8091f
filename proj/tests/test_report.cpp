#include <cstdlib>

#include "doctest.h"
#include "guidiff/pipeline.hpp"
#include "guidiff/report.hpp"
#include "golden_fixture.hpp"
#include "support.hpp"

using namespace gt;

#ifndef GUIDIFF_GOLDEN_DIR
#error "GUIDIFF_GOLDEN_DIR must be defined"
#endif

namespace {

// Pixels inside `b` within `t` of its edge.
bool on_border(int x, int y, const BoundingBox& b, int t) {
    if (x < b.x || y < b.y || x >= b.right() || y >= b.bottom()) return false;
    return x < b.x + t || y < b.y + t || x >= b.right() - t || y >= b.bottom() - t;
}

GuiHierarchy tree(const std::vector<std::pair<std::string, int>>& nodes) {
    // (type, depth) in preorder
    HierarchyBuilder hb;
    int depth = -1;
    for (const auto& [type, d] : nodes) {
        while (depth >= d) {
            hb.close();
            --depth;
        }
        hb.open(comp(type, 0, 0, 10, 10));
        depth = d;
    }
    while (depth-- >= 0) hb.close();
    return hb.build();
}

}  // namespace

TEST_SUITE("report-generator") {

TEST_CASE("zero changes leave the middle screenshot untouched") {
    const ScreenCapture cap = corpus::render_screen(corpus::random_screen_spec(2, 2));
    const AnnotatedScreens s = annotate_screens(pair_of(cap, cap), {});
    CHECK(s.highlight == cap.image);
    CHECK(s.old_screen == cap.image);
    CHECK(s.new_screen == cap.image);
}

TEST_CASE("a change outlines exactly its three pixel border") {
    auto cap = flat_capture(100, 100, {240, 240, 240}, {comp("V", 10, 10, 50, 50)});
    const auto leaf = leaf_components(cap.hierarchy)[0];
    const auto ch = make_change(ChangeType::FontColor, leaf, leaf, 0.5);
    const AnnotatedScreens s = annotate_screens(pair_of(cap, cap), {ch});
    int differing = 0;
    for (int y = 0; y < 100; ++y)
        for (int x = 0; x < 100; ++x) {
            const bool expect = on_border(x, y, {10, 10, 50, 50}, 3);
            CHECK((s.highlight.at(x, y) != cap.image.at(x, y)) == expect);
            if (expect) CHECK(s.highlight.at(x, y) == kAnnotationColor);
            differing += expect;
        }
    CHECK(differing == 50 * 50 - 44 * 44);
}

TEST_CASE("added components get a dashed outline at their new bounds") {
    auto old_cap = flat_capture(100, 100, {240, 240, 240}, {});
    auto new_cap = flat_capture(100, 100, {240, 240, 240}, {comp("V", 20, 20, 40, 40)});
    const auto leaf = leaf_components(new_cap.hierarchy)[0];
    const AnnotatedScreens s = annotate_screens(pair_of(old_cap, new_cap), {make_change(ChangeType::Added, std::nullopt, leaf)});
    int red = 0, gaps = 0;
    for (int y = 0; y < 100; ++y)
        for (int x = 0; x < 100; ++x) {
            const bool border = on_border(x, y, {20, 20, 40, 40}, 3);
            if (!border) {
                CHECK(s.highlight.at(x, y) == old_cap.image.at(x, y));
                continue;
            }
            if (s.highlight.at(x, y) == kAnnotationColor) ++red;
            else ++gaps;
        }
    CHECK(red > 0);
    CHECK(gaps > 0);
    // top edge, first row: 6 on, 4 off from the left corner
    for (int x = 20; x < 26; ++x) CHECK(s.highlight.at(x, 20) == kAnnotationColor);
    for (int x = 26; x < 30; ++x) CHECK(s.highlight.at(x, 20) != kAnnotationColor);
}

TEST_CASE("common subtree examples") {
    const auto h = tree({{"Frame", 0}, {"Linear", 1}, {"Text", 2}, {"Image", 2}, {"Button", 1}});
    auto same = common_subtree(h, h);
    REQUIRE(same);
    CHECK(same->size() == h.size());
    const auto plus = tree({{"Frame", 0}, {"Linear", 1}, {"Text", 2}, {"Image", 2}, {"Button", 1}, {"Text", 1}});
    auto appended = common_subtree(h, plus);
    REQUIRE(appended);
    CHECK(appended->size() == h.size());
    CHECK_FALSE(common_subtree(h, tree({{"Linear", 0}, {"Text", 1}})).has_value());
    // The heavier child wins over an earlier light one.
    const auto a = tree({{"R", 0}, {"X", 1}, {"L", 1}, {"T", 2}, {"T", 2}});
    const auto b = tree({{"R", 0}, {"L", 1}, {"T", 2}, {"T", 2}, {"X", 1}});
    CHECK(common_subtree(a, b)->size() == 4);
}

TEST_CASE("common subtree is symmetric and bounded on random trees") {
    std::mt19937 rng(13);
    const char* types[] = {"A", "B", "C"};
    auto random_tree = [&] {
        std::vector<std::pair<std::string, int>> nodes = {{"R", 0}};
        int depth = 0;
        const int n = static_cast<int>(rng() % 12);
        for (int i = 0; i < n; ++i) {
            depth = 1 + static_cast<int>(rng() % static_cast<unsigned>(depth + 1));
            nodes.push_back({types[rng() % 3], depth});
        }
        return tree(nodes);
    };
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_tree(), b = random_tree();
        const auto ab = common_subtree(a, b), ba = common_subtree(b, a);
        REQUIRE(ab);
        REQUIRE(ba);
        CHECK(ab->size() == ba->size());
        CHECK(ab->size() <= std::min(a.size(), b.size()));
        CHECK(common_subtree(a, a)->size() == a.size());
    }
}

TEST_CASE("zero change report") {
    const ScreenCapture cap = corpus::render_screen(corpus::random_screen_spec(6, 1));
    const auto r = build_report(pair_of(cap, cap), {}, 0.0, "No GUI changes were detected between these screens.", "T");
    const std::string html = render_report_html(r);
    CHECK(xml_well_formed(html));
    CHECK(html.find("No GUI changes were detected between these screens.") != std::string::npos);
    CHECK(count_of(html, "<li class=\"change\"") == 0);
}

TEST_CASE("change entries, crops and self-containment") {
    const auto f = golden_fixture();
    const auto& changes = f.analysis.detection.changes;
    REQUIRE(changes.size() == 3);
    const ChangeReport& r = f.analysis.report;
    REQUIRE(r.entries.size() == changes.size());
    for (const auto& e : r.entries) {
        CHECK_FALSE(e.description.empty());
        CHECK(e.old_crop.has_value() == e.change.old_component.has_value());
        CHECK(e.new_crop.has_value() == e.change.new_component.has_value());
    }
    const std::string html = render_report_html(r);
    CHECK(xml_well_formed(html));
    CHECK(count_of(html, "<li class=\"change\"") == 3);
    CHECK(count_of(html, "<details>") == 3);
    CHECK(html.find("http://") == std::string::npos);
    CHECK(html.find("https://") == std::string::npos);
    CHECK(html.find("<script") == std::string::npos);
    for (const char* id : {"id=\"screens\"", "id=\"summary\"", "id=\"changes\"", "id=\"hierarchy\""}) {
        CHECK(html.find(id) != std::string::npos);
    }

    const auto dir = temp_dir("report");
    const fs::path page = render_report(r, dir);
    CHECK(page == dir / r.pair_id / "report.html");
    CHECK(read_file(page) == html);
    for (const char* a : {kOldScreenAsset, kHighlightAsset, kNewScreenAsset}) CHECK(fs::exists(dir / r.pair_id / a));
    for (const auto& e : r.entries) {
        if (!e.old_crop_path.empty()) CHECK(fs::exists(dir / r.pair_id / e.old_crop_path));
        if (!e.new_crop_path.empty()) CHECK(fs::exists(dir / r.pair_id / e.new_crop_path));
    }
    CHECK(read_truth_file(dir / r.pair_id / "changes.jsonl").size() == 3);
}

TEST_CASE("unwritable output is an error") {
    const auto f = golden_fixture();
    const auto dir = temp_dir("report-ro");
    write_file(dir / "blocker", "x");
    CHECK_THROWS(render_report(f.analysis.report, dir / "blocker"));
}

TEST_CASE("golden report is byte identical") {
    const auto f = golden_fixture();
    const std::string html = render_report_html(f.analysis.report);
    const fs::path golden = fs::path(GUIDIFF_GOLDEN_DIR) / kGoldenReportName;
    const char* update = std::getenv("GUIDIFF_UPDATE_GOLDEN");
    if (update && std::string(update) == "1") write_file(golden, html);
    REQUIRE(fs::exists(golden));
    CHECK(read_file(golden) == html);
    // and the HTML does not depend on anything but its inputs
    CHECK(render_report_html(golden_fixture().analysis.report) == html);
}

TEST_CASE("index page") {
    std::vector<IndexEntry> entries = {{"001-002", "Main", 0.1, 2, "There were a few changes.", std::nullopt},
                                       {"003-004", "Other <x>", 0.2, 0, "", std::string("boom & bust")}};
    std::vector<UnmatchedScreen> unmatched = {{"old", "009", "Gone", "Gone"}};
    const std::string html = render_index_html(entries, unmatched, "T");
    CHECK(xml_well_formed(html));
    CHECK(html.find("001-002/report.html") != std::string::npos);
    CHECK(html.find("id=\"unmatched\"") != std::string::npos);
    CHECK(html.find("boom &amp; bust") != std::string::npos);
    CHECK(render_index_html(entries, {}, "T").find("id=\"unmatched\"") == std::string::npos);
}

}  // TEST_SUITE
