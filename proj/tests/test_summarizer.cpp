#include <set>

#include "doctest.h"
#include "guidiff/summarizer.hpp"
#include "support.hpp"

using namespace gt;

namespace {

GuiChange at(int cx, int cy, ChangeType t = ChangeType::FontColor) {
    auto c = comp("android.widget.TextView", cx - 5, cy - 5, 10, 10, "x");
    return make_change(t, c, c, 0.5);
}

}  // namespace

TEST_SUITE("summarizer") {

TEST_CASE("grid cells use the bounds center") {
    CHECK(grid3_cell({0, 0, 10, 10}, 360, 640) == 0);
    CHECK(grid3_cell({350, 630, 10, 10}, 360, 640) == 8);
    CHECK(grid3_cell({170, 310, 20, 20}, 360, 640) == 4);
    // center x = 120 sits on the first boundary and belongs to the middle column
    CHECK(grid3_cell({110, 0, 20, 10}, 360, 640) == 1);
    CHECK(grid3_cell({100, 0, 19, 10}, 360, 640) == 0);
    CHECK(grid2_cell({170, 0, 20, 10}, 360, 640) == 1);
    CHECK(grid2_cell({0, 315, 10, 9}, 360, 640) == 0);
}

TEST_CASE("localization examples") {
    CHECK(localize_changes({at(20, 20), at(40, 60), at(90, 150)}, 360, 640) == Location::TopLeft);
    CHECK(localize_changes({at(20, 20), at(340, 20), at(20, 620), at(340, 620)}, 360, 640) == Location::AcrossTheScreen);
    // Three of five in the lower-left quadrant, each in a different ninth.
    const std::vector<GuiChange> five = {at(60, 400), at(150, 600), at(60, 600), at(300, 50), at(300, 600)};
    std::set<int> cells;
    for (const auto& c : five) cells.insert(grid3_cell(c.anchor_bounds(), 360, 640));
    CHECK(cells.size() == 5);
    CHECK(localize_changes(five, 360, 640) == Location::QuadrantBottomLeft);
    CHECK_THROWS_AS(localize_changes({}, 360, 640), Error);
}

TEST_CASE("added changes localize on the new side, removed on the old") {
    auto o = comp("V", 10, 10, 10, 10);
    auto n = comp("V", 340, 620, 10, 10);
    CHECK(make_change(ChangeType::Added, std::nullopt, n).anchor_bounds() == n.bounds);
    CHECK(make_change(ChangeType::Removed, o, std::nullopt).anchor_bounds() == o.bounds);
    CHECK(make_change(ChangeType::HorizontalTranslation, o, n, 330.0).anchor_bounds() == o.bounds);
}

TEST_CASE("characteristic buckets") {
    CHECK(level_for(2) == Level::Subtle);
    CHECK(level_for(5) == Level::Moderate);
    CHECK(level_for(12) == Level::Moderate);
    CHECK(level_for(20) == Level::Moderate);
    CHECK(level_for(35) == Level::Significant);
    CHECK(amount_for(2) == Amount::AFew);
    CHECK(amount_for(3) == Amount::AFew);
    CHECK(amount_for(7) == Amount::Several);
    CHECK(amount_for(10) == Amount::Several);
    CHECK(amount_for(14) == Amount::Many);
    DiffResult d;
    d.diff_percent = 12;
    const auto sc = characterize(std::vector<GuiChange>(7, at(20, 20)), d, 360, 640);
    CHECK(sc.level == Level::Moderate);
    CHECK(sc.amount == Amount::Several);
    CHECK(sc.location == Location::TopLeft);
    CHECK(sc.change_count == 7);
    CHECK(characterize({}, d, 360, 640).change_count == 0);
}

TEST_CASE("summary templates") {
    SummaryCharacteristics sc;
    CHECK(generate_summary(sc) == "No GUI changes were detected between these screens.");
    sc = {Level::Subtle, Location::TopLeft, Amount::AFew, 2, 1.0};
    CHECK(generate_summary(sc) ==
          "There were a few changes between versions, representing a subtle visual difference. "
          "Most changes occurred in the top-left of the screen.");
    sc = {Level::Significant, Location::AcrossTheScreen, Amount::Many, 14, 35.0};
    const std::string s = generate_summary(sc);
    const std::string tail = "Changes are distributed across the screen.";
    CHECK(s.substr(s.size() - tail.size()) == tail);
    sc.location = Location::QuadrantBottomLeft;
    CHECK(generate_summary(sc).find("in the bottom-left quadrant of the screen.") != std::string::npos);
}

TEST_CASE("description examples") {
    auto login = comp("android.widget.Button", 10, 10, 80, 30, "Login");
    auto moved = login;
    moved.bounds.x += 24;
    CHECK(describe_change(make_change(ChangeType::HorizontalTranslation, login, moved, 24.0)) ==
          "The \"Login\" component moved 24 px horizontally.");
    CHECK(describe_change(make_change(ChangeType::Added, std::nullopt, comp("android.widget.ImageButton", 0, 0, 9, 9))) ==
          "A new ImageButton component was added.");
    CHECK(describe_change(make_change(ChangeType::TextContent, comp("T", 0, 0, 9, 9, "Sign in"),
                                      comp("T", 0, 0, 9, 9, "Sign up"))) == "Text changed from \"Sign in\" to \"Sign up\".");
    auto icon = comp("android.widget.ImageView", 0, 0, 9, 9);
    icon.node_index = 4;
    CHECK(component_label(icon) == "ImageView #4");
    icon.resource_id = "app:id/logo";
    CHECK(component_label(icon) == "\"app:id/logo\"");
}

TEST_CASE("every change type has its own template") {
    auto o = comp("android.widget.Button", 10, 10, 80, 30, "Go");
    auto n = comp("android.widget.ToggleButton", 30, 30, 90, 40, "Stop");
    std::set<std::string> skeletons;
    for (ChangeType t : kAllChangeTypes) {
        const GuiChange c = make_change(t, t == ChangeType::Added ? std::nullopt : std::optional(o),
                                        t == ChangeType::Removed ? std::nullopt : std::optional(n), 20.0);
        const std::string d = describe_change(c);
        CHECK_FALSE(d.empty());
        CHECK(d == describe_change(c));
        skeletons.insert(d);
    }
    CHECK(skeletons.size() == kAllChangeTypes.size());
}

TEST_CASE("localization agrees with a brute-force tally") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = static_cast<int>(rng() % 9) + 1;
        std::vector<GuiChange> cs;
        int nine[9] = {}, four[4] = {};
        for (int i = 0; i < n; ++i) {
            const int cx = static_cast<int>(rng() % 360), cy = static_cast<int>(rng() % 640);
            cs.push_back(at(cx, cy));
            ++nine[std::min(2, cy * 3 / 640) * 3 + std::min(2, cx * 3 / 360)];
            ++four[std::min(1, cy * 2 / 640) * 2 + std::min(1, cx * 2 / 360)];
        }
        Location expect = Location::AcrossTheScreen;
        for (int q = 3; q >= 0; --q)
            if (2 * four[q] > n) expect = static_cast<Location>(static_cast<int>(Location::QuadrantTopLeft) + q);
        for (int k = 0; k < 9; ++k)
            if (2 * nine[k] > n) expect = static_cast<Location>(k);
        CHECK(localize_changes(cs, 360, 640) == expect);
    }
}

}  // TEST_SUITE
