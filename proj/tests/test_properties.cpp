// Randomized invariants across modules.
#include "doctest.h"
#include "guidiff/change_detector.hpp"
#include "guidiff/screen_matcher.hpp"
#include "support.hpp"

using namespace gt;

TEST_SUITE("properties") {

TEST_CASE("self pairs never report changes") {
    for (int i = 0; i < 25; ++i) {
        const ScreenCapture cap = corpus::render_screen(corpus::random_screen_spec(500 + i, i));
        CHECK(detect_changes(pair_of(cap, cap)).empty());
        CHECK(screen_cost(cap, cap) == 0.0);
    }
}

TEST_CASE("detection is deterministic and changes reference real components") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 24; ++i) {
        const auto spec = corpus::random_screen_spec(900, i);
        const auto type = kAllChangeTypes[i % kAllChangeTypes.size()];
        const auto m = corpus::make_mutation(spec, type, rng);
        if (!m) continue;
        const ScreenCapture a = corpus::render_screen(spec);
        const auto b = corpus::apply_mutation(spec, *m);
        const ScreenPair p = pair_of(a, b.capture);
        const Detection d1 = analyze_pair(p), d2 = analyze_pair(p);
        REQUIRE(d1.changes.size() == d2.changes.size());
        for (std::size_t k = 0; k < d1.changes.size(); ++k) {
            CHECK(d1.changes[k].specific == d2.changes[k].specific);
            CHECK(d1.changes[k].anchor_bounds() == d2.changes[k].anchor_bounds());
            CHECK(category_of(d1.changes[k].specific) == d1.changes[k].category);
        }
        // matched + removed covers every old leaf, matched + added every new leaf
        const auto lo = leaf_components(a.hierarchy), ln = leaf_components(b.capture.hierarchy);
        CHECK(d1.matching.matched.size() + d1.matching.removed.size() == lo.size());
        CHECK(d1.matching.matched.size() + d1.matching.added.size() == ln.size());
        for (const auto& c : d1.changes) {
            if (c.old_component) CHECK(c.old_component->bounds == a.hierarchy.node(c.old_component->node_index).component.bounds);
            if (c.new_component)
                CHECK(c.new_component->bounds == b.capture.hierarchy.node(c.new_component->node_index).component.bounds);
        }
    }
}

TEST_CASE("layout changes come only from bounds deltas") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        const auto a = comp("V", int(rng() % 300), int(rng() % 600), int(rng() % 80) + 1, int(rng() % 80) + 1);
        auto b = a;
        b.bounds.x += int(rng() % 21) - 10;
        b.bounds.y += int(rng() % 21) - 10;
        b.bounds.width += int(rng() % 21) - 10;
        b.bounds.height += int(rng() % 21) - 10;
        const int lc = int(rng() % 8);
        const auto cs = detect_layout_changes(a, b, lc);
        std::size_t expected = 0;
        expected += std::abs(b.bounds.x - a.bounds.x) > lc;
        expected += std::abs(b.bounds.y - a.bounds.y) > lc;
        expected += std::abs(b.bounds.width - a.bounds.width) > lc;
        expected += std::abs(b.bounds.height - a.bounds.height) > lc;
        CHECK(cs.size() == expected);
        for (const auto& c : cs) CHECK(std::abs(*c.magnitude) > lc);
    }
}

TEST_CASE("filtering is idempotent") {
    std::mt19937 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        CaptureSet s;
        const int n = int(rng() % 30);
        for (int i = 0; i < n; ++i) {
            auto c = flat_capture(4, 4, {}, {}, "A" + std::to_string(rng() % 5), std::to_string(i));
            c.window_name = "w" + std::to_string(rng() % 2);
            s.captures.push_back(share(c));
        }
        const CaptureSet once = filter_screens(s);
        const CaptureSet twice = filter_screens(once);
        REQUIRE(once.captures.size() == twice.captures.size());
        for (std::size_t i = 0; i < once.captures.size(); ++i) CHECK(once.captures[i] == twice.captures[i]);
    }
}

}  // TEST_SUITE
