#include "guidiff/summarizer.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>

namespace guidiff {

namespace {

constexpr std::string_view kLocationNames[] = {
    "top-left",    "top-center",    "top-right",
    "middle-left", "center",        "middle-right",
    "bottom-left", "bottom-center", "bottom-right",
    "quadrant-top-left", "quadrant-top-right", "quadrant-bottom-left", "quadrant-bottom-right",
    "across-the-screen",
};

constexpr std::string_view kLocationPhrases[] = {
    "top-left",    "top-center",    "top-right",
    "middle-left", "center",        "middle-right",
    "bottom-left", "bottom-center", "bottom-right",
    "top-left quadrant", "top-right quadrant", "bottom-left quadrant", "bottom-right quadrant",
    "whole",
};

// Center coordinate doubled, so all arithmetic stays integral.
int bucket(int origin, int extent, int screen, int parts) noexcept {
    if (screen <= 0) return 0;
    const std::int64_t c2 = 2 * static_cast<std::int64_t>(origin) + extent;
    std::int64_t k = (c2 * parts) / (2 * static_cast<std::int64_t>(screen));
    if (c2 < 0) k = 0;
    if (k >= parts) k = parts - 1;
    return static_cast<int>(k);
}

std::string magnitude_px(const GuiChange& c, bool absolute) {
    if (!c.magnitude) return "?";
    double v = *c.magnitude;
    if (absolute) v = std::abs(v);
    char buf[32];
    if (v == std::floor(v)) {
        std::snprintf(buf, sizeof buf, absolute ? "%.0f" : "%+.0f", v);
    } else {
        std::snprintf(buf, sizeof buf, absolute ? "%.1f" : "%+.1f", v);
    }
    return buf;
}

}  // namespace

std::string_view to_string(Level l) noexcept {
    switch (l) {
        case Level::Subtle: return "subtle";
        case Level::Moderate: return "moderate";
        case Level::Significant: return "significant";
    }
    return "";
}

std::string_view to_string(Amount a) noexcept {
    switch (a) {
        case Amount::AFew: return "a-few";
        case Amount::Several: return "several";
        case Amount::Many: return "many";
    }
    return "";
}

std::string_view to_string(Location l) noexcept { return kLocationNames[static_cast<int>(l)]; }

std::string_view location_phrase(Location l) noexcept {
    return kLocationPhrases[static_cast<int>(l)];
}

int grid3_cell(const BoundingBox& b, int w, int h) noexcept {
    return bucket(b.y, b.height, h, 3) * 3 + bucket(b.x, b.width, w, 3);
}

int grid2_cell(const BoundingBox& b, int w, int h) noexcept {
    return bucket(b.y, b.height, h, 2) * 2 + bucket(b.x, b.width, w, 2);
}

Location localize_boxes(const std::vector<BoundingBox>& anchors, int w, int h) {
    if (anchors.empty()) throw Error("localize_changes: empty change list");
    const std::size_t n = anchors.size();
    std::array<std::size_t, 9> nine{};
    std::array<std::size_t, 4> four{};
    for (const auto& b : anchors) {
        ++nine[static_cast<std::size_t>(grid3_cell(b, w, h))];
        ++four[static_cast<std::size_t>(grid2_cell(b, w, h))];
    }
    for (std::size_t i = 0; i < nine.size(); ++i) {
        if (2 * nine[i] > n) return static_cast<Location>(i);
    }
    for (std::size_t i = 0; i < four.size(); ++i) {
        if (2 * four[i] > n) {
            return static_cast<Location>(static_cast<int>(Location::QuadrantTopLeft) + static_cast<int>(i));
        }
    }
    return Location::AcrossTheScreen;
}

Location localize_changes(const std::vector<GuiChange>& changes, int w, int h) {
    std::vector<BoundingBox> anchors;
    anchors.reserve(changes.size());
    for (const auto& c : changes) anchors.push_back(c.anchor_bounds());
    return localize_boxes(anchors, w, h);
}

Level level_for(double diff_percent, const SummaryThresholds& t) noexcept {
    if (diff_percent < t.subtle_below) return Level::Subtle;
    if (diff_percent > t.significant_above) return Level::Significant;
    return Level::Moderate;
}

Amount amount_for(int change_count, const SummaryThresholds& t) noexcept {
    if (change_count <= t.few_max) return Amount::AFew;
    if (change_count <= t.several_max) return Amount::Several;
    return Amount::Many;
}

SummaryCharacteristics characterize(const std::vector<GuiChange>& changes,
                                    const DiffResult& full_screen_diff, int w, int h,
                                    const SummaryThresholds& t) {
    SummaryCharacteristics sc;
    sc.change_count = static_cast<int>(changes.size());
    sc.diff_percent = full_screen_diff.diff_percent;
    sc.level = level_for(sc.diff_percent, t);
    sc.amount = amount_for(sc.change_count, t);
    sc.location = changes.empty() ? Location::AcrossTheScreen : localize_changes(changes, w, h);
    return sc;
}

std::string generate_summary(const SummaryCharacteristics& sc) {
    if (sc.change_count == 0) return "No GUI changes were detected between these screens.";
    std::string amount;
    switch (sc.amount) {
        case Amount::AFew: amount = "a few"; break;
        case Amount::Several: amount = "several"; break;
        case Amount::Many: amount = "many"; break;
    }
    std::string s = "There were " + amount + " changes between versions, representing a " +
                    std::string(to_string(sc.level)) + " visual difference. ";
    if (sc.location == Location::AcrossTheScreen) {
        s += "Changes are distributed across the screen.";
    } else {
        s += "Most changes occurred in the " + std::string(location_phrase(sc.location)) +
             " of the screen.";
    }
    return s;
}

std::string component_label(const GuiComponent& c) {
    if (c.has_text()) return "\"" + *c.text + "\"";
    if (c.resource_id && !c.resource_id->empty()) return "\"" + *c.resource_id + "\"";
    return short_type_name(c.component_type) + " #" + std::to_string(c.node_index);
}

std::string describe_change(const GuiChange& c) {
    const GuiComponent& any = c.old_component ? *c.old_component : *c.new_component;
    const std::string name = component_label(any);
    switch (c.specific) {
        case ChangeType::TextContent:
            return "Text changed from \"" + c.old_component->text.value_or("") + "\" to \"" +
                   c.new_component->text.value_or("") + "\".";
        case ChangeType::FontStyle:
            return "The font style of the " + name + " component changed.";
        case ChangeType::FontColor:
            return "The font color of the " + name + " component changed.";
        case ChangeType::VerticalTranslation:
            return "The " + name + " component moved " + magnitude_px(c, true) + " px vertically.";
        case ChangeType::HorizontalTranslation:
            return "The " + name + " component moved " + magnitude_px(c, true) + " px horizontally.";
        case ChangeType::VerticalSize:
            return "The height of the " + name + " component changed by " + magnitude_px(c, false) +
                   " px.";
        case ChangeType::HorizontalSize:
            return "The width of the " + name + " component changed by " + magnitude_px(c, false) +
                   " px.";
        case ChangeType::ImageColor:
            return "The image colors of the " + name + " component changed.";
        case ChangeType::Removed:
            return "The " + name + " component was removed.";
        case ChangeType::Added:
            return "A new " + short_type_name(c.new_component->component_type) +
                   " component was added.";
        case ChangeType::ImageChange:
            return "The image of the " + name + " component was replaced.";
        case ChangeType::ComponentType:
            return "The " + name + " component changed type from " +
                   short_type_name(c.old_component->component_type) + " to " +
                   short_type_name(c.new_component->component_type) + ".";
    }
    return "";
}

}  // namespace guidiff
