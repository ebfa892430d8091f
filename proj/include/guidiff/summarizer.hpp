#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "guidiff/change_detector.hpp"
#include "guidiff/image_analysis.hpp"

namespace guidiff {

enum class Level { Subtle, Moderate, Significant };
enum class Amount { AFew, Several, Many };

/// Nine 3x3 cells, then four 2x2 quadrants, then AcrossTheScreen.
enum class Location {
    TopLeft, TopCenter, TopRight,
    MiddleLeft, Center, MiddleRight,
    BottomLeft, BottomCenter, BottomRight,
    QuadrantTopLeft, QuadrantTopRight, QuadrantBottomLeft, QuadrantBottomRight,
    AcrossTheScreen,
};

std::string_view to_string(Level l) noexcept;
std::string_view to_string(Amount a) noexcept;
std::string_view to_string(Location l) noexcept;

/// Phrase used in "Most changes occurred in the {phrase} of the screen."
std::string_view location_phrase(Location l) noexcept;

struct SummaryThresholds {
    /// diff_percent < subtle_below is subtle; > significant_above is significant.
    double subtle_below = 5.0;
    double significant_above = 20.0;
    /// count <= few_max is a-few; <= several_max is several; else many.
    int few_max = 3;
    int several_max = 10;
};

struct SummaryCharacteristics {
    Level level = Level::Subtle;
    Location location = Location::AcrossTheScreen;
    Amount amount = Amount::AFew;
    int change_count = 0;
    double diff_percent = 0.0;
};

/// 3x3 cell (0..8, row-major) holding the center of `b` on a w x h screen.
int grid3_cell(const BoundingBox& b, int screen_width, int screen_height) noexcept;
/// 2x2 quadrant (0..3, row-major) holding the center of `b`.
int grid2_cell(const BoundingBox& b, int screen_width, int screen_height) noexcept;

/// Majority cell of the anchor boxes; throws Error on an empty list.
Location localize_boxes(const std::vector<BoundingBox>& anchors, int screen_width,
                        int screen_height);
Location localize_changes(const std::vector<GuiChange>& changes, int screen_width,
                          int screen_height);

Level level_for(double diff_percent, const SummaryThresholds& t = {}) noexcept;
Amount amount_for(int change_count, const SummaryThresholds& t = {}) noexcept;

SummaryCharacteristics characterize(const std::vector<GuiChange>& changes,
                                    const DiffResult& full_screen_diff, int screen_width,
                                    int screen_height, const SummaryThresholds& t = {});

std::string generate_summary(const SummaryCharacteristics& sc);

/// Human-readable name of a component: quoted text, else quoted resource id,
/// else "<ShortType> #<node_index>".
std::string component_label(const GuiComponent& c);

std::string describe_change(const GuiChange& c);

}  // namespace guidiff
