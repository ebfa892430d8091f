#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "guidiff/change_detector.hpp"
#include "guidiff/raster.hpp"

namespace guidiff {

struct AnnotatedScreens {
    Raster old_screen;
    Raster highlight;
    Raster new_screen;
};

inline constexpr int kAnnotationThickness = 3;
inline constexpr Rgb kAnnotationColor{255, 0, 0};
/// Dash pattern of the Added outline: kDashOn px drawn, kDashOff px skipped.
inline constexpr int kDashOn = 6;
inline constexpr int kDashOff = 4;

/// Draws a rectangle outline of the given thickness inside `box` (clamped).
void draw_box(Raster& image, const BoundingBox& box, Rgb color, int thickness, bool dashed);

/// Left and right are the screenshots unchanged; the middle is the old
/// screenshot with a red 3 px outline per change (old-side bounds, Added
/// changes dashed at new-side bounds).
AnnotatedScreens annotate_screens(const ScreenPair& pair, const std::vector<GuiChange>& changes);

struct SubtreeNode {
    std::string label;
    int old_index = 0;
    int new_index = 0;
    std::vector<SubtreeNode> children;

    [[nodiscard]] std::size_t size() const;
};

/// Largest top-down ordered common subtree. Roots match when their
/// component_type is equal; children are aligned by an ordered LCS weighted by
/// the size of the recursive match. nullopt when the roots differ.
std::optional<SubtreeNode> common_subtree(const GuiHierarchy& h_old, const GuiHierarchy& h_new);

struct ReportEntry {
    GuiChange change;
    std::string description;
    std::optional<Raster> old_crop;
    std::optional<Raster> new_crop;
    std::string old_crop_path;  // relative to the pair directory; empty when absent
    std::string new_crop_path;
};

struct ChangeReport {
    std::string pair_id;
    std::string old_source;
    std::string new_source;
    std::string activity;
    double assignment_cost = 0.0;
    double diff_percent = 0.0;
    std::string summary;
    std::vector<ReportEntry> entries;
    AnnotatedScreens screens;
    std::optional<SubtreeNode> common_tree;
    std::string generated_at;
};

inline constexpr const char* kOldScreenAsset = "assets/old.png";
inline constexpr const char* kHighlightAsset = "assets/highlight.png";
inline constexpr const char* kNewScreenAsset = "assets/new.png";

ChangeReport build_report(const ScreenPair& pair, const std::vector<GuiChange>& changes,
                          double diff_percent, const std::string& summary,
                          const std::string& generated_at);

std::string render_report_html(const ChangeReport& report);

/// Writes `<out_dir>/<pair_id>/report.html`, `changes.jsonl` and `assets/*.png`.
/// Returns the report path.
std::filesystem::path render_report(const ChangeReport& report, const std::filesystem::path& out_dir);

struct IndexEntry {
    std::string pair_id;
    std::string activity;
    double assignment_cost = 0.0;
    int change_count = 0;
    std::string summary;
    std::optional<std::string> error;  // set when the pair failed
};

struct UnmatchedScreen {
    std::string side;  // "old" or "new"
    std::string source_id;
    std::string activity;
    std::string window_name;
};

std::string render_index_html(const std::vector<IndexEntry>& entries,
                              const std::vector<UnmatchedScreen>& unmatched,
                              const std::string& generated_at);

}  // namespace guidiff
