#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "guidiff/component_matcher.hpp"
#include "guidiff/image_analysis.hpp"
#include "guidiff/model.hpp"

namespace guidiff {

enum class ChangeCategory { TextChange, LayoutChange, ResourceChange };

/// The twelve specific change types, grouped by category.
enum class ChangeType {
    TextContent,
    FontStyle,
    FontColor,
    VerticalTranslation,
    HorizontalTranslation,
    VerticalSize,
    HorizontalSize,
    ImageColor,
    Removed,
    Added,
    ImageChange,
    ComponentType,
};

inline constexpr std::array<ChangeType, 12> kAllChangeTypes = {
    ChangeType::TextContent,         ChangeType::FontStyle,     ChangeType::FontColor,
    ChangeType::VerticalTranslation, ChangeType::HorizontalTranslation,
    ChangeType::VerticalSize,        ChangeType::HorizontalSize, ChangeType::ImageColor,
    ChangeType::Removed,             ChangeType::Added,         ChangeType::ImageChange,
    ChangeType::ComponentType,
};

ChangeCategory category_of(ChangeType t) noexcept;
std::string_view to_string(ChangeType t) noexcept;
std::string_view to_string(ChangeCategory c) noexcept;
std::optional<ChangeType> parse_change_type(std::string_view s) noexcept;

struct GuiChange {
    ChangeCategory category = ChangeCategory::TextChange;
    ChangeType specific = ChangeType::TextContent;
    std::optional<GuiComponent> old_component;
    std::optional<GuiComponent> new_component;
    /// Signed pixel delta for layout changes, histogram similarity for font
    /// changes, binary diff percent for image changes.
    std::optional<double> magnitude;
    std::string detail;

    /// Bounds used to place the change on screen: new side for Added, old otherwise.
    [[nodiscard]] BoundingBox anchor_bounds() const;
};

GuiChange make_change(ChangeType t, std::optional<GuiComponent> old_c,
                      std::optional<GuiComponent> new_c, std::optional<double> magnitude = {},
                      std::string detail = {});

struct DetectorConfig {
    /// LC: layout deltas strictly above this many pixels are reported.
    double layout_threshold = 5.0;
    /// FC: crop histograms "match" when similarity >= this.
    double font_color_similarity = 0.85;
    /// IC: binarized crops "match" when their perceptual diff percent <= this.
    double image_change_percent = 20.0;
    /// Swap the ImageColor / ImageChange labels (literal reading of the rule text).
    bool paper_literal_image_rule = false;
    double gamma_cutoff_ratio = kDefaultGammaCutoffRatio;
    /// A matched pair gets pixel analysis when diff regions cover more than this
    /// fraction of either component's area.
    double candidate_overlap = 0.01;
    PerceptualConfig perceptual;
};

/// Lowercase and drop whitespace, used before text comparison.
std::string normalize_text(std::string_view s);

/// Sub-image under c.bounds (clamped to the screenshot). Throws on zero area.
Raster crop_component(const ScreenCapture& capture, const GuiComponent& c);

std::vector<GuiChange> detect_layout_changes(const GuiComponent& old_c, const GuiComponent& new_c,
                                             double layout_threshold);

struct CropPair {
    const Raster& old_crop;
    const Raster& new_crop;
};

/// TextContent from normalized strings; when the strings agree and crops are
/// given and differ perceptually, FontColor or FontStyle by histogram similarity.
std::vector<GuiChange> detect_text_changes(const GuiComponent& old_c, const GuiComponent& new_c,
                                           std::optional<CropPair> crops,
                                           const DetectorConfig& config);

/// ImageColor / ImageChange for two perceptually different crops, or nullopt
/// when the crops do not differ. `binary_diff_percent` receives the diff of the
/// binarized crops.
std::optional<ChangeType> classify_image_pair(const Raster& old_crop, const Raster& new_crop,
                                              const DetectorConfig& config,
                                              double* binary_diff_percent = nullptr);

/// Removed / Added from the matching, ComponentType for every matched pair,
/// and image classification for non-text matched pairs flagged in
/// `pixel_candidates` (indexed like matching.matched).
std::vector<GuiChange> detect_resource_changes(const ComponentMatching& matching,
                                               const ScreenPair& pair, const DetectorConfig& config,
                                               const std::vector<char>& pixel_candidates);

struct Detection {
    ComponentMatching matching;
    DiffResult screen_diff;
    std::vector<GuiChange> changes;
};

/// Full per-pair analysis; changes are deduplicated and ordered by old-side
/// preorder (Added changes last, by new-side preorder), then by change type.
Detection analyze_pair(const ScreenPair& pair, const DetectorConfig& config = {});

std::vector<GuiChange> detect_changes(const ScreenPair& pair, const DetectorConfig& config = {});

}  // namespace guidiff
