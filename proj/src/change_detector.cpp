#include "guidiff/change_detector.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <tuple>

#include "guidiff/ingest.hpp"

namespace guidiff {

namespace {

constexpr std::string_view kTypeNames[] = {
    "TextContent",   "FontStyle",      "FontColor",  "VerticalTranslation",
    "HorizontalTranslation", "VerticalSize", "HorizontalSize", "ImageColor",
    "Removed",       "Added",          "ImageChange", "ComponentType",
};

std::string signed_px(double v) {
    const long long iv = std::llround(v);
    return (iv > 0 ? "+" : "") + std::to_string(iv) + " px";
}

bool is_size_change(ChangeType t) {
    return t == ChangeType::HorizontalSize || t == ChangeType::VerticalSize;
}

// Covered area of `b` by diff regions, summed per region and capped at b's area.
bool overlaps_diff(const BoundingBox& b, const std::vector<BoundingBox>& regions, double fraction) {
    const std::int64_t area = b.area();
    if (area <= 0) return false;
    std::int64_t covered = 0;
    for (const auto& r : regions) {
        covered += bbox_geometry(b, r).intersection_area;
        if (covered >= area) break;
    }
    return static_cast<double>(std::min(covered, area)) > fraction * static_cast<double>(area);
}

}  // namespace

ChangeCategory category_of(ChangeType t) noexcept {
    switch (t) {
        case ChangeType::TextContent:
        case ChangeType::FontStyle:
        case ChangeType::FontColor:
            return ChangeCategory::TextChange;
        case ChangeType::VerticalTranslation:
        case ChangeType::HorizontalTranslation:
        case ChangeType::VerticalSize:
        case ChangeType::HorizontalSize:
            return ChangeCategory::LayoutChange;
        default:
            return ChangeCategory::ResourceChange;
    }
}

std::string_view to_string(ChangeType t) noexcept { return kTypeNames[static_cast<int>(t)]; }

std::string_view to_string(ChangeCategory c) noexcept {
    switch (c) {
        case ChangeCategory::TextChange: return "TextChange";
        case ChangeCategory::LayoutChange: return "LayoutChange";
        case ChangeCategory::ResourceChange: return "ResourceChange";
    }
    return "";
}

std::optional<ChangeType> parse_change_type(std::string_view s) noexcept {
    for (ChangeType t : kAllChangeTypes) {
        if (to_string(t) == s) return t;
    }
    return std::nullopt;
}

BoundingBox GuiChange::anchor_bounds() const {
    if (specific == ChangeType::Added || !old_component) return new_component->bounds;
    return old_component->bounds;
}

GuiChange make_change(ChangeType t, std::optional<GuiComponent> old_c,
                      std::optional<GuiComponent> new_c, std::optional<double> magnitude,
                      std::string detail) {
    GuiChange c;
    c.category = category_of(t);
    c.specific = t;
    c.old_component = std::move(old_c);
    c.new_component = std::move(new_c);
    c.magnitude = magnitude;
    c.detail = std::move(detail);
    return c;
}

std::string normalize_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char ch : s) {
        if (std::isspace(ch)) continue;
        out.push_back(static_cast<char>(std::tolower(ch)));
    }
    return out;
}

Raster crop_component(const ScreenCapture& capture, const GuiComponent& c) {
    const BoundingBox b = c.bounds.clamped(capture.image.width(), capture.image.height());
    if (b.area() <= 0) throw Error("crop_component: zero-area bounds");
    return capture.image.crop(b.x, b.y, b.width, b.height);
}

std::vector<GuiChange> detect_layout_changes(const GuiComponent& old_c, const GuiComponent& new_c,
                                             double layout_threshold) {
    std::vector<GuiChange> out;
    const auto check = [&](int from, int to, ChangeType t, const char* what) {
        const double d = static_cast<double>(to) - from;
        if (std::abs(d) > layout_threshold) {
            out.push_back(make_change(t, old_c, new_c, d, std::string(what) + " " + signed_px(d)));
        }
    };
    check(old_c.bounds.y, new_c.bounds.y, ChangeType::VerticalTranslation, "dy");
    check(old_c.bounds.x, new_c.bounds.x, ChangeType::HorizontalTranslation, "dx");
    check(old_c.bounds.height, new_c.bounds.height, ChangeType::VerticalSize, "dh");
    check(old_c.bounds.width, new_c.bounds.width, ChangeType::HorizontalSize, "dw");
    return out;
}

std::vector<GuiChange> detect_text_changes(const GuiComponent& old_c, const GuiComponent& new_c,
                                           std::optional<CropPair> crops,
                                           const DetectorConfig& config) {
    std::vector<GuiChange> out;
    const std::string a = old_c.text.value_or("");
    const std::string b = new_c.text.value_or("");
    if (normalize_text(a) != normalize_text(b)) {
        out.push_back(make_change(ChangeType::TextContent, old_c, new_c, std::nullopt,
                                  "\"" + a + "\" -> \"" + b + "\""));
        return out;
    }
    if (!crops) return out;
    const DiffResult d = perceptual_diff(crops->old_crop, crops->new_crop, config.perceptual);
    if (d.diff_percent <= 0.0) return out;
    const double sim = histogram_similarity(color_histogram(crops->old_crop),
                                            color_histogram(crops->new_crop));
    const ChangeType t = sim < config.font_color_similarity ? ChangeType::FontColor
                                                             : ChangeType::FontStyle;
    out.push_back(make_change(t, old_c, new_c, sim, "histogram similarity " + std::to_string(sim)));
    return out;
}

std::optional<ChangeType> classify_image_pair(const Raster& old_crop, const Raster& new_crop,
                                              const DetectorConfig& config,
                                              double* binary_diff_percent) {
    if (perceptual_diff(old_crop, new_crop, config.perceptual).diff_percent <= 0.0) {
        return std::nullopt;
    }
    const Raster a = binarize(old_crop).to_raster();
    const Raster b = binarize(new_crop).to_raster();
    const double pct = perceptual_diff(a, b, config.perceptual).diff_percent;
    if (binary_diff_percent) *binary_diff_percent = pct;
    bool shapes_match = pct <= config.image_change_percent;
    if (config.paper_literal_image_rule) shapes_match = !shapes_match;
    return shapes_match ? ChangeType::ImageColor : ChangeType::ImageChange;
}

std::vector<GuiChange> detect_resource_changes(const ComponentMatching& matching,
                                               const ScreenPair& pair, const DetectorConfig& config,
                                               const std::vector<char>& pixel_candidates) {
    std::vector<GuiChange> out;
    for (const auto& c : matching.removed) {
        out.push_back(make_change(ChangeType::Removed, c, std::nullopt));
    }
    for (const auto& c : matching.added) {
        out.push_back(make_change(ChangeType::Added, std::nullopt, c));
    }
    for (std::size_t i = 0; i < matching.matched.size(); ++i) {
        const auto& m = matching.matched[i];
        if (m.old_component.component_type != m.new_component.component_type) {
            out.push_back(make_change(ChangeType::ComponentType, m.old_component, m.new_component,
                                      std::nullopt,
                                      m.old_component.component_type + " -> " +
                                          m.new_component.component_type));
        }
        if (m.old_component.has_text() || m.new_component.has_text()) continue;
        if (i >= pixel_candidates.size() || !pixel_candidates[i]) continue;
        const Raster a = crop_component(*pair.old_screen, m.old_component);
        const Raster b = crop_component(*pair.new_screen, m.new_component);
        double pct = 0.0;
        if (const auto t = classify_image_pair(a, b, config, &pct)) {
            out.push_back(make_change(*t, m.old_component, m.new_component, pct,
                                      "binary diff " + std::to_string(pct) + "%"));
        }
    }
    return out;
}

Detection analyze_pair(const ScreenPair& pair, const DetectorConfig& config) {
    const ScreenCapture& old_cap = *pair.old_screen;
    const ScreenCapture& new_cap = *pair.new_screen;

    Detection det;
    det.screen_diff = perceptual_diff(old_cap.image, new_cap.image, config.perceptual);
    const double cutoff =
        gamma_cutoff_for(old_cap.image.width(), old_cap.image.height(), config.gamma_cutoff_ratio);
    det.matching = match_components(leaf_components(old_cap.hierarchy),
                                    leaf_components(new_cap.hierarchy), cutoff);

    // Diff regions are in old-screen coordinates; the new screen is resampled onto it.
    const auto& regions = det.screen_diff.diff_regions;
    std::vector<GuiChange> all;
    std::vector<char> candidates(det.matching.matched.size(), 0);
    for (std::size_t i = 0; i < det.matching.matched.size(); ++i) {
        const auto& m = det.matching.matched[i];
        auto layout = detect_layout_changes(m.old_component, m.new_component, config.layout_threshold);
        const bool resized = std::any_of(layout.begin(), layout.end(),
                                         [](const GuiChange& c) { return is_size_change(c.specific); });
        all.insert(all.end(), layout.begin(), layout.end());

        const bool pixel_candidate =
            !resized && (overlaps_diff(m.old_component.bounds, regions, config.candidate_overlap) ||
                         overlaps_diff(m.new_component.bounds, regions, config.candidate_overlap));
        candidates[i] = pixel_candidate ? 1 : 0;

        if (m.old_component.has_text() || m.new_component.has_text()) {
            std::vector<GuiChange> text;
            if (pixel_candidate) {
                const Raster a = crop_component(old_cap, m.old_component);
                const Raster b = crop_component(new_cap, m.new_component);
                text = detect_text_changes(m.old_component, m.new_component, CropPair{a, b}, config);
            } else {
                text = detect_text_changes(m.old_component, m.new_component, std::nullopt, config);
            }
            all.insert(all.end(), text.begin(), text.end());
        }
    }
    auto resource = detect_resource_changes(det.matching, pair, config, candidates);
    all.insert(all.end(), resource.begin(), resource.end());

    const auto key = [](const GuiChange& c) {
        const bool has_old = c.old_component.has_value();
        const int idx = has_old ? c.old_component->node_index : c.new_component->node_index;
        const int new_idx = c.new_component ? c.new_component->node_index : -1;
        return std::make_tuple(has_old ? 0 : 1, idx, static_cast<int>(c.specific), new_idx);
    };
    std::stable_sort(all.begin(), all.end(),
                     [&](const GuiChange& a, const GuiChange& b) { return key(a) < key(b); });
    all.erase(std::unique(all.begin(), all.end(),
                          [&](const GuiChange& a, const GuiChange& b) { return key(a) == key(b); }),
              all.end());
    det.changes = std::move(all);
    return det;
}

std::vector<GuiChange> detect_changes(const ScreenPair& pair, const DetectorConfig& config) {
    return analyze_pair(pair, config).changes;
}

}  // namespace guidiff
