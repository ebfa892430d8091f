#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "guidiff/change_detector.hpp"
#include "guidiff/metrics.hpp"
#include "guidiff/model.hpp"

namespace guidiff::corpus {

enum class IconShape { Disk, Ring, Plus, Bars, Triangle, Checker };
inline constexpr int kIconShapeCount = 6;

/// Shape used by ImageChange mutations; every swap differs in well over 20% of the icon.
IconShape swapped_shape(IconShape s) noexcept;

struct IconSpec {
    IconShape shape = IconShape::Disk;
    Rgb color{40, 40, 40};
};

struct ElementSpec {
    std::string component_type;
    BoundingBox bounds;
    std::optional<Rgb> fill;
    std::optional<std::string> text;
    Rgb text_color{0, 0, 0};
    bool bold = false;
    int text_scale = 3;
    /// Text is centered when true, else left aligned with a 3 px inset.
    bool center_text = false;
    std::optional<IconSpec> icon;
    std::optional<std::string> resource_id;
    std::vector<ElementSpec> children;
};

struct ScreenSpec {
    int width = 360;
    int height = 640;
    std::string activity;
    std::string window_name;
    std::string window_type = "ACTIVITY";
    int capture_index = 0;
    std::string source_id;
    /// Full-screen root; its fill is the screen background.
    ElementSpec root;
};

/// Rasterizes a spec and builds the matching hierarchy. Throws Error when an
/// element has no area, leaves its parent, or overlaps a sibling.
ScreenCapture render_screen(const ScreenSpec& spec);

/// Deterministic random screen layout. `index` makes activity and source ids unique.
ScreenSpec random_screen_spec(std::uint64_t seed, int index, int width = 360, int height = 640);

/// Leaves of the spec in preorder (same order as leaf_components of the render).
std::vector<const ElementSpec*> spec_leaves(const ScreenSpec& spec);

struct MutationSpec {
    ChangeType specific = ChangeType::TextContent;
    /// Preorder leaf index in the original spec; ignored for Added.
    int target_leaf = 0;
    int amount = 0;  // px for layout mutations
    std::string text;
    Rgb color{};
    IconShape shape = IconShape::Disk;
    std::string component_type;
    std::optional<ElementSpec> added;  // element inserted into the content container
};

struct MutatedScreen {
    ScreenSpec spec;
    ScreenCapture capture;
    GroundTruthChange truth;
};

/// Applies one mutation and re-renders. Throws Error when the mutation does
/// not fit the target (wrong kind of element, collision, out of bounds).
MutatedScreen apply_mutation(const ScreenSpec& spec, const MutationSpec& m);

/// Picks a target and parameters for `type` that apply cleanly to `spec`, or
/// nullopt when the layout offers none.
std::optional<MutationSpec> make_mutation(const ScreenSpec& spec, ChangeType type, std::mt19937_64& rng);

struct CorpusPair {
    std::string pair_id;
    ScreenSpec old_spec;
    ScreenCapture old_capture;
    ScreenCapture new_capture;
    MutationSpec mutation;
    GroundTruthChange truth;
};

struct CorpusOptions {
    std::uint64_t seed = 1;
    int per_type = 9;
    std::vector<ChangeType> types{kAllChangeTypes.begin(), kAllChangeTypes.end()};
    int width = 360;
    int height = 640;
};

/// One single-mutation pair per (type, repetition), interleaved by type.
std::vector<CorpusPair> generate_corpus(const CorpusOptions& options);

/// Writes `<dir>/old`, `<dir>/new` capture sets and `<dir>/truth/<pair_id>.truth.jsonl`.
void write_corpus(const std::vector<CorpusPair>& corpus, const std::filesystem::path& dir);

}  // namespace guidiff::corpus
