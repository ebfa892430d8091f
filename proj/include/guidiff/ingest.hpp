#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "guidiff/model.hpp"

namespace guidiff {

using Warnings = std::vector<std::string>;

struct CaptureSet {
    std::string label;
    std::vector<CapturePtr> captures;  // ordered by capture_index
};

/// "[x1,y1][x2,y2]" -> (x1, y1, x2-x1, y2-y1). Throws ParseError on malformed
/// text or inverted corners.
BoundingBox parse_bounds(std::string_view bounds_text);

/// Parses a uiautomator-style dump. Bounds are clamped to image_dims, node_index
/// is assigned in preorder. Nodes without a bounds attribute are dropped together
/// with their subtree (one warning each). Several top-level nodes are wrapped in a
/// synthetic full-screen "hierarchy" root.
GuiHierarchy parse_hierarchy(std::string_view xml_text, std::pair<int, int> image_dims,
                             Warnings* warnings = nullptr);

/// Inverse of parse_hierarchy for debugging and corpus output.
std::string serialize_hierarchy(const GuiHierarchy& h);

/// All leaves in preorder. Zero-area leaves are returned with `excluded` set.
std::vector<GuiComponent> leaf_components(const GuiHierarchy& h);

/// Loads every complete NNN.png / NNN.xml / NNN.json triple in `directory`.
/// Incomplete triples and per-capture read/parse failures are reported in
/// `warnings` and skipped; throws IoError when nothing usable remains.
CaptureSet load_capture_set(const std::filesystem::path& directory, const std::string& label,
                            Warnings& warnings, int parallelism = 1);

/// Writes one capture as a triple under `directory` using `source_id` as basename.
void write_capture(const std::filesystem::path& directory, const ScreenCapture& capture);

}  // namespace guidiff
