#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "guidiff/raster.hpp"

namespace guidiff {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Axis-aligned box in absolute screen pixels; (x, y) is the top-left corner.
struct BoundingBox {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;

    [[nodiscard]] std::int64_t area() const noexcept {
        return static_cast<std::int64_t>(width) * height;
    }
    [[nodiscard]] int right() const noexcept { return x + width; }
    [[nodiscard]] int bottom() const noexcept { return y + height; }

    /// Intersection with [0,w)x[0,h); width/height collapse to 0 when fully outside.
    [[nodiscard]] BoundingBox clamped(int w, int h) const noexcept;

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct BoxOverlap {
    std::int64_t intersection_area = 0;
    double iou = 0.0;
};

BoxOverlap bbox_geometry(const BoundingBox& a, const BoundingBox& b) noexcept;

struct GuiComponent {
    std::string component_type;
    BoundingBox bounds;
    std::optional<std::string> text;
    std::optional<std::string> resource_id;
    bool is_leaf = true;
    int node_index = 0;
    // Zero-area nodes stay in the model but never take part in matching or diffing.
    bool excluded = false;

    [[nodiscard]] bool has_text() const noexcept { return text && !text->empty(); }
};

/// Last segment of a dotted class name ("android.widget.Button" -> "Button").
std::string short_type_name(const std::string& component_type);

struct HierarchyNode {
    GuiComponent component;
    std::vector<std::size_t> children;
    std::optional<std::size_t> parent;
};

/// Rooted, ordered GUI tree stored in preorder; nodes()[0] is the root and
/// nodes()[i].component.node_index == i.
class GuiHierarchy {
public:
    GuiHierarchy() = default;

    /// Validates the tree shape and recomputes node_index / is_leaf / excluded.
    explicit GuiHierarchy(std::vector<HierarchyNode> nodes);

    [[nodiscard]] const std::vector<HierarchyNode>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const HierarchyNode& root() const { return nodes_.at(0); }
    [[nodiscard]] const HierarchyNode& node(std::size_t i) const { return nodes_.at(i); }
    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
    [[nodiscard]] bool empty() const noexcept { return nodes_.empty(); }
    [[nodiscard]] int depth() const;

private:
    std::vector<HierarchyNode> nodes_;
};

/// Builder that emits nodes in preorder; used by the parser and the corpus renderer.
class HierarchyBuilder {
public:
    /// Opens a node as a child of the currently open node (or as root).
    std::size_t open(GuiComponent c);
    void close();
    [[nodiscard]] bool has_open() const noexcept { return !stack_.empty(); }
    GuiHierarchy build();

private:
    std::vector<HierarchyNode> nodes_;
    std::vector<std::size_t> stack_;
};

struct ScreenCapture {
    Raster image;
    GuiHierarchy hierarchy;
    std::string activity;
    std::string window_name;
    std::string window_type;
    int capture_index = 0;
    std::string source_id;
};

using CapturePtr = std::shared_ptr<const ScreenCapture>;

struct ScreenPair {
    CapturePtr old_screen;
    CapturePtr new_screen;
    double assignment_cost = 0.0;

    /// "<old source_id>-<new source_id>", used as the report directory name.
    [[nodiscard]] std::string pair_id() const;
};

}  // namespace guidiff
