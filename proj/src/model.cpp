#include "guidiff/model.hpp"

#include <algorithm>

namespace guidiff {

BoundingBox BoundingBox::clamped(int w, int h) const noexcept {
    const int x0 = std::clamp(x, 0, w);
    const int y0 = std::clamp(y, 0, h);
    const int x1 = std::clamp(x + width, 0, w);
    const int y1 = std::clamp(y + height, 0, h);
    return {x0, y0, std::max(x1 - x0, 0), std::max(y1 - y0, 0)};
}

BoxOverlap bbox_geometry(const BoundingBox& a, const BoundingBox& b) noexcept {
    const std::int64_t ix = std::max(0, std::min(a.right(), b.right()) - std::max(a.x, b.x));
    const std::int64_t iy = std::max(0, std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y));
    BoxOverlap out;
    out.intersection_area = ix * iy;
    const std::int64_t uni = a.area() + b.area() - out.intersection_area;
    out.iou = uni > 0 ? static_cast<double>(out.intersection_area) / static_cast<double>(uni) : 0.0;
    return out;
}

std::string short_type_name(const std::string& component_type) {
    const auto dot = component_type.rfind('.');
    return dot == std::string::npos ? component_type : component_type.substr(dot + 1);
}

GuiHierarchy::GuiHierarchy(std::vector<HierarchyNode> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) return;
    if (nodes_[0].parent) throw Error("hierarchy root must not have a parent");

    std::vector<int> seen(nodes_.size(), 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        for (std::size_t c : nodes_[i].children) {
            if (c >= nodes_.size() || c == 0) throw Error("hierarchy child index out of range");
            if (++seen[c] > 1) throw Error("hierarchy node has more than one parent");
            if (nodes_[c].parent != i) throw Error("hierarchy parent link mismatch");
        }
    }
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        if (seen[i] != 1) throw Error("hierarchy node unreachable from root");
    }

    // Preorder check: walking the tree must visit indices 0,1,2,...
    std::vector<std::size_t> stack{0};
    std::size_t expected = 0;
    while (!stack.empty()) {
        const std::size_t n = stack.back();
        stack.pop_back();
        if (n != expected++) throw Error("hierarchy nodes are not stored in preorder");
        const auto& ch = nodes_[n].children;
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }

    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        auto& c = nodes_[i].component;
        c.node_index = static_cast<int>(i);
        c.is_leaf = nodes_[i].children.empty();
        c.excluded = c.bounds.area() == 0;
    }
}

int GuiHierarchy::depth() const {
    if (nodes_.empty()) return 0;
    std::vector<int> d(nodes_.size(), 1);
    int best = 1;
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        d[i] = d[*nodes_[i].parent] + 1;
        best = std::max(best, d[i]);
    }
    return best;
}

std::size_t HierarchyBuilder::open(GuiComponent c) {
    const std::size_t idx = nodes_.size();
    HierarchyNode n;
    n.component = std::move(c);
    if (!stack_.empty()) {
        n.parent = stack_.back();
        nodes_[stack_.back()].children.push_back(idx);
    } else if (!nodes_.empty()) {
        throw Error("hierarchy already has a root");
    }
    nodes_.push_back(std::move(n));
    stack_.push_back(idx);
    return idx;
}

void HierarchyBuilder::close() {
    if (stack_.empty()) throw Error("unbalanced hierarchy close");
    stack_.pop_back();
}

GuiHierarchy HierarchyBuilder::build() {
    if (!stack_.empty()) throw Error("hierarchy has unclosed nodes");
    return GuiHierarchy(std::move(nodes_));
}

std::string ScreenPair::pair_id() const {
    return old_screen->source_id + "-" + new_screen->source_id;
}

}  // namespace guidiff
