#pragma once

#include <vector>

#include "guidiff/model.hpp"

namespace guidiff {

struct MatchedComponents {
    GuiComponent old_component;
    GuiComponent new_component;
    double gamma = 0.0;
};

struct ComponentMatching {
    std::vector<MatchedComponents> matched;  // in order of acceptance (ascending gamma)
    std::vector<GuiComponent> removed;       // old-only, preorder
    std::vector<GuiComponent> added;         // new-only, preorder
};

inline constexpr double kDefaultGammaCutoffRatio = 0.25;

/// Spatial distance |dx| + |dy| + |dw| + |dh| between two components' bounds.
double gamma(const GuiComponent& m, const GuiComponent& r) noexcept;

/// gamma_cutoff derived from the screen size: ratio * (width + height).
double gamma_cutoff_for(int screen_width, int screen_height,
                        double ratio = kDefaultGammaCutoffRatio) noexcept;

/// Greedy one-to-one matching: repeatedly accept the globally smallest gamma
/// among still-unmatched cross pairs, as long as gamma <= gamma_cutoff. Ties go
/// to the lowest (old node_index, new node_index). Excluded leaves are ignored.
ComponentMatching match_components(const std::vector<GuiComponent>& old_leaves,
                                   const std::vector<GuiComponent>& new_leaves, double gamma_cutoff);

}  // namespace guidiff
