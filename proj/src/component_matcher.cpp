#include "guidiff/component_matcher.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>

namespace guidiff {

double gamma(const GuiComponent& m, const GuiComponent& r) noexcept {
    const auto& a = m.bounds;
    const auto& b = r.bounds;
    return static_cast<double>(std::abs(a.x - b.x)) + std::abs(a.y - b.y) +
           std::abs(a.width - b.width) + std::abs(a.height - b.height);
}

double gamma_cutoff_for(int screen_width, int screen_height, double ratio) noexcept {
    return ratio * (static_cast<double>(screen_width) + screen_height);
}

ComponentMatching match_components(const std::vector<GuiComponent>& old_leaves,
                                   const std::vector<GuiComponent>& new_leaves, double gamma_cutoff) {
    std::vector<const GuiComponent*> olds, news;
    for (const auto& c : old_leaves) {
        if (!c.excluded) olds.push_back(&c);
    }
    for (const auto& c : new_leaves) {
        if (!c.excluded) news.push_back(&c);
    }

    struct Candidate {
        double g;
        int old_node;
        int new_node;
        std::size_t oi;
        std::size_t ni;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < olds.size(); ++i) {
        for (std::size_t j = 0; j < news.size(); ++j) {
            const double g = gamma(*olds[i], *news[j]);
            if (g <= gamma_cutoff) {
                candidates.push_back({g, olds[i]->node_index, news[j]->node_index, i, j});
            }
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.g, a.old_node, a.new_node) < std::tie(b.g, b.old_node, b.new_node);
    });

    ComponentMatching out;
    std::vector<char> old_taken(olds.size(), 0), new_taken(news.size(), 0);
    for (const auto& c : candidates) {
        if (old_taken[c.oi] || new_taken[c.ni]) continue;
        old_taken[c.oi] = 1;
        new_taken[c.ni] = 1;
        out.matched.push_back({*olds[c.oi], *news[c.ni], c.g});
    }
    for (std::size_t i = 0; i < olds.size(); ++i) {
        if (!old_taken[i]) out.removed.push_back(*olds[i]);
    }
    for (std::size_t j = 0; j < news.size(); ++j) {
        if (!new_taken[j]) out.added.push_back(*news[j]);
    }
    return out;
}

}  // namespace guidiff
