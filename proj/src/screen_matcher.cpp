#include "guidiff/screen_matcher.hpp"

#include <cmath>
#include <set>
#include <tuple>

#include "guidiff/parallel.hpp"

namespace guidiff {

CaptureSet filter_screens(const CaptureSet& set) {
    CaptureSet out;
    out.label = set.label;
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    for (const auto& cap : set.captures) {
        if (seen.emplace(cap->activity, cap->window_name, cap->window_type).second) {
            out.captures.push_back(cap);
        }
    }
    return out;
}

double screen_cost(const ScreenCapture& a, const ScreenCapture& b, std::int64_t area_cap) {
    return color_distance(a.image, b.image) +
           bbox_diff(bbox_silhouette(a, area_cap), bbox_silhouette(b, area_cap));
}

IndexMatching match_cost_matrix(const CostMatrix& costs, double cost_cutoff) {
    IndexMatching out;
    const double pad = std::isfinite(cost_cutoff) ? cost_cutoff : 0.0;
    const Assignment a = solve_assignment(costs, pad);

    std::vector<char> new_used(costs.cols(), 0);
    for (std::size_t i = 0; i < costs.rows(); ++i) {
        const int j = a.row_to_col[i];
        if (j < 0) {
            out.unmatched_old.push_back(i);
            continue;
        }
        const auto col = static_cast<std::size_t>(j);
        const double c = costs(i, col);
        if (c > cost_cutoff) {
            out.unmatched_old.push_back(i);
            continue;
        }
        new_used[col] = 1;
        out.pairs.push_back({i, col, c});
        out.total_cost += c;
    }
    for (std::size_t j = 0; j < costs.cols(); ++j) {
        if (!new_used[j]) out.unmatched_new.push_back(j);
    }
    return out;
}

MatchingResult match_screens(const CaptureSet& old_set, const CaptureSet& new_set,
                             double cost_cutoff, std::int64_t area_cap, int parallelism) {
    const auto& olds = old_set.captures;
    const auto& news = new_set.captures;

    std::vector<Mask> old_sil(olds.size()), new_sil(news.size());
    parallel_for(olds.size(), parallelism,
                 [&](std::size_t i) { old_sil[i] = bbox_silhouette(*olds[i], area_cap); });
    parallel_for(news.size(), parallelism,
                 [&](std::size_t j) { new_sil[j] = bbox_silhouette(*news[j], area_cap); });

    CostMatrix costs(olds.size(), news.size());
    parallel_for(olds.size() * news.size(), parallelism, [&](std::size_t k) {
        const std::size_t i = k / news.size();
        const std::size_t j = k % news.size();
        costs(i, j) = color_distance(olds[i]->image, news[j]->image) + bbox_diff(old_sil[i], new_sil[j]);
    });

    const IndexMatching im = match_cost_matrix(costs, cost_cutoff);
    MatchingResult out;
    for (const auto& p : im.pairs) {
        out.pairs.push_back({olds[p.old_index], news[p.new_index], p.cost});
    }
    for (std::size_t i : im.unmatched_old) out.unmatched_old.push_back(olds[i]);
    for (std::size_t j : im.unmatched_new) out.unmatched_new.push_back(news[j]);
    out.total_cost = im.total_cost;
    return out;
}

}  // namespace guidiff
