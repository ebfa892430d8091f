#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "guidiff/assignment.hpp"
#include "guidiff/image_analysis.hpp"
#include "guidiff/ingest.hpp"

namespace guidiff {

struct MatchingResult {
    std::vector<ScreenPair> pairs;  // ordered by position of the old capture
    std::vector<CapturePtr> unmatched_old;
    std::vector<CapturePtr> unmatched_new;
    double total_cost = 0.0;
};

struct IndexPair {
    std::size_t old_index;
    std::size_t new_index;
    double cost;
};

struct IndexMatching {
    std::vector<IndexPair> pairs;
    std::vector<std::size_t> unmatched_old;
    std::vector<std::size_t> unmatched_new;
    double total_cost = 0.0;
};

inline constexpr double kDefaultCostCutoff = 1.0;

/// Keeps the first capture of every distinct (activity, window_name, window_type).
CaptureSet filter_screens(const CaptureSet& set);

/// color_distance of the screenshots plus bbox_diff of the leaf silhouettes; in [0, 2].
double screen_cost(const ScreenCapture& a, const ScreenCapture& b,
                   std::int64_t area_cap = kDefaultAreaCap);

/// Optimal one-to-one assignment over a precomputed matrix (rows = old, cols = new);
/// pairs costlier than cost_cutoff are demoted to unmatched.
IndexMatching match_cost_matrix(const CostMatrix& costs, double cost_cutoff = kDefaultCostCutoff);

/// Full screen correspondence between two (filtered) capture sets.
MatchingResult match_screens(const CaptureSet& old_set, const CaptureSet& new_set,
                             double cost_cutoff = kDefaultCostCutoff,
                             std::int64_t area_cap = kDefaultAreaCap, int parallelism = 1);

}  // namespace guidiff
