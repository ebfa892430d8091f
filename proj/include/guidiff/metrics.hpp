#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "guidiff/change_detector.hpp"

namespace guidiff {

struct GroundTruthChange {
    ChangeType specific = ChangeType::TextContent;
    std::optional<BoundingBox> bounds_old;
    std::optional<BoundingBox> bounds_new;
    friend bool operator==(const GroundTruthChange&, const GroundTruthChange&) = default;
};

struct ScoreCounts {
    long long ts = 0;    // screens before filtering
    long long kept = 0;  // screens after filtering
    long long tp_detect = 0;
    long long fp_detect = 0;
    long long tp_classify = 0;
    long long fp_classify = 0;
    long long fn = 0;
    long long pairs_matched = 0;
    long long pairs_correct = 0;

    ScoreCounts& operator+=(const ScoreCounts& o);
};

struct MetricReport {
    std::optional<double> fs;  // percent; absent when TS is unknown
    double mp = 1.0;
    double dp = 1.0;
    double cp = 1.0;
    double r = 1.0;
    ScoreCounts counts;
};

/// Percentage of screens filtered out: 100 * (TS - kept) / TS.
double fs_metric(long long ts, long long kept);

/// (Tp/(Tp+Fp), Tp/(Tp+Fn)), each 1.0 on an empty denominator.
std::pair<double, double> precision_recall(long long tp, long long fp, long long fn);

GroundTruthChange truth_of(const GuiChange& c);

/// IoU over the sides both records carry (mean when both sides are shared); 0 if none.
double change_iou(const GroundTruthChange& a, const GroundTruthChange& b);

/// Greedy highest-IoU one-to-one correspondence; ties prefer same-type pairs,
/// then lower indices. Fills the detection and classification counts.
ScoreCounts score_against_truth(const std::vector<GroundTruthChange>& reported,
                                const std::vector<GroundTruthChange>& truth, double iou_min = 0.5);
ScoreCounts score_against_truth(const std::vector<GuiChange>& reported,
                                const std::vector<GroundTruthChange>& truth, double iou_min = 0.5);

MetricReport metric_report(const ScoreCounts& counts);
std::string metric_report_json(const MetricReport& m);

// JSONL records: {"specific": str, "bounds_old": [x,y,w,h]|null, "bounds_new": [x,y,w,h]|null}
std::string truth_line(const GroundTruthChange& t);
/// Truth fields plus category, magnitude, node indices and description.
std::string change_line(const GuiChange& c, const std::string& description);
GroundTruthChange parse_truth_line(const std::string& line);
std::vector<GroundTruthChange> read_truth_file(const std::filesystem::path& p);
void write_truth_file(const std::filesystem::path& p, const std::vector<GroundTruthChange>& t);

/// Scores a pipeline output directory (`<pair_id>/changes.jsonl`, optional
/// `run.json`) against a directory of `<pair_id>.truth.jsonl` files. Pairs with
/// a report but no truth count as mismatched screen pairs and their changes as Fp.
MetricReport score_directories(const std::filesystem::path& reported_dir,
                               const std::filesystem::path& truth_dir, double iou_min = 0.5);

}  // namespace guidiff
