#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "guidiff/config.hpp"
#include "guidiff/ingest.hpp"
#include "guidiff/report.hpp"
#include "guidiff/summarizer.hpp"

namespace guidiff {

struct PairAnalysis {
    Detection detection;
    SummaryCharacteristics characteristics;
    std::string summary;
    ChangeReport report;
};

/// Detection, summary and in-memory report for one pair.
PairAnalysis analyze_screen_pair(const ScreenPair& pair, const RunConfig& config);

struct PairResult {
    std::string pair_id;
    std::string activity;
    double assignment_cost = 0.0;
    int change_count = 0;
    std::string summary;
    std::optional<std::string> error;
    double seconds = 0.0;
};

struct RunSummary {
    int pairs_analyzed = 0;
    int pairs_failed = 0;
    long long changes_total = 0;
    long long screens_total = 0;  // captures loaded from both directories
    long long screens_kept = 0;   // captures left after filtering
    int unmatched_old = 0;
    int unmatched_new = 0;
    std::filesystem::path index_path;
    double seconds = 0.0;
    std::vector<PairResult> pairs;
    Warnings warnings;
};

/// filter -> match screens -> per pair: match components, detect, summarize,
/// render. Ingest errors throw; a failing pair is recorded and skipped.
/// Writes `<output_dir>/index.html` and `<output_dir>/run.json`.
RunSummary run(const std::filesystem::path& old_dir, const std::filesystem::path& new_dir,
               const RunConfig& config);

}  // namespace guidiff
