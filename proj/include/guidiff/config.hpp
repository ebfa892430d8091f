#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "guidiff/change_detector.hpp"
#include "guidiff/screen_matcher.hpp"
#include "guidiff/summarizer.hpp"

namespace guidiff {

struct RunConfig {
    DetectorConfig detector;
    double cost_cutoff = kDefaultCostCutoff;
    std::int64_t area_cap = kDefaultAreaCap;
    SummaryThresholds summary;
    bool include_unmatched = false;
    int parallelism = 1;
    std::filesystem::path output_dir;
    /// Written into every report; fixed values make outputs byte-reproducible.
    std::string timestamp = "1970-01-01T00:00:00Z";

    /// Throws ParseError naming the first out-of-range field.
    void validate() const;
};

/// Applies `key = value` lines on top of `base`. Blank lines and lines starting
/// with '#' are skipped; unknown keys and malformed values throw ParseError.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Every key with its effective value, in the format parse_config accepts.
std::string print_config(const RunConfig& c);

/// GUIDIFF_PARALLELISM, when set to a positive integer, replaces c.parallelism.
void apply_environment(RunConfig& c);

}  // namespace guidiff
