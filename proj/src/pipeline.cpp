#include "guidiff/pipeline.hpp"

#include <chrono>
#include <fstream>

#include "guidiff/parallel.hpp"
#include "guidiff/screen_matcher.hpp"
#include "json.hpp"

namespace guidiff {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void write_text(const fs::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write " + p.string());
    out << s;
    if (!out) throw IoError("write failed: " + p.string());
}

nlohmann::json config_json(const RunConfig& c) {
    nlohmann::json j = nlohmann::json::object();
    const std::string text = print_config(c);
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        const std::string line = text.substr(pos, nl - pos);
        pos = nl == std::string::npos ? text.size() : nl + 1;
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) j[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return j;
}

}  // namespace

PairAnalysis analyze_screen_pair(const ScreenPair& pair, const RunConfig& config) {
    PairAnalysis a;
    a.detection = analyze_pair(pair, config.detector);
    a.characteristics = characterize(a.detection.changes, a.detection.screen_diff,
                                     pair.old_screen->image.width(), pair.old_screen->image.height(),
                                     config.summary);
    a.summary = generate_summary(a.characteristics);
    a.report = build_report(pair, a.detection.changes, a.detection.screen_diff.diff_percent, a.summary,
                            config.timestamp);
    return a;
}

RunSummary run(const fs::path& old_dir, const fs::path& new_dir, const RunConfig& config) {
    config.validate();
    const auto t0 = Clock::now();
    RunSummary s;

    const CaptureSet old_all = load_capture_set(old_dir, "old", s.warnings, config.parallelism);
    const CaptureSet new_all = load_capture_set(new_dir, "new", s.warnings, config.parallelism);
    const CaptureSet old_set = filter_screens(old_all);
    const CaptureSet new_set = filter_screens(new_all);
    s.screens_total = static_cast<long long>(old_all.captures.size() + new_all.captures.size());
    s.screens_kept = static_cast<long long>(old_set.captures.size() + new_set.captures.size());

    const MatchingResult matching =
        match_screens(old_set, new_set, config.cost_cutoff, config.area_cap, config.parallelism);
    s.unmatched_old = static_cast<int>(matching.unmatched_old.size());
    s.unmatched_new = static_cast<int>(matching.unmatched_new.size());

    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw IoError("cannot create " + config.output_dir.string() + ": " + ec.message());

    s.pairs.resize(matching.pairs.size());
    parallel_for(matching.pairs.size(), config.parallelism, [&](std::size_t i) {
        const ScreenPair& pair = matching.pairs[i];
        PairResult& r = s.pairs[i];
        r.pair_id = pair.pair_id();
        r.activity = pair.old_screen->activity;
        r.assignment_cost = pair.assignment_cost;
        const auto p0 = Clock::now();
        try {
            const PairAnalysis a = analyze_screen_pair(pair, config);
            render_report(a.report, config.output_dir);
            r.change_count = static_cast<int>(a.detection.changes.size());
            r.summary = a.summary;
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        r.seconds = since(p0);
    });

    std::vector<IndexEntry> entries;
    for (const auto& r : s.pairs) {
        if (r.error) {
            ++s.pairs_failed;
            s.warnings.push_back("pair " + r.pair_id + " failed: " + *r.error);
        } else {
            ++s.pairs_analyzed;
            s.changes_total += r.change_count;
        }
        entries.push_back({r.pair_id, r.activity, r.assignment_cost, r.change_count, r.summary, r.error});
    }
    std::vector<UnmatchedScreen> unmatched;
    if (config.include_unmatched) {
        for (const auto& c : matching.unmatched_old) unmatched.push_back({"old", c->source_id, c->activity, c->window_name});
        for (const auto& c : matching.unmatched_new) unmatched.push_back({"new", c->source_id, c->activity, c->window_name});
    }
    s.index_path = config.output_dir / "index.html";
    write_text(s.index_path, render_index_html(entries, unmatched, config.timestamp));
    s.seconds = since(t0);

    nlohmann::json j;
    j["screens_total"] = s.screens_total;
    j["screens_kept"] = s.screens_kept;
    j["pairs_analyzed"] = s.pairs_analyzed;
    j["pairs_failed"] = s.pairs_failed;
    j["unmatched_old"] = s.unmatched_old;
    j["unmatched_new"] = s.unmatched_new;
    j["changes_total"] = s.changes_total;
    j["assignment_cost_total"] = matching.total_cost;
    j["seconds"] = s.seconds;
    j["pairs"] = nlohmann::json::array();
    for (const auto& r : s.pairs) {
        nlohmann::json p = {{"pair_id", r.pair_id},
                            {"assignment_cost", r.assignment_cost},
                            {"changes", r.change_count},
                            {"seconds", r.seconds}};
        if (r.error) p["error"] = *r.error;
        j["pairs"].push_back(std::move(p));
    }
    j["warnings"] = s.warnings;
    j["config"] = config_json(config);
    write_text(config.output_dir / "run.json", j.dump(2) + "\n");
    return s;
}

}  // namespace guidiff
