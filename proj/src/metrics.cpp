#include "guidiff/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace guidiff {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json box_json(const std::optional<BoundingBox>& b) {
    if (!b) return nullptr;
    return json::array({b->x, b->y, b->width, b->height});
}

std::optional<BoundingBox> box_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    if (!j.is_array() || j.size() != 4) throw ParseError("bounds must be [x,y,w,h] or null");
    return BoundingBox{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

std::string read_all(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<GroundTruthChange> parse_lines(const std::string& text) {
    std::vector<GroundTruthChange> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(parse_truth_line(line));
    }
    return out;
}

}  // namespace

ScoreCounts& ScoreCounts::operator+=(const ScoreCounts& o) {
    ts += o.ts;
    kept += o.kept;
    tp_detect += o.tp_detect;
    fp_detect += o.fp_detect;
    tp_classify += o.tp_classify;
    fp_classify += o.fp_classify;
    fn += o.fn;
    pairs_matched += o.pairs_matched;
    pairs_correct += o.pairs_correct;
    return *this;
}

double fs_metric(long long ts, long long kept) {
    if (ts <= 0) throw Error("fs_metric: TS must be positive");
    if (kept < 0 || kept > ts) throw Error("fs_metric: kept must lie in [0, TS]");
    return 100.0 * static_cast<double>(ts - kept) / static_cast<double>(ts);
}

std::pair<double, double> precision_recall(long long tp, long long fp, long long fn) {
    const double p = tp + fp == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double r = tp + fn == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    return {p, r};
}

GroundTruthChange truth_of(const GuiChange& c) {
    GroundTruthChange t;
    t.specific = c.specific;
    if (c.old_component) t.bounds_old = c.old_component->bounds;
    if (c.new_component) t.bounds_new = c.new_component->bounds;
    return t;
}

double change_iou(const GroundTruthChange& a, const GroundTruthChange& b) {
    double sum = 0.0;
    int sides = 0;
    if (a.bounds_old && b.bounds_old) {
        sum += bbox_geometry(*a.bounds_old, *b.bounds_old).iou;
        ++sides;
    }
    if (a.bounds_new && b.bounds_new) {
        sum += bbox_geometry(*a.bounds_new, *b.bounds_new).iou;
        ++sides;
    }
    return sides == 0 ? 0.0 : sum / sides;
}

ScoreCounts score_against_truth(const std::vector<GroundTruthChange>& reported,
                                const std::vector<GroundTruthChange>& truth, double iou_min) {
    struct Edge {
        double iou;
        int mismatch;
        std::size_t i;
        std::size_t j;
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < reported.size(); ++i) {
        for (std::size_t j = 0; j < truth.size(); ++j) {
            const double v = change_iou(reported[i], truth[j]);
            if (v >= iou_min) {
                edges.push_back({v, reported[i].specific == truth[j].specific ? 0 : 1, i, j});
            }
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::make_tuple(-a.iou, a.mismatch, a.i, a.j) <
               std::make_tuple(-b.iou, b.mismatch, b.i, b.j);
    });
    std::vector<char> rep_used(reported.size(), 0), truth_used(truth.size(), 0);
    ScoreCounts c;
    for (const auto& e : edges) {
        if (rep_used[e.i] || truth_used[e.j]) continue;
        rep_used[e.i] = truth_used[e.j] = 1;
        ++c.tp_detect;
        if (e.mismatch == 0) ++c.tp_classify;
    }
    c.fp_detect = static_cast<long long>(reported.size()) - c.tp_detect;
    c.fn = static_cast<long long>(truth.size()) - c.tp_detect;
    c.fp_classify = c.tp_detect - c.tp_classify;
    return c;
}

ScoreCounts score_against_truth(const std::vector<GuiChange>& reported,
                                const std::vector<GroundTruthChange>& truth, double iou_min) {
    std::vector<GroundTruthChange> r;
    r.reserve(reported.size());
    for (const auto& c : reported) r.push_back(truth_of(c));
    return score_against_truth(r, truth, iou_min);
}

MetricReport metric_report(const ScoreCounts& counts) {
    MetricReport m;
    m.counts = counts;
    if (counts.ts > 0) m.fs = fs_metric(counts.ts, counts.kept);
    m.mp = precision_recall(counts.pairs_correct, counts.pairs_matched - counts.pairs_correct, 0).first;
    std::tie(m.dp, m.r) = precision_recall(counts.tp_detect, counts.fp_detect, counts.fn);
    // Classification precision among detected changes.
    m.cp = precision_recall(counts.tp_classify, counts.fp_classify, 0).first;
    return m;
}

std::string metric_report_json(const MetricReport& m) {
    json j;
    j["FS"] = m.fs ? json(*m.fs) : json(nullptr);
    j["MP"] = m.mp;
    j["DP"] = m.dp;
    j["CP"] = m.cp;
    j["R"] = m.r;
    j["counts"] = {
        {"TS", m.counts.ts},
        {"kept", m.counts.kept},
        {"Tp_detect", m.counts.tp_detect},
        {"Fp_detect", m.counts.fp_detect},
        {"Tp_classify", m.counts.tp_classify},
        {"Fp_classify", m.counts.fp_classify},
        {"Fn", m.counts.fn},
        {"pairs_matched", m.counts.pairs_matched},
        {"pairs_correct", m.counts.pairs_correct},
    };
    return j.dump(2);
}

std::string truth_line(const GroundTruthChange& t) {
    json j;
    j["specific"] = std::string(to_string(t.specific));
    j["bounds_old"] = box_json(t.bounds_old);
    j["bounds_new"] = box_json(t.bounds_new);
    return j.dump();
}

std::string change_line(const GuiChange& c, const std::string& description) {
    const GroundTruthChange t = truth_of(c);
    json j;
    j["specific"] = std::string(to_string(t.specific));
    j["bounds_old"] = box_json(t.bounds_old);
    j["bounds_new"] = box_json(t.bounds_new);
    j["category"] = std::string(to_string(c.category));
    j["magnitude"] = c.magnitude ? json(*c.magnitude) : json(nullptr);
    j["old_node"] = c.old_component ? json(c.old_component->node_index) : json(nullptr);
    j["new_node"] = c.new_component ? json(c.new_component->node_index) : json(nullptr);
    j["detail"] = c.detail;
    j["description"] = description;
    return j.dump();
}

GroundTruthChange parse_truth_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad JSON line: ") + e.what());
    }
    if (!j.is_object() || !j.contains("specific")) throw ParseError("truth line lacks 'specific'");
    const auto type = parse_change_type(j.at("specific").get<std::string>());
    if (!type) throw ParseError("unknown change type " + j.at("specific").dump());
    GroundTruthChange t;
    t.specific = *type;
    t.bounds_old = box_from(j.value("bounds_old", json(nullptr)));
    t.bounds_new = box_from(j.value("bounds_new", json(nullptr)));
    if (!t.bounds_old && !t.bounds_new) throw ParseError("truth line carries no bounds");
    return t;
}

std::vector<GroundTruthChange> read_truth_file(const fs::path& p) { return parse_lines(read_all(p)); }

void write_truth_file(const fs::path& p, const std::vector<GroundTruthChange>& t) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write " + p.string());
    for (const auto& x : t) out << truth_line(x) << '\n';
    if (!out) throw IoError("write failed: " + p.string());
}

MetricReport score_directories(const fs::path& reported_dir, const fs::path& truth_dir,
                               double iou_min) {
    if (!fs::is_directory(reported_dir)) throw IoError("not a directory: " + reported_dir.string());
    if (!fs::is_directory(truth_dir)) throw IoError("not a directory: " + truth_dir.string());

    const std::string suffix = ".truth.jsonl";
    std::map<std::string, fs::path> truth_files;
    for (const auto& e : fs::directory_iterator(truth_dir)) {
        const std::string name = e.path().filename().string();
        if (e.is_regular_file() && name.size() > suffix.size() &&
            name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
            truth_files[name.substr(0, name.size() - suffix.size())] = e.path();
        }
    }
    std::map<std::string, fs::path> reported_files;
    for (const auto& e : fs::directory_iterator(reported_dir)) {
        if (e.is_directory() && fs::exists(e.path() / "changes.jsonl")) {
            reported_files[e.path().filename().string()] = e.path() / "changes.jsonl";
        }
    }

    ScoreCounts total;
    for (const auto& [id, path] : reported_files) {
        const auto rep = read_truth_file(path);
        ++total.pairs_matched;
        const auto it = truth_files.find(id);
        if (it == truth_files.end()) {
            total.fp_detect += static_cast<long long>(rep.size());
            continue;
        }
        ++total.pairs_correct;
        total += score_against_truth(rep, read_truth_file(it->second), iou_min);
    }
    for (const auto& [id, path] : truth_files) {
        if (!reported_files.count(id)) total.fn += static_cast<long long>(read_truth_file(path).size());
    }

    const fs::path run_json = reported_dir / "run.json";
    if (fs::exists(run_json)) {
        const json j = json::parse(read_all(run_json));
        if (j.contains("screens_total") && j.contains("screens_kept")) {
            total.ts = j.at("screens_total").get<long long>();
            total.kept = j.at("screens_kept").get<long long>();
        }
    }
    return metric_report(total);
}

}  // namespace guidiff
