#include "doctest.h"
#include "guidiff/metrics.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace gt;

namespace {

GroundTruthChange gtc(ChangeType t, std::optional<BoundingBox> o, std::optional<BoundingBox> n = std::nullopt) {
    return {t, o, n};
}

std::vector<GroundTruthChange> random_changes(std::mt19937& rng, int n) {
    std::vector<GroundTruthChange> v;
    for (int i = 0; i < n; ++i) {
        const BoundingBox b{int(rng() % 300), int(rng() % 600), int(rng() % 60) + 5, int(rng() % 60) + 5};
        const auto t = kAllChangeTypes[rng() % kAllChangeTypes.size()];
        if (t == ChangeType::Added) v.push_back(gtc(t, std::nullopt, b));
        else if (t == ChangeType::Removed) v.push_back(gtc(t, b));
        else v.push_back(gtc(t, b, b));
    }
    return v;
}

}  // namespace

TEST_SUITE("eval-metrics") {

TEST_CASE("filtered screen percentage") {
    CHECK(fs_metric(3854, 316) == doctest::Approx(91.8).epsilon(0.0005));
    CHECK(std::abs(fs_metric(3854, 316) - 91.8) <= 0.05);
    CHECK(fs_metric(10, 10) == 0.0);
    CHECK(fs_metric(10, 0) == 100.0);
    CHECK_THROWS_AS(fs_metric(0, 0), Error);
    CHECK_THROWS_AS(fs_metric(5, 6), Error);
    CHECK_THROWS_AS(fs_metric(5, -1), Error);
}

TEST_CASE("precision and recall fixtures") {
    CHECK(precision_recall(3, 1, 1) == std::pair(0.75, 0.75));
    CHECK(precision_recall(0, 0, 0) == std::pair(1.0, 1.0));
    const auto [p, r] = precision_recall(59, 1, 2);
    CHECK(p == 59.0 / 60.0);
    CHECK(r == 59.0 / 61.0);
    CHECK(p == doctest::Approx(0.98333).epsilon(1e-4));
    CHECK(r == doctest::Approx(0.96721).epsilon(1e-4));
}

TEST_CASE("iou over the shared sides") {
    const BoundingBox a{0, 0, 10, 10}, b{5, 0, 10, 10};
    CHECK(change_iou(gtc(ChangeType::Removed, a), gtc(ChangeType::Removed, a)) == 1.0);
    // 50 / 150
    CHECK(change_iou(gtc(ChangeType::Removed, a), gtc(ChangeType::Removed, b)) == doctest::Approx(1.0 / 3.0));
    CHECK(change_iou(gtc(ChangeType::FontColor, a, a), gtc(ChangeType::FontColor, a, b)) == doctest::Approx(2.0 / 3.0));
    CHECK(change_iou(gtc(ChangeType::Removed, a), gtc(ChangeType::Added, std::nullopt, a)) == 0.0);
}

TEST_CASE("scoring examples") {
    const std::vector<GroundTruthChange> truth = {gtc(ChangeType::FontColor, {{10, 10, 40, 20}}, {{10, 10, 40, 20}}),
                                                  gtc(ChangeType::Added, std::nullopt, {{100, 100, 40, 40}})};
    auto same = score_against_truth(truth, truth);
    CHECK(same.tp_detect == 2);
    CHECK(same.tp_classify == 2);
    CHECK(same.fp_detect == 0);
    CHECK(same.fn == 0);

    auto wrong = truth;
    wrong[0].specific = ChangeType::FontStyle;
    auto w = score_against_truth(wrong, truth);
    CHECK(w.tp_detect == 2);
    CHECK(w.tp_classify == 1);
    CHECK(w.fp_classify == 1);

    auto extra = truth;
    extra.push_back(gtc(ChangeType::Removed, {{300, 500, 20, 20}}));
    auto e = score_against_truth(extra, truth);
    CHECK(e.fp_detect == 1);
    CHECK(e.fn == 0);

    auto missing = score_against_truth(std::vector<GroundTruthChange>{truth[0]}, truth);
    CHECK(missing.fn == 1);

    const MetricReport m = metric_report(w);
    CHECK(m.dp == 1.0);
    CHECK(m.cp == 0.5);
    CHECK(m.r == 1.0);
    CHECK_FALSE(m.fs.has_value());
}

TEST_CASE("greedy correspondence prefers the highest overlap") {
    const BoundingBox t{0, 0, 20, 20};
    const std::vector<GroundTruthChange> truth = {gtc(ChangeType::Removed, t)};
    const std::vector<GroundTruthChange> rep = {gtc(ChangeType::Removed, {{2, 0, 20, 20}}), gtc(ChangeType::Removed, t)};
    const auto c = score_against_truth(rep, truth);
    CHECK(c.tp_detect == 1);
    CHECK(c.fp_detect == 1);
    // overlap below the threshold is no detection at all
    const auto far = score_against_truth(std::vector<GroundTruthChange>{gtc(ChangeType::Removed, {{15, 0, 20, 20}})}, truth);
    CHECK(far.tp_detect == 0);
    CHECK(far.fn == 1);
}

TEST_CASE("count partitions hold on random lists") {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 300; ++trial) {
        auto truth = random_changes(rng, int(rng() % 6));
        auto rep = random_changes(rng, int(rng() % 6));
        // reuse some truth entries so detections occur
        for (const auto& t : truth)
            if (rng() % 2) rep.push_back(t);
        const auto c = score_against_truth(rep, truth);
        CHECK(c.tp_classify <= c.tp_detect);
        CHECK(c.tp_detect + c.fp_detect == static_cast<long long>(rep.size()));
        CHECK(c.tp_detect + c.fn == static_cast<long long>(truth.size()));
        const auto self = metric_report(score_against_truth(truth, truth));
        CHECK(self.dp == 1.0);
        CHECK(self.cp == 1.0);
        CHECK(self.r == 1.0);
    }
}

TEST_CASE("truth lines round trip") {
    const auto a = gtc(ChangeType::VerticalSize, {{1, 2, 3, 4}}, {{1, 2, 3, 9}});
    CHECK(parse_truth_line(truth_line(a)) == a);
    const auto b = gtc(ChangeType::Added, std::nullopt, {{5, 6, 7, 8}});
    CHECK(truth_line(b) == R"({"bounds_new":[5,6,7,8],"bounds_old":null,"specific":"Added"})");
    CHECK_THROWS_AS(parse_truth_line("{"), ParseError);
    CHECK_THROWS_AS(parse_truth_line(R"({"specific":"Moved","bounds_old":null,"bounds_new":[0,0,1,1]})"), ParseError);
    CHECK_THROWS_AS(parse_truth_line(R"({"specific":"Added","bounds_old":null,"bounds_new":null})"), ParseError);
    const auto dir = temp_dir("truth");
    write_truth_file(dir / "x.truth.jsonl", {a, b});
    CHECK(read_truth_file(dir / "x.truth.jsonl") == std::vector<GroundTruthChange>{a, b});
}

TEST_CASE("report json carries every metric") {
    ScoreCounts c;
    c.ts = 10;
    c.kept = 4;
    c.tp_detect = 3;
    c.tp_classify = 3;
    c.pairs_matched = 2;
    c.pairs_correct = 1;
    const auto j = nlohmann::json::parse(metric_report_json(metric_report(c)));
    CHECK(j["FS"].get<double>() == 60.0);
    CHECK(j["MP"].get<double>() == 0.5);
    CHECK(j["counts"]["Tp_detect"].get<int>() == 3);
}

}  // TEST_SUITE
