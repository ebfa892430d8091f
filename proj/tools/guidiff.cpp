// guidiff command-line front end.
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "guidiff/config.hpp"
#include "guidiff/corpus.hpp"
#include "guidiff/metrics.hpp"
#include "guidiff/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

std::vector<guidiff::ChangeType> parse_mutation_list(const std::string& list) {
    std::vector<guidiff::ChangeType> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto t = guidiff::parse_change_type(item);
        if (!t) throw CLI::ValidationError("--mutations", "unknown change type '" + item + "'");
        out.push_back(*t);
    }
    if (out.empty()) throw CLI::ValidationError("--mutations", "empty list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detect, classify and report GUI changes between two app versions"};
    app.require_subcommand(1);

    std::string old_dir, new_dir, out_dir, config_path, timestamp;
    bool include_unmatched = false;
    std::optional<int> parallelism;
    auto* compare = app.add_subcommand("compare", "Compare two capture directories and write reports");
    compare->add_option("--old", old_dir, "Capture directory of the old version")->required();
    compare->add_option("--new", new_dir, "Capture directory of the new version")->required();
    compare->add_option("--out", out_dir, "Report output directory")->required();
    compare->add_option("--config", config_path, "key = value configuration file");
    compare->add_flag("--include-unmatched", include_unmatched, "List unmatched screens in the index");
    compare->add_option("--timestamp", timestamp, "Timestamp written into reports");
    compare->add_option("--parallelism", parallelism, "Worker threads")->check(CLI::PositiveNumber);

    std::string corpus_out, mutations;
    std::uint64_t seed = 0;
    int per_type = 9;
    auto* gen = app.add_subcommand("gen-corpus", "Generate a synthetic corpus with known mutations");
    gen->add_option("--out", corpus_out, "Output directory")->required();
    gen->add_option("--seed", seed, "Random seed")->required();
    gen->add_option("--mutations", mutations, "Comma-separated change types (default: all)");
    gen->add_option("--per-type", per_type, "Pairs per change type")->check(CLI::PositiveNumber);

    std::string reported_dir, truth_dir;
    double iou_min = 0.5;
    auto* score = app.add_subcommand("score", "Score a compare output against ground truth");
    score->add_option("--reported", reported_dir, "Output directory of compare")->required();
    score->add_option("--truth", truth_dir, "Directory of <pair_id>.truth.jsonl files")->required();
    score->add_option("--iou-min", iou_min, "Minimum IoU for a detection")->check(CLI::Range(0.0, 1.0));

    std::string print_config_path;
    auto* print = app.add_subcommand("print-config", "Print the effective configuration");
    print->add_option("--config", print_config_path, "Configuration file to overlay on the defaults");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*compare) {
            guidiff::RunConfig cfg;
            if (!config_path.empty()) cfg = guidiff::load_config(config_path);
            guidiff::apply_environment(cfg);
            if (parallelism) cfg.parallelism = *parallelism;
            if (include_unmatched) cfg.include_unmatched = true;
            if (!timestamp.empty()) cfg.timestamp = timestamp;
            cfg.output_dir = out_dir;
            const auto s = guidiff::run(old_dir, new_dir, cfg);
            for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
            std::cout << s.pairs_analyzed << " pairs analyzed, " << s.pairs_failed << " failed, "
                      << s.changes_total << " changes; index: " << s.index_path.string() << "\n";
        } else if (*gen) {
            guidiff::corpus::CorpusOptions opt;
            opt.seed = seed;
            opt.per_type = per_type;
            if (!mutations.empty()) opt.types = parse_mutation_list(mutations);
            const auto corpus = guidiff::corpus::generate_corpus(opt);
            guidiff::corpus::write_corpus(corpus, corpus_out);
            std::cout << corpus.size() << " pairs written to " << corpus_out << "\n";
        } else if (*score) {
            const auto m = guidiff::score_directories(reported_dir, truth_dir, iou_min);
            std::cout << guidiff::metric_report_json(m) << "\n";
        } else if (*print) {
            guidiff::RunConfig cfg;
            if (!print_config_path.empty()) cfg = guidiff::load_config(print_config_path);
            guidiff::apply_environment(cfg);
            std::cout << guidiff::print_config(cfg);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
