#include "guidiff/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace guidiff {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v) {
    if (v == "inf" || v == "+inf" || v == "infinity") return std::numeric_limits<double>::infinity();
    double out = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) {
        throw ParseError("config: " + std::string(key) + " expects a number, got '" + std::string(v) + "'");
    }
    return out;
}

long long to_int(std::string_view key, std::string_view v) {
    long long out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) {
        throw ParseError("config: " + std::string(key) + " expects an integer, got '" + std::string(v) + "'");
    }
    return out;
}

bool to_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ParseError("config: " + std::string(key) + " expects true/false, got '" + std::string(v) + "'");
}

std::string num(double v) {
    if (std::isinf(v)) return "inf";
    // shortest text that parses back to the same double
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"LC", [](RunConfig& c, auto k, auto v) { c.detector.layout_threshold = to_double(k, v); }},
        {"FC", [](RunConfig& c, auto k, auto v) { c.detector.font_color_similarity = to_double(k, v); }},
        {"IC", [](RunConfig& c, auto k, auto v) { c.detector.image_change_percent = to_double(k, v); }},
        {"paper_literal_image_rule",
         [](RunConfig& c, auto k, auto v) { c.detector.paper_literal_image_rule = to_bool(k, v); }},
        {"gamma_cutoff_ratio", [](RunConfig& c, auto k, auto v) { c.detector.gamma_cutoff_ratio = to_double(k, v); }},
        {"candidate_overlap", [](RunConfig& c, auto k, auto v) { c.detector.candidate_overlap = to_double(k, v); }},
        {"sensitivity", [](RunConfig& c, auto k, auto v) { c.detector.perceptual.sensitivity = to_double(k, v); }},
        {"blur_radius",
         [](RunConfig& c, auto k, auto v) { c.detector.perceptual.blur_radius = static_cast<int>(to_int(k, v)); }},
        {"cost_cutoff", [](RunConfig& c, auto k, auto v) { c.cost_cutoff = to_double(k, v); }},
        {"area_cap", [](RunConfig& c, auto k, auto v) { c.area_cap = to_int(k, v); }},
        {"level_subtle_below", [](RunConfig& c, auto k, auto v) { c.summary.subtle_below = to_double(k, v); }},
        {"level_significant_above",
         [](RunConfig& c, auto k, auto v) { c.summary.significant_above = to_double(k, v); }},
        {"amount_few_max", [](RunConfig& c, auto k, auto v) { c.summary.few_max = static_cast<int>(to_int(k, v)); }},
        {"amount_several_max",
         [](RunConfig& c, auto k, auto v) { c.summary.several_max = static_cast<int>(to_int(k, v)); }},
        {"include_unmatched", [](RunConfig& c, auto k, auto v) { c.include_unmatched = to_bool(k, v); }},
        {"parallelism", [](RunConfig& c, auto k, auto v) { c.parallelism = static_cast<int>(to_int(k, v)); }},
        {"timestamp", [](RunConfig& c, auto, auto v) { c.timestamp = std::string(v); }},
    };
    return table;
}

}  // namespace

void RunConfig::validate() const {
    const auto fail = [](const std::string& what) { throw ParseError("config: " + what); };
    if (!(detector.layout_threshold >= 0)) fail("LC must be >= 0");
    if (!(detector.font_color_similarity >= 0 && detector.font_color_similarity <= 1)) fail("FC must lie in [0, 1]");
    if (!(detector.image_change_percent >= 0 && detector.image_change_percent <= 100)) fail("IC must lie in [0, 100]");
    if (!(detector.gamma_cutoff_ratio >= 0)) fail("gamma_cutoff_ratio must be >= 0");
    if (!(detector.candidate_overlap >= 0 && detector.candidate_overlap < 1)) fail("candidate_overlap must lie in [0, 1)");
    if (!(detector.perceptual.sensitivity > 0 && detector.perceptual.sensitivity <= 1)) fail("sensitivity must lie in (0, 1]");
    if (detector.perceptual.blur_radius < 0 || detector.perceptual.blur_radius > 8) fail("blur_radius must lie in [0, 8]");
    if (!(cost_cutoff >= 0)) fail("cost_cutoff must be >= 0");
    if (area_cap <= 0) fail("area_cap must be positive");
    if (!(summary.subtle_below <= summary.significant_above)) fail("level thresholds out of order");
    if (summary.few_max < 0 || summary.few_max > summary.several_max) fail("amount thresholds out of order");
    if (parallelism < 1) fail("parallelism must be >= 1");
}

RunConfig parse_config(std::string_view text, RunConfig base) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw ParseError("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
        }
        it->second(base, key, value);
    }
    base.validate();
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

std::string print_config(const RunConfig& c) {
    std::ostringstream os;
    os << "LC = " << num(c.detector.layout_threshold) << "\n"
       << "FC = " << num(c.detector.font_color_similarity) << "\n"
       << "IC = " << num(c.detector.image_change_percent) << "\n"
       << "paper_literal_image_rule = " << (c.detector.paper_literal_image_rule ? "true" : "false") << "\n"
       << "gamma_cutoff_ratio = " << num(c.detector.gamma_cutoff_ratio) << "\n"
       << "candidate_overlap = " << num(c.detector.candidate_overlap) << "\n"
       << "sensitivity = " << num(c.detector.perceptual.sensitivity) << "\n"
       << "blur_radius = " << c.detector.perceptual.blur_radius << "\n"
       << "cost_cutoff = " << num(c.cost_cutoff) << "\n"
       << "area_cap = " << c.area_cap << "\n"
       << "level_subtle_below = " << num(c.summary.subtle_below) << "\n"
       << "level_significant_above = " << num(c.summary.significant_above) << "\n"
       << "amount_few_max = " << c.summary.few_max << "\n"
       << "amount_several_max = " << c.summary.several_max << "\n"
       << "include_unmatched = " << (c.include_unmatched ? "true" : "false") << "\n"
       << "parallelism = " << c.parallelism << "\n"
       << "timestamp = " << c.timestamp << "\n";
    return os.str();
}

void apply_environment(RunConfig& c) {
    if (const char* v = std::getenv("GUIDIFF_PARALLELISM")) {
        const std::string_view s(v);
        int n = 0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
        if (ec == std::errc() && p == s.data() + s.size() && n > 0) c.parallelism = n;
    }
}

}  // namespace guidiff
