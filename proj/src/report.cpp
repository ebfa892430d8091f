#include "guidiff/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "guidiff/metrics.hpp"
#include "guidiff/strings.hpp"
#include "guidiff/summarizer.hpp"

namespace guidiff {

namespace fs = std::filesystem;

void draw_box(Raster& image, const BoundingBox& box, Rgb color, int thickness, bool dashed) {
    const BoundingBox b = box.clamped(image.width(), image.height());
    if (b.area() <= 0) return;
    const int period = kDashOn + kDashOff;
    for (int y = b.y; y < b.bottom(); ++y) {
        const bool horizontal_band = y < b.y + thickness || y >= b.bottom() - thickness;
        for (int x = b.x; x < b.right(); ++x) {
            const bool vertical_band = x < b.x + thickness || x >= b.right() - thickness;
            if (!horizontal_band && !vertical_band) continue;
            if (dashed) {
                // Horizontal bands dash along x, vertical bands along y.
                const bool on = (horizontal_band && (x - b.x) % period < kDashOn) ||
                                (vertical_band && (y - b.y) % period < kDashOn);
                if (!on) continue;
            }
            image.set(x, y, color);
        }
    }
}

AnnotatedScreens annotate_screens(const ScreenPair& pair, const std::vector<GuiChange>& changes) {
    AnnotatedScreens out{pair.old_screen->image, pair.old_screen->image, pair.new_screen->image};
    for (const auto& c : changes) {
        if (c.specific == ChangeType::Added) {
            draw_box(out.highlight, c.new_component->bounds, kAnnotationColor, kAnnotationThickness,
                     true);
        } else if (c.old_component) {
            draw_box(out.highlight, c.old_component->bounds, kAnnotationColor, kAnnotationThickness,
                     false);
        }
    }
    return out;
}

std::size_t SubtreeNode::size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
}

std::optional<SubtreeNode> common_subtree(const GuiHierarchy& h_old, const GuiHierarchy& h_new) {
    if (h_old.empty() || h_new.empty()) return std::nullopt;
    const std::uint64_t m = h_new.size();
    std::unordered_map<std::uint64_t, int> memo;

    std::function<int(std::size_t, std::size_t)> best = [&](std::size_t u, std::size_t v) -> int {
        const auto key = static_cast<std::uint64_t>(u) * m + v;
        if (const auto it = memo.find(key); it != memo.end()) return it->second;
        const auto& a = h_old.node(u);
        const auto& b = h_new.node(v);
        int result = 0;
        if (a.component.component_type == b.component.component_type) {
            const auto& ca = a.children;
            const auto& cb = b.children;
            std::vector<std::vector<int>> dp(ca.size() + 1, std::vector<int>(cb.size() + 1, 0));
            for (std::size_t i = 1; i <= ca.size(); ++i) {
                for (std::size_t j = 1; j <= cb.size(); ++j) {
                    const int w = best(ca[i - 1], cb[j - 1]);
                    dp[i][j] = std::max({dp[i - 1][j], dp[i][j - 1], w > 0 ? dp[i - 1][j - 1] + w : 0});
                }
            }
            result = 1 + dp[ca.size()][cb.size()];
        }
        memo.emplace(key, result);
        return result;
    };

    std::function<SubtreeNode(std::size_t, std::size_t)> build = [&](std::size_t u, std::size_t v) {
        const auto& a = h_old.node(u);
        const auto& b = h_new.node(v);
        SubtreeNode node{a.component.component_type, static_cast<int>(u), static_cast<int>(v), {}};
        const auto& ca = a.children;
        const auto& cb = b.children;
        std::vector<std::vector<int>> dp(ca.size() + 1, std::vector<int>(cb.size() + 1, 0));
        for (std::size_t i = 1; i <= ca.size(); ++i) {
            for (std::size_t j = 1; j <= cb.size(); ++j) {
                const int w = best(ca[i - 1], cb[j - 1]);
                dp[i][j] = std::max({dp[i - 1][j], dp[i][j - 1], w > 0 ? dp[i - 1][j - 1] + w : 0});
            }
        }
        std::vector<std::pair<std::size_t, std::size_t>> picked;
        std::size_t i = ca.size(), j = cb.size();
        while (i > 0 && j > 0) {
            const int w = best(ca[i - 1], cb[j - 1]);
            if (w > 0 && dp[i][j] == dp[i - 1][j - 1] + w) {
                picked.emplace_back(ca[i - 1], cb[j - 1]);
                --i;
                --j;
            } else if (dp[i][j] == dp[i - 1][j]) {
                --i;
            } else {
                --j;
            }
        }
        std::reverse(picked.begin(), picked.end());
        for (const auto& [cu, cv] : picked) node.children.push_back(build(cu, cv));
        return node;
    };

    if (best(0, 0) == 0) return std::nullopt;
    return build(0, 0);
}

ChangeReport build_report(const ScreenPair& pair, const std::vector<GuiChange>& changes,
                          double diff_percent, const std::string& summary,
                          const std::string& generated_at) {
    ChangeReport r;
    r.pair_id = pair.pair_id();
    r.old_source = pair.old_screen->source_id;
    r.new_source = pair.new_screen->source_id;
    r.activity = pair.old_screen->activity;
    r.assignment_cost = pair.assignment_cost;
    r.diff_percent = diff_percent;
    r.summary = summary;
    r.generated_at = generated_at;
    r.screens = annotate_screens(pair, changes);
    r.common_tree = common_subtree(pair.old_screen->hierarchy, pair.new_screen->hierarchy);

    const auto try_crop = [](const ScreenCapture& cap, const GuiComponent& c) -> std::optional<Raster> {
        if (c.bounds.clamped(cap.image.width(), cap.image.height()).area() <= 0) return std::nullopt;
        return crop_component(cap, c);
    };
    for (std::size_t k = 0; k < changes.size(); ++k) {
        ReportEntry e;
        e.change = changes[k];
        e.description = describe_change(changes[k]);
        char base[32];
        std::snprintf(base, sizeof base, "assets/change-%03zu", k + 1);
        if (changes[k].old_component) {
            e.old_crop = try_crop(*pair.old_screen, *changes[k].old_component);
            if (e.old_crop) e.old_crop_path = std::string(base) + "-old.png";
        }
        if (changes[k].new_component) {
            e.new_crop = try_crop(*pair.new_screen, *changes[k].new_component);
            if (e.new_crop) e.new_crop_path = std::string(base) + "-new.png";
        }
        r.entries.push_back(std::move(e));
    }
    return r;
}

namespace {

constexpr const char* kStyle =
    "body{font-family:sans-serif;margin:1.5em;color:#222}"
    ".screens{display:flex;gap:1em;align-items:flex-start}"
    ".screens figure{margin:0;flex:1}"
    ".screens img{width:100%;border:1px solid #999}"
    ".crops{display:flex;gap:1em;margin:.5em 0 1em 1.5em}"
    ".crops img{max-width:320px;border:1px solid #999}"
    ".tag{font-size:.8em;background:#eee;padding:0 .4em;margin-right:.4em}"
    "ul.tree{font-family:monospace}";

void write_tree(std::ostringstream& os, const SubtreeNode& n, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    os << pad << "<li title=\"" << xml_escape(n.label) << "\">" << xml_escape(short_type_name(n.label));
    if (n.children.empty()) {
        os << "</li>\n";
        return;
    }
    os << "\n" << pad << " <ul>\n";
    for (const auto& c : n.children) write_tree(os, c, indent + 2);
    os << pad << " </ul>\n" << pad << "</li>\n";
}

void write_text(const fs::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write " + p.string());
    out << s;
    if (!out) throw IoError("write failed: " + p.string());
}

}  // namespace

std::string render_report_html(const ChangeReport& r) {
    std::ostringstream os;
    os << "<!DOCTYPE html>\n"
       << "<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\"/>\n"
       << "<title>GUI changes: " << xml_escape(r.pair_id) << "</title>\n"
       << "<style>" << kStyle << "</style>\n</head>\n<body>\n";
    os << "<h1>GUI changes for screen pair " << xml_escape(r.pair_id) << "</h1>\n";
    os << "<p class=\"meta\">Old capture <code>" << xml_escape(r.old_source) << "</code>, new capture <code>"
       << xml_escape(r.new_source) << "</code>, activity <code>" << xml_escape(r.activity)
       << "</code>. Match cost " << format_fixed(r.assignment_cost, 6) << ", visual difference "
       << format_fixed(r.diff_percent, 2) << "%. Generated " << xml_escape(r.generated_at) << ".</p>\n";

    os << "<section id=\"screens\">\n<h2>Screens</h2>\n<div class=\"screens\">\n"
       << "<figure><img src=\"" << kOldScreenAsset << "\" alt=\"previous version\"/><figcaption>Previous version</figcaption></figure>\n"
       << "<figure><img src=\"" << kHighlightAsset << "\" alt=\"highlighted changes\"/><figcaption>Changes on previous version</figcaption></figure>\n"
       << "<figure><img src=\"" << kNewScreenAsset << "\" alt=\"new version\"/><figcaption>New version</figcaption></figure>\n"
       << "</div>\n</section>\n";

    os << "<section id=\"summary\">\n<h2>Summary</h2>\n<p class=\"summary\">" << xml_escape(r.summary)
       << "</p>\n</section>\n";

    os << "<section id=\"changes\">\n<h2>Changes (" << r.entries.size() << ")</h2>\n";
    if (r.entries.empty()) {
        os << "<p>No changes.</p>\n";
    } else {
        os << "<ol class=\"changes\">\n";
        for (const auto& e : r.entries) {
            os << "<li class=\"change\" data-type=\"" << to_string(e.change.specific) << "\">\n<details>\n"
               << "<summary><span class=\"tag\">" << to_string(e.change.category) << " / "
               << to_string(e.change.specific) << "</span>" << xml_escape(e.description)
               << "</summary>\n<div class=\"crops\">\n";
            if (!e.old_crop_path.empty()) {
                os << "<figure><img src=\"" << e.old_crop_path << "\" alt=\"old component\"/><figcaption>Old</figcaption></figure>\n";
            }
            if (!e.new_crop_path.empty()) {
                os << "<figure><img src=\"" << e.new_crop_path << "\" alt=\"new component\"/><figcaption>New</figcaption></figure>\n";
            }
            os << "</div>\n</details>\n</li>\n";
        }
        os << "</ol>\n";
    }
    os << "</section>\n";

    os << "<section id=\"hierarchy\">\n<h2>Common hierarchy</h2>\n";
    if (r.common_tree) {
        os << "<p>" << r.common_tree->size() << " matching nodes.</p>\n<ul class=\"tree\">\n";
        write_tree(os, *r.common_tree, 0);
        os << "</ul>\n";
    } else {
        os << "<p>The hierarchies share no common root.</p>\n";
    }
    os << "</section>\n</body>\n</html>\n";
    return os.str();
}

fs::path render_report(const ChangeReport& r, const fs::path& out_dir) {
    const fs::path dir = out_dir / r.pair_id;
    std::error_code ec;
    fs::create_directories(dir / "assets", ec);
    if (ec) throw IoError("cannot create " + (dir / "assets").string() + ": " + ec.message());

    write_png(dir / kOldScreenAsset, r.screens.old_screen);
    write_png(dir / kHighlightAsset, r.screens.highlight);
    write_png(dir / kNewScreenAsset, r.screens.new_screen);
    std::string jsonl;
    for (const auto& e : r.entries) {
        if (e.old_crop) write_png(dir / e.old_crop_path, *e.old_crop);
        if (e.new_crop) write_png(dir / e.new_crop_path, *e.new_crop);
        jsonl += change_line(e.change, e.description);
        jsonl += '\n';
    }
    write_text(dir / "changes.jsonl", jsonl);
    const fs::path html = dir / "report.html";
    write_text(html, render_report_html(r));
    return html;
}

std::string render_index_html(const std::vector<IndexEntry>& entries,
                              const std::vector<UnmatchedScreen>& unmatched,
                              const std::string& generated_at) {
    std::ostringstream os;
    os << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\"/>\n"
       << "<title>GUI change reports</title>\n<style>" << kStyle
       << "table{border-collapse:collapse}td,th{border:1px solid #ccc;padding:.2em .6em}"
       << "</style>\n</head>\n<body>\n<h1>GUI change reports</h1>\n"
       << "<p class=\"meta\">" << entries.size() << " screen pairs. Generated "
       << xml_escape(generated_at) << ".</p>\n";
    os << "<table id=\"pairs\">\n<tr><th>Pair</th><th>Activity</th><th>Cost</th><th>Changes</th><th>Summary</th></tr>\n";
    for (const auto& e : entries) {
        os << "<tr><td>";
        if (e.error) {
            os << xml_escape(e.pair_id);
        } else {
            os << "<a href=\"" << xml_escape(e.pair_id) << "/report.html\">" << xml_escape(e.pair_id) << "</a>";
        }
        os << "</td><td>" << xml_escape(e.activity) << "</td><td>" << format_fixed(e.assignment_cost, 6)
           << "</td><td>" << (e.error ? std::string("-") : std::to_string(e.change_count)) << "</td><td>"
           << xml_escape(e.error ? "analysis failed: " + *e.error : e.summary) << "</td></tr>\n";
    }
    os << "</table>\n";
    if (!unmatched.empty()) {
        os << "<section id=\"unmatched\">\n<h2>Unmatched screens (" << unmatched.size()
           << ")</h2>\n<ul>\n";
        for (const auto& u : unmatched) {
            os << "<li>" << xml_escape(u.side) << " <code>" << xml_escape(u.source_id) << "</code> "
               << xml_escape(u.activity) << " / " << xml_escape(u.window_name) << "</li>\n";
        }
        os << "</ul>\n</section>\n";
    }
    os << "</body>\n</html>\n";
    return os.str();
}

}  // namespace guidiff
