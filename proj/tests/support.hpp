#pragma once
// Fixture helpers shared by the unit tests and the acceptance binary.

#include <expat.h>
#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "guidiff/corpus.hpp"
#include "guidiff/font.hpp"
#include "guidiff/ingest.hpp"
#include "guidiff/model.hpp"

namespace gt {

using namespace guidiff;
namespace fs = std::filesystem;

inline GuiComponent comp(std::string type, int x, int y, int w, int h,
                         std::optional<std::string> text = std::nullopt) {
    GuiComponent c;
    c.component_type = std::move(type);
    c.bounds = {x, y, w, h};
    c.text = std::move(text);
    return c;
}

/// Flat capture: a full-screen FrameLayout root with `leaves` as children and a
/// uniformly filled screenshot.
inline ScreenCapture flat_capture(int w, int h, Rgb bg, const std::vector<GuiComponent>& leaves,
                                  std::string activity = "A", std::string source = "0") {
    ScreenCapture cap;
    cap.image = Raster(w, h, bg);
    HierarchyBuilder hb;
    hb.open(comp("android.widget.FrameLayout", 0, 0, w, h));
    for (const auto& l : leaves) {
        hb.open(l);
        hb.close();
    }
    hb.close();
    cap.hierarchy = hb.build();
    cap.activity = std::move(activity);
    cap.window_name = cap.activity;
    cap.window_type = "ACTIVITY";
    cap.source_id = std::move(source);
    return cap;
}

inline CapturePtr share(ScreenCapture c) { return std::make_shared<const ScreenCapture>(std::move(c)); }

inline ScreenPair pair_of(const ScreenCapture& a, const ScreenCapture& b) {
    return {share(a), share(b), 0.0};
}

/// Screen spec whose root directly holds `leaves`.
inline corpus::ScreenSpec flat_spec(std::vector<corpus::ElementSpec> leaves, Rgb bg = {250, 250, 250},
                                    int w = 360, int h = 640) {
    corpus::ScreenSpec s;
    s.width = w;
    s.height = h;
    s.activity = "fixture";
    s.window_name = "fixture";
    s.source_id = "0";
    s.root.component_type = "android.widget.FrameLayout";
    s.root.bounds = {0, 0, w, h};
    s.root.fill = bg;
    s.root.children = std::move(leaves);
    return s;
}

inline corpus::ElementSpec text_el(std::string text, int x, int y, Rgb color = {20, 20, 20},
                                   bool bold = false) {
    corpus::ElementSpec e;
    e.component_type = "android.widget.TextView";
    e.text = std::move(text);
    e.text_color = color;
    e.bold = bold;
    e.bounds = {x, y, font::text_width(*e.text, 3, true) + 6, font::text_height(3) + 6};
    return e;
}

inline corpus::ElementSpec icon_el(corpus::IconShape shape, Rgb color, int x, int y, int side = 48) {
    corpus::ElementSpec e;
    e.component_type = "android.widget.ImageView";
    e.icon = corpus::IconSpec{shape, color};
    e.bounds = {x, y, side, side};
    return e;
}

/// Fresh empty directory under the system temp dir.
inline fs::path temp_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "guidiff-tests" /
                       (name + "-" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

inline std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const fs::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary);
    out << s;
}

/// True when expat accepts the document.
inline bool xml_well_formed(const std::string& doc) {
    XML_Parser p = XML_ParserCreate("UTF-8");
    const bool ok = XML_Parse(p, doc.data(), static_cast<int>(doc.size()), XML_TRUE) == XML_STATUS_OK;
    XML_ParserFree(p);
    return ok;
}

/// Occurrences of `needle` in `hay`.
inline std::size_t count_of(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

inline std::vector<std::string> list_files(const fs::path& root) {
    std::vector<std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file()) out.push_back(fs::relative(e.path(), root).string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace gt
