#include "guidiff/ingest.hpp"

#include <expat.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <regex>
#include <sstream>

#include "json.hpp"

#include "guidiff/parallel.hpp"
#include "guidiff/strings.hpp"

namespace guidiff {

BoundingBox parse_bounds(std::string_view bounds_text) {
    static const std::regex pattern(R"(^\s*\[(-?\d+),(-?\d+)\]\[(-?\d+),(-?\d+)\]\s*$)");
    const std::string text(bounds_text);
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) {
        throw ParseError("malformed bounds \"" + text + "\"");
    }
    int v[4];
    for (int i = 0; i < 4; ++i) {
        const std::string s = m[i + 1].str();
        if (std::from_chars(s.data(), s.data() + s.size(), v[i]).ec != std::errc{}) {
            throw ParseError("bounds coordinate out of range in \"" + text + "\"");
        }
    }
    if (v[2] < v[0] || v[3] < v[1]) {
        throw ParseError("bounds with negative extent \"" + text + "\"");
    }
    return {v[0], v[1], v[2] - v[0], v[3] - v[1]};
}

namespace {

struct RawNode {
    GuiComponent component;
    std::vector<std::size_t> children;
};

struct ParseState {
    std::pair<int, int> dims;
    Warnings* warnings = nullptr;
    std::vector<RawNode> nodes;
    std::vector<std::size_t> roots;
    // Open <node> elements; nullopt marks a dropped subtree.
    std::vector<std::optional<std::size_t>> open;
    int skip_depth = 0;
    std::string error;
    XML_Parser parser = nullptr;
};

void warn(ParseState& st, std::string msg) {
    if (st.warnings) st.warnings->push_back(std::move(msg));
}

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
    auto& st = *static_cast<ParseState*>(user);
    if (std::string_view(name) != "node") return;
    if (st.skip_depth > 0) {
        ++st.skip_depth;
        st.open.emplace_back(std::nullopt);
        return;
    }

    GuiComponent c;
    std::optional<std::string> bounds;
    for (int i = 0; attrs[i]; i += 2) {
        const std::string_view key = attrs[i];
        const char* value = attrs[i + 1];
        if (key == "class") c.component_type = value;
        else if (key == "text") c.text = value;
        else if (key == "resource-id") c.resource_id = value;
        else if (key == "bounds") bounds = value;
    }
    if (!bounds) {
        warn(st, "node without bounds dropped at line " +
                     std::to_string(XML_GetCurrentLineNumber(st.parser)));
        st.skip_depth = 1;
        st.open.emplace_back(std::nullopt);
        return;
    }
    try {
        c.bounds = parse_bounds(*bounds).clamped(st.dims.first, st.dims.second);
    } catch (const ParseError& e) {
        st.error = e.what();
        XML_StopParser(st.parser, XML_FALSE);
        return;
    }

    const std::size_t idx = st.nodes.size();
    st.nodes.push_back({std::move(c), {}});
    std::optional<std::size_t> parent;
    for (auto it = st.open.rbegin(); it != st.open.rend(); ++it) {
        if (*it) {
            parent = *it;
            break;
        }
    }
    if (parent) st.nodes[*parent].children.push_back(idx);
    else st.roots.push_back(idx);
    st.open.emplace_back(idx);
}

void XMLCALL on_end(void* user, const XML_Char* name) {
    auto& st = *static_cast<ParseState*>(user);
    if (std::string_view(name) != "node") return;
    if (st.skip_depth > 0) --st.skip_depth;
    if (!st.open.empty()) st.open.pop_back();
}

void emit(const std::vector<RawNode>& raw, std::size_t i, HierarchyBuilder& b) {
    b.open(raw[i].component);
    for (std::size_t c : raw[i].children) emit(raw, c, b);
    b.close();
}

}  // namespace

GuiHierarchy parse_hierarchy(std::string_view xml_text, std::pair<int, int> image_dims,
                             Warnings* warnings) {
    if (xml_text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        throw ParseError("no GUI nodes");
    }
    ParseState st;
    st.dims = image_dims;
    st.warnings = warnings;

    std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
        XML_ParserCreate("UTF-8"), &XML_ParserFree);
    if (!parser) throw ParseError("cannot allocate XML parser");
    st.parser = parser.get();
    XML_SetUserData(parser.get(), &st);
    XML_SetElementHandler(parser.get(), on_start, on_end);

    const auto status = XML_Parse(parser.get(), xml_text.data(), static_cast<int>(xml_text.size()), 1);
    if (!st.error.empty()) throw ParseError(st.error);
    if (status != XML_STATUS_OK) {
        throw ParseError(std::string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(parser.get())) +
                         " at line " + std::to_string(XML_GetCurrentLineNumber(parser.get())));
    }
    if (st.roots.empty()) throw ParseError("no GUI nodes");

    HierarchyBuilder builder;
    if (st.roots.size() == 1) {
        emit(st.nodes, st.roots.front(), builder);
    } else {
        GuiComponent root;
        root.component_type = "hierarchy";
        root.bounds = {0, 0, image_dims.first, image_dims.second};
        builder.open(root);
        for (std::size_t r : st.roots) emit(st.nodes, r, builder);
        builder.close();
    }
    return builder.build();
}

namespace {

void serialize_node(const GuiHierarchy& h, std::size_t i, int depth, std::ostringstream& os) {
    const auto& n = h.node(i);
    const auto& c = n.component;
    const BoundingBox& b = c.bounds;
    os << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "<node index=\"" << c.node_index
       << "\"";
    if (c.text) os << " text=\"" << xml_escape(*c.text) << "\"";
    if (c.resource_id) os << " resource-id=\"" << xml_escape(*c.resource_id) << "\"";
    os << " class=\"" << xml_escape(c.component_type) << "\" bounds=\"[" << b.x << ',' << b.y << "]["
       << b.right() << ',' << b.bottom() << "]\"";
    if (n.children.empty()) {
        os << " />\n";
        return;
    }
    os << ">\n";
    for (std::size_t ch : n.children) serialize_node(h, ch, depth + 1, os);
    os << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "</node>\n";
}

}  // namespace

std::string serialize_hierarchy(const GuiHierarchy& h) {
    std::ostringstream os;
    os << "<?xml version='1.0' encoding='UTF-8' standalone='yes' ?>\n<hierarchy rotation=\"0\">\n";
    if (!h.empty()) serialize_node(h, 0, 1, os);
    os << "</hierarchy>\n";
    return os.str();
}

std::vector<GuiComponent> leaf_components(const GuiHierarchy& h) {
    std::vector<GuiComponent> out;
    for (const auto& n : h.nodes()) {
        if (n.children.empty()) out.push_back(n.component);
    }
    return out;
}

namespace {

std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

CaptureSet load_capture_set(const std::filesystem::path& directory, const std::string& label,
                            Warnings& warnings, int parallelism) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(directory)) throw IoError("not a directory: " + directory.string());

    static const std::regex name_pattern(R"(^(\d+)\.(png|xml|json)$)");
    struct Triple {
        bool png = false, xml = false, json = false;
    };
    std::map<long long, std::pair<std::string, Triple>> found;
    for (const auto& entry : fs::directory_iterator(directory)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        std::smatch m;
        if (!std::regex_match(name, m, name_pattern)) continue;
        const std::string base = m[1].str();
        long long index = 0;
        if (std::from_chars(base.data(), base.data() + base.size(), index).ec != std::errc{}) continue;
        auto& slot = found[index];
        if (!slot.first.empty() && slot.first != base) {
            warnings.push_back("ambiguous capture basenames " + slot.first + " and " + base);
            continue;
        }
        slot.first = base;
        const std::string ext = m[2].str();
        if (ext == "png") slot.second.png = true;
        else if (ext == "xml") slot.second.xml = true;
        else slot.second.json = true;
    }

    std::vector<std::pair<long long, std::string>> complete;
    for (const auto& [index, entry] : found) {
        const auto& [base, t] = entry;
        if (t.png && t.xml && t.json) {
            complete.emplace_back(index, base);
            continue;
        }
        std::string missing;
        if (!t.png) missing += " png";
        if (!t.xml) missing += " xml";
        if (!t.json) missing += " json";
        warnings.push_back("incomplete capture " + base + " (missing" + missing + "), skipped");
    }
    if (complete.empty()) {
        throw IoError("zero complete triples in " + directory.string());
    }

    std::vector<CapturePtr> loaded(complete.size());
    std::vector<std::string> errors(complete.size());
    std::vector<Warnings> local_warnings(complete.size());
    parallel_for(complete.size(), parallelism, [&](std::size_t i) {
        const auto& [index, base] = complete[i];
        try {
            auto cap = std::make_shared<ScreenCapture>();
            cap->image = read_png(directory / (base + ".png"));
            cap->hierarchy = parse_hierarchy(read_text(directory / (base + ".xml")),
                                             {cap->image.width(), cap->image.height()},
                                             &local_warnings[i]);
            const auto meta = nlohmann::json::parse(read_text(directory / (base + ".json")));
            cap->activity = meta.at("activity").get<std::string>();
            cap->window_name = meta.at("window_name").get<std::string>();
            cap->window_type = meta.at("window_type").get<std::string>();
            cap->capture_index = static_cast<int>(index);
            cap->source_id = base;
            loaded[i] = std::move(cap);
        } catch (const std::exception& e) {
            errors[i] = "capture " + base + " skipped: " + e.what();
        }
    });

    CaptureSet set;
    set.label = label;
    for (std::size_t i = 0; i < complete.size(); ++i) {
        for (auto& w : local_warnings[i]) warnings.push_back(complete[i].second + ": " + w);
        if (!errors[i].empty()) warnings.push_back(errors[i]);
        if (loaded[i]) set.captures.push_back(std::move(loaded[i]));
    }
    if (set.captures.empty()) throw IoError("no readable captures in " + directory.string());
    return set;
}

void write_capture(const std::filesystem::path& directory, const ScreenCapture& capture) {
    namespace fs = std::filesystem;
    fs::create_directories(directory);
    const fs::path base = directory / capture.source_id;
    write_png(fs::path(base).concat(".png"), capture.image);
    {
        std::ofstream xml(fs::path(base).concat(".xml"), std::ios::binary);
        if (!xml) throw IoError("cannot write " + base.string() + ".xml");
        xml << serialize_hierarchy(capture.hierarchy);
    }
    std::ofstream meta(fs::path(base).concat(".json"), std::ios::binary);
    if (!meta) throw IoError("cannot write " + base.string() + ".json");
    const nlohmann::json j = {{"activity", capture.activity},
                              {"window_name", capture.window_name},
                              {"window_type", capture.window_type}};
    meta << j.dump(2) << '\n';
}

}  // namespace guidiff
