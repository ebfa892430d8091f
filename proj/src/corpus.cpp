#include "guidiff/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

#include "guidiff/font.hpp"
#include "guidiff/ingest.hpp"

namespace guidiff::corpus {

namespace fs = std::filesystem;

namespace {

constexpr const char* kPackage = "com.example.app";

// mt19937_64 output is fully specified; std distributions are not, so draws
// go through this helper to keep corpora identical across standard libraries.
int pick(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

template <typename T, std::size_t N>
const T& choose(std::mt19937_64& rng, const T (&items)[N]) {
    return items[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(N) - 1))];
}

constexpr Rgb kBackgrounds[] = {
    {250, 250, 250}, {245, 240, 230}, {235, 242, 250}, {240, 250, 240}, {250, 238, 238},
    {236, 236, 246}, {248, 246, 226}, {230, 244, 244}, {244, 232, 248}, {226, 232, 226},
    {252, 244, 236}, {238, 238, 238},
};
constexpr Rgb kAccents[] = {
    {33, 99, 190}, {0, 121, 107}, {183, 28, 28}, {106, 27, 154}, {230, 81, 0},
    {55, 71, 79},  {46, 125, 50}, {173, 20, 87},
};
constexpr Rgb kButtonFills[] = {
    {25, 118, 210}, {56, 142, 60}, {211, 47, 47}, {123, 31, 162}, {0, 137, 123},
    {93, 64, 55},   {69, 90, 100},
};
constexpr Rgb kTextColors[] = {
    {20, 20, 20}, {30, 40, 120}, {120, 20, 20}, {20, 90, 40}, {90, 30, 110},
};
constexpr Rgb kButtonTextColors[] = {{255, 255, 255}, {255, 230, 0}, {140, 255, 255}};
constexpr Rgb kIconColors[] = {
    {200, 30, 30}, {30, 30, 200}, {20, 110, 40}, {100, 40, 140}, {30, 30, 30}, {160, 80, 0},
};
constexpr Rgb kIconButtonFills[] = {{220, 230, 250}, {250, 230, 220}, {225, 245, 225}, {240, 240, 210}};

constexpr const char* kWords[] = {
    "Inbox",    "Share",    "Maps",     "Send",     "Home",     "Edit",     "Save",
    "Close",    "Login",    "Reset",    "Search",   "Upload",   "Browse",   "Submit",
    "Cancel",   "Topics",   "Profile",  "Account",  "Refresh",  "Explore",  "History",
    "Billing",  "Archive",  "Members",  "Display",  "Network",  "Storage",  "Backup",
    "Settings", "Messages", "Contacts", "Calendar", "Download", "Feedback", "Security",
};

std::string pick_word(std::mt19937_64& rng, std::size_t length, const std::string& avoid) {
    std::vector<std::string> pool;
    for (const char* w : kWords) {
        const std::string s(w);
        if ((length == 0 || s.size() == length) && normalize_text(s) != normalize_text(avoid)) {
            pool.push_back(s);
        }
    }
    if (pool.empty()) throw Error("no replacement word of length " + std::to_string(length));
    return pool[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(pool.size()) - 1))];
}

bool in_shape(IconShape shape, int u, int v, int s) {
    const double c = (s - 1) / 2.0;
    const double du = u - c, dv = v - c;
    const double r2 = du * du + dv * dv;
    switch (shape) {
        case IconShape::Disk: return r2 <= (s / 2.0) * (s / 2.0);
        case IconShape::Ring: return r2 > (s / 4.0) * (s / 4.0) && r2 <= (s / 2.0) * (s / 2.0);
        case IconShape::Plus: return std::abs(du) < s / 6.0 || std::abs(dv) < s / 6.0;
        case IconShape::Bars: return (v * 5 / s) % 2 == 0;
        case IconShape::Triangle: return v >= u;
        case IconShape::Checker: return ((u * 2 / s) + (v * 2 / s)) % 2 == 0;
    }
    return false;
}

void draw_icon(Raster& img, const BoundingBox& b, const IconSpec& icon) {
    const int side = std::min(b.width, b.height) - 8;
    if (side <= 0) return;
    const int ox = b.x + (b.width - side) / 2;
    const int oy = b.y + (b.height - side) / 2;
    for (int v = 0; v < side; ++v) {
        for (int u = 0; u < side; ++u) {
            if (in_shape(icon.shape, u, v, side)) img.set(ox + u, oy + v, icon.color);
        }
    }
}

void validate(const ElementSpec& e, const BoundingBox& parent) {
    const auto& b = e.bounds;
    if (b.width <= 0 || b.height <= 0) throw Error("element " + e.component_type + " has no area");
    if (b.x < parent.x || b.y < parent.y || b.right() > parent.right() || b.bottom() > parent.bottom()) {
        throw Error("element " + e.component_type + " leaves its parent");
    }
    if (e.text && !e.text->empty()) {
        const int tw = font::text_width(*e.text, e.text_scale, e.bold);
        if (tw + (e.center_text ? 0 : 3) > b.width || font::text_height(e.text_scale) > b.height) {
            throw Error("text \"" + *e.text + "\" does not fit its element");
        }
    }
    for (std::size_t i = 0; i < e.children.size(); ++i) {
        validate(e.children[i], b);
        for (std::size_t j = 0; j < i; ++j) {
            if (bbox_geometry(e.children[i].bounds, e.children[j].bounds).intersection_area > 0) {
                throw Error("overlapping elements " + e.children[j].component_type + " and " +
                            e.children[i].component_type);
            }
        }
    }
}

void paint(Raster& img, const ElementSpec& e) {
    const auto& b = e.bounds;
    if (e.fill) img.fill_rect(b.x, b.y, b.width, b.height, *e.fill);
    if (e.icon) draw_icon(img, b, *e.icon);
    if (e.text && !e.text->empty()) {
        const int tw = font::text_width(*e.text, e.text_scale, e.bold);
        const int th = font::text_height(e.text_scale);
        const int tx = e.center_text ? b.x + (b.width - tw) / 2 : b.x + 3;
        font::draw_text(img, tx, b.y + (b.height - th) / 2, *e.text, e.text_scale, e.text_color, e.bold);
    }
    for (const auto& c : e.children) paint(img, c);
}

void add_nodes(HierarchyBuilder& hb, const ElementSpec& e) {
    GuiComponent c;
    c.component_type = e.component_type;
    c.bounds = e.bounds;
    c.text = e.text;
    c.resource_id = e.resource_id;
    hb.open(c);
    for (const auto& child : e.children) add_nodes(hb, child);
    hb.close();
}

void collect_leaves(ElementSpec& e, std::vector<ElementSpec*>& out) {
    if (e.children.empty()) {
        out.push_back(&e);
        return;
    }
    for (auto& c : e.children) collect_leaves(c, out);
}

std::string rid(const std::string& name) { return std::string(kPackage) + ":id/" + name; }

ElementSpec text_view(const std::string& text, int x, int y, Rgb color, const std::string& id) {
    ElementSpec e;
    e.component_type = "android.widget.TextView";
    e.text = text;
    e.text_color = color;
    e.bounds = {x, y, font::text_width(text, 3) + 6, font::text_height(3) + 6};
    e.resource_id = rid(id);
    return e;
}

ElementSpec button(const std::string& text, int x, int y, Rgb fill, const std::string& id) {
    ElementSpec e;
    e.component_type = "android.widget.Button";
    e.text = text;
    e.text_color = {255, 255, 255};
    e.fill = fill;
    e.center_text = true;
    e.bounds = {x, y, font::text_width(text, 3) + 10, font::text_height(3) + 8};
    e.resource_id = rid(id);
    return e;
}

ElementSpec image(const std::string& type, BoundingBox b, IconSpec icon, std::optional<Rgb> fill,
                  const std::string& id) {
    ElementSpec e;
    e.component_type = type;
    e.bounds = b;
    e.icon = icon;
    e.fill = fill;
    e.resource_id = rid(id);
    return e;
}

IconSpec random_icon(std::mt19937_64& rng) {
    return {static_cast<IconShape>(pick(rng, 0, kIconShapeCount - 1)), choose(rng, kIconColors)};
}

std::string type_swap(const std::string& t) {
    if (t == "android.widget.TextView") return "android.widget.CheckedTextView";
    if (t == "android.widget.CheckedTextView") return "android.widget.TextView";
    if (t == "android.widget.Button") return "android.widget.ToggleButton";
    if (t == "android.widget.ToggleButton") return "android.widget.Button";
    if (t == "android.widget.ImageView") return "android.widget.ImageButton";
    if (t == "android.widget.ImageButton") return "android.widget.ImageView";
    return "android.view.View";
}

ElementSpec& content_of(ScreenSpec& s) {
    for (auto& c : s.root.children) {
        if (c.resource_id == rid("content")) return c;
    }
    throw Error("screen spec has no content container");
}

}  // namespace

IconShape swapped_shape(IconShape s) noexcept {
    return static_cast<IconShape>((static_cast<int>(s) + 3) % kIconShapeCount);
}

ScreenCapture render_screen(const ScreenSpec& spec) {
    const BoundingBox screen{0, 0, spec.width, spec.height};
    validate(spec.root, screen);
    ScreenCapture cap;
    cap.image = Raster(spec.width, spec.height, {255, 255, 255});
    paint(cap.image, spec.root);
    HierarchyBuilder hb;
    add_nodes(hb, spec.root);
    cap.hierarchy = hb.build();
    cap.activity = spec.activity;
    cap.window_name = spec.window_name;
    cap.window_type = spec.window_type;
    cap.capture_index = spec.capture_index;
    cap.source_id = spec.source_id;
    return cap;
}

std::vector<const ElementSpec*> spec_leaves(const ScreenSpec& spec) {
    std::vector<ElementSpec*> tmp;
    collect_leaves(const_cast<ElementSpec&>(spec.root), tmp);
    return {tmp.begin(), tmp.end()};
}

ScreenSpec random_screen_spec(std::uint64_t seed, int index, int width, int height) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), 0x5eedu};
    std::mt19937_64 rng(seq);

    ScreenSpec s;
    s.width = width;
    s.height = height;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%03d", index);
    s.source_id = buf;
    s.capture_index = index;
    std::snprintf(buf, sizeof buf, "%s.Screen%03dActivity", kPackage, index);
    s.activity = buf;
    s.window_name = s.activity;
    s.window_type = "ACTIVITY";

    s.root.component_type = "android.widget.FrameLayout";
    s.root.bounds = {0, 0, width, height};
    s.root.fill = choose(rng, kBackgrounds);
    s.root.resource_id = rid("root");

    ElementSpec bar;
    bar.component_type = "android.widget.LinearLayout";
    bar.bounds = {0, 0, width, 56};
    bar.fill = choose(rng, kAccents);
    bar.resource_id = rid("toolbar");
    bar.children.push_back(text_view(pick_word(rng, 0, ""), 16, 14, {255, 255, 255}, "title"));
    bar.children.push_back(image("android.widget.ImageView", {width - 48, 8, 40, 40},
                                 {static_cast<IconShape>(pick(rng, 0, kIconShapeCount - 1)), {255, 255, 255}},
                                 std::nullopt, "menu"));
    s.root.children.push_back(std::move(bar));

    ElementSpec content;
    content.component_type = "android.widget.LinearLayout";
    content.bounds = {0, 56, width, height - 56};
    content.resource_id = rid("content");
    const int rows = std::min(pick(rng, 5, 7), (height - 56 - 72) / 76);
    for (int r = 0; r < rows; ++r) {
        const int y = 72 + 76 * r;
        const int x = 16 + pick(rng, 0, 24);
        const std::string id = "row" + std::to_string(r);
        ElementSpec left;
        switch (pick(rng, 0, 3)) {
            case 0: left = text_view(pick_word(rng, 0, ""), x, y, choose(rng, kTextColors), id); break;
            case 1: left = button(pick_word(rng, 0, ""), x, y, choose(rng, kButtonFills), id); break;
            case 2:
                left = image("android.widget.ImageView", {x, y, 48, 48}, random_icon(rng), std::nullopt, id);
                break;
            default:
                left = image("android.widget.ImageButton", {x, y, 56, 48}, random_icon(rng),
                             choose(rng, kIconButtonFills), id);
                break;
        }
        const int right_edge = left.bounds.right();
        content.children.push_back(std::move(left));
        if (right_edge + 80 < width - 56 && pick(rng, 0, 99) < 35) {
            content.children.push_back(image("android.widget.ImageView", {width - 56, y, 40, 40},
                                             random_icon(rng), std::nullopt, id + "_side"));
        }
    }
    s.root.children.push_back(std::move(content));
    return s;
}

MutatedScreen apply_mutation(const ScreenSpec& spec, const MutationSpec& m) {
    MutatedScreen out;
    out.spec = spec;
    out.truth.specific = m.specific;

    if (m.specific == ChangeType::Added) {
        if (!m.added) throw Error("Added mutation without an element");
        content_of(out.spec).children.push_back(*m.added);
        out.truth.bounds_new = m.added->bounds;
        out.capture = render_screen(out.spec);
        return out;
    }

    std::vector<ElementSpec*> leaves;
    collect_leaves(out.spec.root, leaves);
    if (m.target_leaf < 0 || static_cast<std::size_t>(m.target_leaf) >= leaves.size()) {
        throw Error("mutation target out of range");
    }
    ElementSpec& t = *leaves[static_cast<std::size_t>(m.target_leaf)];
    out.truth.bounds_old = t.bounds;
    const bool has_text = t.text && !t.text->empty();

    switch (m.specific) {
        case ChangeType::TextContent:
            if (!has_text) throw Error("TextContent needs a text element");
            if (normalize_text(m.text) == normalize_text(*t.text)) throw Error("text unchanged");
            t.text = m.text;
            break;
        case ChangeType::FontStyle:
            if (!has_text) throw Error("FontStyle needs a text element");
            t.bold = !t.bold;
            break;
        case ChangeType::FontColor:
            if (!has_text) throw Error("FontColor needs a text element");
            if (m.color == t.text_color || (t.fill && m.color == *t.fill)) throw Error("color unchanged");
            t.text_color = m.color;
            break;
        case ChangeType::VerticalTranslation: t.bounds.y += m.amount; break;
        case ChangeType::HorizontalTranslation: t.bounds.x += m.amount; break;
        case ChangeType::VerticalSize: t.bounds.height += m.amount; break;
        case ChangeType::HorizontalSize: t.bounds.width += m.amount; break;
        case ChangeType::ImageColor:
            if (!t.icon) throw Error("ImageColor needs an icon element");
            if (m.color == t.icon->color) throw Error("color unchanged");
            t.icon->color = m.color;
            break;
        case ChangeType::ImageChange:
            if (!t.icon) throw Error("ImageChange needs an icon element");
            if (m.shape == t.icon->shape) throw Error("shape unchanged");
            t.icon->shape = m.shape;
            break;
        case ChangeType::ComponentType:
            if (m.component_type.empty() || m.component_type == t.component_type) {
                throw Error("component type unchanged");
            }
            t.component_type = m.component_type;
            break;
        case ChangeType::Removed: {
            // Find the parent and erase; a sole child would turn its container into a leaf.
            std::function<bool(ElementSpec&)> erase = [&](ElementSpec& p) {
                for (auto it = p.children.begin(); it != p.children.end(); ++it) {
                    if (&*it == &t) {
                        if (p.children.size() < 2) throw Error("cannot remove a sole child");
                        p.children.erase(it);
                        return true;
                    }
                    if (erase(*it)) return true;
                }
                return false;
            };
            erase(out.spec.root);
            out.capture = render_screen(out.spec);
            return out;
        }
        case ChangeType::Added: break;
    }
    out.truth.bounds_new = t.bounds;
    out.capture = render_screen(out.spec);
    return out;
}

std::optional<MutationSpec> make_mutation(const ScreenSpec& spec, ChangeType type, std::mt19937_64& rng) {
    const auto leaves = spec_leaves(spec);
    ScreenSpec copy = spec;
    const ElementSpec& content = content_of(copy);

    if (type == ChangeType::Added) {
        for (int attempt = 0; attempt < 40; ++attempt) {
            const int x = pick(rng, 16, spec.width - 56);
            const int y = pick(rng, content.bounds.y + 8, content.bounds.bottom() - 48);
            MutationSpec m;
            m.specific = type;
            m.added = image("android.widget.ImageView", {x, y, 40, 40}, random_icon(rng), std::nullopt,
                            "added");
            // Keep a clear margin around the new element.
            const BoundingBox halo{x - 12, y - 12, 64, 64};
            bool clear = true;
            for (const auto& c : content.children) {
                if (bbox_geometry(halo, c.bounds).intersection_area > 0) clear = false;
            }
            if (!clear) continue;
            try {
                apply_mutation(spec, m);
                return m;
            } catch (const Error&) {
            }
        }
        return std::nullopt;
    }

    // Only content leaves are mutated; the toolbar stays fixed.
    std::vector<int> candidates;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        const auto& b = leaves[i]->bounds;
        if (bbox_geometry(b, content.bounds).intersection_area == b.area()) {
            candidates.push_back(static_cast<int>(i));
        }
    }
    for (std::size_t i = candidates.size(); i > 1; --i) {
        std::swap(candidates[i - 1], candidates[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(i) - 1))]);
    }

    for (int idx : candidates) {
        const ElementSpec& t = *leaves[static_cast<std::size_t>(idx)];
        const bool has_text = t.text && !t.text->empty();
        for (int attempt = 0; attempt < 4; ++attempt) {
            MutationSpec m;
            m.specific = type;
            m.target_leaf = idx;
            switch (type) {
                case ChangeType::TextContent:
                    if (!has_text) continue;
                    m.text = pick_word(rng, t.text->size(), *t.text);
                    break;
                case ChangeType::FontStyle:
                    if (!has_text) continue;
                    break;
                case ChangeType::FontColor: {
                    if (!has_text) continue;
                    m.color = t.fill ? choose(rng, kButtonTextColors) : choose(rng, kTextColors);
                    if (m.color == t.text_color) continue;
                    break;
                }
                case ChangeType::VerticalTranslation:
                    m.amount = pick(rng, 10, 20) * (pick(rng, 0, 1) ? 1 : -1);
                    break;
                case ChangeType::HorizontalTranslation:
                    m.amount = pick(rng, 12, 40) * (pick(rng, 0, 1) ? 1 : -1);
                    break;
                case ChangeType::VerticalSize: m.amount = pick(rng, 8, 16); break;
                case ChangeType::HorizontalSize: m.amount = pick(rng, 12, 40); break;
                case ChangeType::ImageColor:
                    if (!t.icon) continue;
                    m.color = choose(rng, kIconColors);
                    if (m.color == t.icon->color) continue;
                    break;
                case ChangeType::ImageChange:
                    if (!t.icon) continue;
                    m.shape = swapped_shape(t.icon->shape);
                    break;
                case ChangeType::ComponentType: m.component_type = type_swap(t.component_type); break;
                case ChangeType::Removed: break;
                case ChangeType::Added: break;
            }
            try {
                const MutatedScreen ms = apply_mutation(spec, m);
                // Layout moves keep a 12 px gap to every other content element.
                if (category_of(type) == ChangeCategory::LayoutChange) {
                    const auto& nb = *ms.truth.bounds_new;
                    const BoundingBox halo{nb.x - 12, nb.y - 12, nb.width + 24, nb.height + 24};
                    bool clear = true;
                    for (const auto* other : leaves) {
                        if (other != &t && bbox_geometry(halo, other->bounds).intersection_area > 0) clear = false;
                    }
                    if (!clear) continue;
                }
                return m;
            } catch (const Error&) {
            }
        }
    }
    return std::nullopt;
}

std::vector<CorpusPair> generate_corpus(const CorpusOptions& options) {
    if (options.types.empty() || options.per_type <= 0) return {};
    std::vector<CorpusPair> out;
    const int total = options.per_type * static_cast<int>(options.types.size());
    out.reserve(static_cast<std::size_t>(total));
    for (int i = 0; i < total; ++i) {
        const ChangeType type = options.types[static_cast<std::size_t>(i) % options.types.size()];
        bool done = false;
        for (int attempt = 0; attempt < 64 && !done; ++attempt) {
            const std::uint64_t seed = options.seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(attempt);
            ScreenSpec spec = random_screen_spec(seed, i, options.width, options.height);
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(i), 0x3u};
            std::mt19937_64 rng(seq);
            const auto m = make_mutation(spec, type, rng);
            if (!m) continue;
            MutatedScreen ms = apply_mutation(spec, *m);
            CorpusPair p;
            p.old_capture = render_screen(spec);
            p.new_capture = std::move(ms.capture);
            p.pair_id = p.old_capture.source_id + "-" + p.new_capture.source_id;
            p.old_spec = std::move(spec);
            p.mutation = *m;
            p.truth = ms.truth;
            out.push_back(std::move(p));
            done = true;
        }
        if (!done) throw Error("could not place a " + std::string(to_string(type)) + " mutation");
    }
    return out;
}

void write_corpus(const std::vector<CorpusPair>& corpus, const fs::path& dir) {
    for (const char* sub : {"old", "new", "truth"}) {
        std::error_code ec;
        fs::create_directories(dir / sub, ec);
        if (ec) throw IoError("cannot create " + (dir / sub).string() + ": " + ec.message());
    }
    for (const auto& p : corpus) {
        write_capture(dir / "old", p.old_capture);
        write_capture(dir / "new", p.new_capture);
        write_truth_file(dir / "truth" / (p.pair_id + ".truth.jsonl"), {p.truth});
    }
}

}  // namespace guidiff::corpus
