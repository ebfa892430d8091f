#include "guidiff/image_analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace guidiff {
namespace {

void require_pixels(const Raster& img, const char* op) {
    if (img.empty()) throw Error(std::string(op) + ": zero-dimension image");
}

// Three uint16 colour planes, blurred and expressed at 16x the 8-bit scale.
struct Planes {
    int width = 0;
    int height = 0;
    std::array<std::vector<std::uint16_t>, 3> c;
};

void blur_pass(std::vector<std::uint16_t>& plane, std::vector<std::uint16_t>& scratch, int w, int h,
               const kernels::KernelTable& k) {
    const auto W = static_cast<std::size_t>(w);
    // horizontal: plane -> scratch
    for (int y = 0; y < h; ++y) {
        const std::uint16_t* in = plane.data() + y * W;
        std::uint16_t* out = scratch.data() + y * W;
        if (w == 1) {
            out[0] = static_cast<std::uint16_t>(4 * in[0]);
            continue;
        }
        out[0] = static_cast<std::uint16_t>(3 * in[0] + in[1]);
        out[w - 1] = static_cast<std::uint16_t>(in[w - 2] + 3 * in[w - 1]);
        if (w > 2) k.sum121(in, in + 1, in + 2, out + 1, W - 2);
    }
    // vertical: scratch -> plane
    for (int y = 0; y < h; ++y) {
        const std::uint16_t* up = scratch.data() + std::max(y - 1, 0) * W;
        const std::uint16_t* mid = scratch.data() + y * W;
        const std::uint16_t* down = scratch.data() + std::min(y + 1, h - 1) * W;
        k.sum121(up, mid, down, plane.data() + y * W, W);
    }
}

Planes make_planes(const Raster& img, int radius, const kernels::KernelTable& k) {
    Planes p;
    p.width = img.width();
    p.height = img.height();
    const std::size_t n = img.pixel_count();
    const auto px = img.rgba();
    for (int ch = 0; ch < 3; ++ch) {
        auto& plane = p.c[ch];
        plane.resize(n);
        for (std::size_t i = 0; i < n; ++i) plane[i] = px[4 * i + ch];
        if (radius <= 0) {
            for (auto& v : plane) v = static_cast<std::uint16_t>(v * 16);
            continue;
        }
        std::vector<std::uint16_t> scratch(n);
        for (int pass = 0; pass < radius; ++pass) {
            blur_pass(plane, scratch, p.width, p.height, k);
            if (pass > 0) {
                // back from 256x to 16x scale
                for (auto& v : plane) v = static_cast<std::uint16_t>((v + 8) >> 4);
            }
        }
    }
    return p;
}

std::uint32_t perceptual_threshold(double sensitivity) {
    const double s = std::max(sensitivity, 0.0);
    const double t = s * s * 4080.0 * 4080.0 * 256.0;
    if (t >= static_cast<double>(std::numeric_limits<std::uint32_t>::max())) {
        return std::numeric_limits<std::uint32_t>::max();
    }
    return static_cast<std::uint32_t>(std::floor(t));
}

}  // namespace

double color_distance(const Raster& a, const Raster& b, const kernels::KernelTable& k) {
    require_pixels(a, "color_distance");
    require_pixels(b, "color_distance");
    const Raster resized = resize_nearest(b, a.width(), a.height());
    const double sum = k.color_distance_sum(a.rgba().data(), resized.rgba().data(), a.pixel_count());
    return sum / (static_cast<double>(a.pixel_count()) * std::sqrt(3.0) * 255.0);
}

Mask bbox_silhouette(const ScreenCapture& capture, std::int64_t area_cap) {
    const int w = capture.image.width();
    const int h = capture.image.height();
    Mask sil(w, h, 0);
    for (const auto& node : capture.hierarchy.nodes()) {
        const GuiComponent& c = node.component;
        if (!c.is_leaf || c.excluded) continue;
        if (c.bounds.area() >= area_cap) continue;
        const BoundingBox b = c.bounds.clamped(w, h);
        sil.fill_rect(b.x, b.y, b.width, b.height, 1);
    }
    return sil;
}

double bbox_diff(const Mask& a, const Mask& b, const kernels::KernelTable& k) {
    if (a.empty() || b.empty()) throw Error("bbox_diff: zero-dimension silhouette");
    const Mask resized = resize_nearest(b, a.width(), a.height());
    const std::size_t diff = k.count_mismatch(a.bits().data(), resized.bits().data(), a.pixel_count());
    return static_cast<double>(diff) / static_cast<double>(a.pixel_count());
}

DiffResult perceptual_diff(const Raster& a, const Raster& b, const PerceptualConfig& config,
                           const kernels::KernelTable& k) {
    require_pixels(a, "perceptual_diff");
    require_pixels(b, "perceptual_diff");
    const Raster resized = resize_nearest(b, a.width(), a.height());

    const Planes pa = make_planes(a, config.blur_radius, k);
    const Planes pb = make_planes(resized, config.blur_radius, k);
    const std::uint16_t* const ca[3] = {pa.c[0].data(), pa.c[1].data(), pa.c[2].data()};
    const std::uint16_t* const cb[3] = {pb.c[0].data(), pb.c[1].data(), pb.c[2].data()};

    DiffResult out;
    out.mask = Mask(a.width(), a.height());
    const std::size_t flagged = k.perceptual_mask(ca, cb, perceptual_threshold(config.sensitivity),
                                                  out.mask.bits().data(), a.pixel_count());
    out.diff_percent = 100.0 * static_cast<double>(flagged) / static_cast<double>(a.pixel_count());
    out.diff_regions = connected_regions(out.mask);
    return out;
}

std::vector<BoundingBox> connected_regions(const Mask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    std::vector<std::uint8_t> seen(mask.pixel_count(), 0);
    std::vector<std::pair<int, int>> stack;
    std::vector<BoundingBox> regions;
    const auto bits = mask.bits();

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * w + x;
            if (!bits[idx] || seen[idx]) continue;
            int x0 = x, x1 = x, y0 = y, y1 = y;
            seen[idx] = 1;
            stack.assign(1, {x, y});
            while (!stack.empty()) {
                const auto [cx, cy] = stack.back();
                stack.pop_back();
                x0 = std::min(x0, cx);
                x1 = std::max(x1, cx);
                y0 = std::min(y0, cy);
                y1 = std::max(y1, cy);
                for (int dy = -1; dy <= 1; ++dy) {
                    const int ny = cy + dy;
                    if (ny < 0 || ny >= h) continue;
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = cx + dx;
                        if (nx < 0 || nx >= w) continue;
                        const std::size_t n = static_cast<std::size_t>(ny) * w + nx;
                        if (bits[n] && !seen[n]) {
                            seen[n] = 1;
                            stack.emplace_back(nx, ny);
                        }
                    }
                }
            }
            regions.push_back({x0, y0, x1 - x0 + 1, y1 - y0 + 1});
        }
    }
    return regions;
}

ColorHistogram color_histogram(const Raster& image) {
    require_pixels(image, "color_histogram");
    std::vector<std::uint64_t> dense(32 * 32 * 32, 0);
    const auto px = image.rgba();
    for (std::size_t i = 0; i < image.pixel_count(); ++i) {
        const std::uint32_t key = (std::uint32_t(px[4 * i] >> 3) << 10) |
                                  (std::uint32_t(px[4 * i + 1] >> 3) << 5) |
                                  std::uint32_t(px[4 * i + 2] >> 3);
        ++dense[key];
    }
    ColorHistogram h;
    h.total = image.pixel_count();
    for (std::uint32_t key = 0; key < dense.size(); ++key) {
        if (dense[key]) h.bins.emplace_hint(h.bins.end(), key, dense[key]);
    }
    return h;
}

double histogram_similarity(const ColorHistogram& a, const ColorHistogram& b) {
    if (a.total == 0 || b.total == 0) throw Error("histogram_similarity: empty histogram");
    const double na = static_cast<double>(a.total);
    const double nb = static_cast<double>(b.total);
    double sq = 0.0;
    auto ia = a.bins.begin();
    auto ib = b.bins.begin();
    while (ia != a.bins.end() || ib != b.bins.end()) {
        double pa = 0.0, pb = 0.0;
        if (ib == b.bins.end() || (ia != a.bins.end() && ia->first < ib->first)) {
            pa = static_cast<double>(ia->second) / na;
            ++ia;
        } else if (ia == a.bins.end() || ib->first < ia->first) {
            pb = static_cast<double>(ib->second) / nb;
            ++ib;
        } else {
            pa = static_cast<double>(ia->second) / na;
            pb = static_cast<double>(ib->second) / nb;
            ++ia;
            ++ib;
        }
        sq += (pa - pb) * (pa - pb);
    }
    return std::clamp(1.0 - std::sqrt(sq) / std::sqrt(2.0), 0.0, 1.0);
}

std::vector<std::uint8_t> luma_plane(const Raster& image, const kernels::KernelTable& k) {
    std::vector<std::uint8_t> out(image.pixel_count());
    k.luma(image.rgba().data(), out.data(), out.size());
    return out;
}

std::uint8_t otsu_threshold(const std::vector<std::uint8_t>& luma) {
    std::array<std::uint64_t, 256> hist{};
    for (std::uint8_t v : luma) ++hist[v];
    const double total = static_cast<double>(luma.size());
    double sum_all = 0.0;
    for (int i = 0; i < 256; ++i) sum_all += i * static_cast<double>(hist[i]);

    double w0 = 0.0, sum0 = 0.0, best = -1.0;
    int best_t = 0;
    for (int t = 0; t < 256; ++t) {
        w0 += static_cast<double>(hist[t]);
        sum0 += t * static_cast<double>(hist[t]);
        const double w1 = total - w0;
        if (w0 == 0.0 || w1 == 0.0) continue;
        const double mu0 = sum0 / w0;
        const double mu1 = (sum_all - sum0) / w1;
        const double between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if (between > best) {
            best = between;
            best_t = t;
        }
    }
    return static_cast<std::uint8_t>(best_t);
}

Mask binarize(const Raster& image, const kernels::KernelTable& k) {
    require_pixels(image, "binarize");
    const auto luma = luma_plane(image, k);
    const std::uint8_t t = otsu_threshold(luma);
    Mask out(image.width(), image.height());
    k.threshold(luma.data(), t, out.bits().data(), luma.size());
    return out;
}

}  // namespace guidiff
