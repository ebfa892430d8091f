#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "guidiff/kernels.hpp"
#include "guidiff/model.hpp"
#include "guidiff/raster.hpp"

namespace guidiff {

// Pixel-level primitives. Whenever two rasters of different size are compared,
// the second one is nearest-neighbour resampled to the size of the first.

struct PerceptualConfig {
    /// Pixel is flagged when its normalized perceptual distance exceeds this (0..1).
    double sensitivity = 0.05;
    /// Number of [1 2 1] binomial blur passes applied before differencing.
    int blur_radius = 1;
};

struct DiffResult {
    Mask mask;
    double diff_percent = 0.0;
    /// 8-connected components of the mask, in raster-scan order of their first pixel.
    std::vector<BoundingBox> diff_regions;
};

struct ColorHistogram {
    /// Key: (r>>3)<<10 | (g>>3)<<5 | (b>>3), i.e. 32 levels per channel.
    std::map<std::uint32_t, std::uint64_t> bins;
    std::uint64_t total = 0;
};

inline constexpr std::int64_t kDefaultAreaCap = 100000;

/// Mean per-pixel Euclidean RGB distance normalized by sqrt(3)*255; in [0,1].
double color_distance(const Raster& a, const Raster& b,
                      const kernels::KernelTable& k = kernels::active());

/// Black screen-sized mask with a white filled rectangle for every non-excluded
/// leaf whose area is strictly below area_cap.
Mask bbox_silhouette(const ScreenCapture& capture, std::int64_t area_cap = kDefaultAreaCap);

/// Fraction of pixels where the two masks disagree.
double bbox_diff(const Mask& a, const Mask& b, const kernels::KernelTable& k = kernels::active());

DiffResult perceptual_diff(const Raster& a, const Raster& b, const PerceptualConfig& config = {},
                           const kernels::KernelTable& k = kernels::active());

std::vector<BoundingBox> connected_regions(const Mask& mask);

ColorHistogram color_histogram(const Raster& image);

/// 1 - ||p - q||_2 / sqrt(2) over frequency-normalized bins; 1 means identical.
double histogram_similarity(const ColorHistogram& a, const ColorHistogram& b);

std::vector<std::uint8_t> luma_plane(const Raster& image,
                                     const kernels::KernelTable& k = kernels::active());

/// Otsu threshold over a 256-bin luma histogram; pixels with luma > t are foreground.
std::uint8_t otsu_threshold(const std::vector<std::uint8_t>& luma);

Mask binarize(const Raster& image, const kernels::KernelTable& k = kernels::active());

}  // namespace guidiff
