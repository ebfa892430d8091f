#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace guidiff {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// 8-bit RGBA image, row-major, 4 bytes per pixel. Alpha is carried but never
/// read by the analysis code; it is forced to 255 on load.
class Raster {
public:
    Raster() = default;
    Raster(int width, int height, Rgb fill = {0, 0, 0});

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }
    [[nodiscard]] bool empty() const noexcept { return pixel_count() == 0; }

    [[nodiscard]] Rgb at(int x, int y) const noexcept {
        const std::uint8_t* p = &data_[offset(x, y)];
        return {p[0], p[1], p[2]};
    }
    void set(int x, int y, Rgb c) noexcept {
        std::uint8_t* p = &data_[offset(x, y)];
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
        p[3] = 255;
    }
    void fill_rect(int x, int y, int w, int h, Rgb c) noexcept;

    [[nodiscard]] std::span<const std::uint8_t> rgba() const noexcept { return data_; }
    [[nodiscard]] std::span<std::uint8_t> rgba() noexcept { return data_; }

    /// Copy of [x, x+w) x [y, y+h); the region must lie inside the image.
    [[nodiscard]] Raster crop(int x, int y, int w, int h) const;

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    [[nodiscard]] std::size_t offset(int x, int y) const noexcept {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                static_cast<std::size_t>(x)) * 4;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Binary raster, one byte per pixel holding 0 or 1.
class Mask {
public:
    Mask() = default;
    Mask(int width, int height, std::uint8_t fill = 0);

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }
    [[nodiscard]] bool empty() const noexcept { return pixel_count() == 0; }

    [[nodiscard]] std::uint8_t at(int x, int y) const noexcept {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    void set(int x, int y, std::uint8_t v) noexcept {
        data_[static_cast<std::size_t>(y) * width_ + x] = v;
    }
    void fill_rect(int x, int y, int w, int h, std::uint8_t v) noexcept;

    [[nodiscard]] std::span<const std::uint8_t> bits() const noexcept { return data_; }
    [[nodiscard]] std::span<std::uint8_t> bits() noexcept { return data_; }
    [[nodiscard]] std::size_t popcount() const noexcept;

    /// 0 -> black, 1 -> white.
    [[nodiscard]] Raster to_raster() const;

    friend bool operator==(const Mask&, const Mask&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Nearest-neighbour resample to (width, height).
Raster resize_nearest(const Raster& src, int width, int height);
Mask resize_nearest(const Mask& src, int width, int height);

/// PNG codec (RGB, RGBA, gray and palette inputs accepted; output is 8-bit RGB).
Raster read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const Raster& image);

}  // namespace guidiff
