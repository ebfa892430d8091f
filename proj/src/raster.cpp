#include "guidiff/raster.hpp"

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <memory>
#include <string>

#include "guidiff/model.hpp"

namespace guidiff {

Raster::Raster(int width, int height, Rgb fill)
    : width_(std::max(width, 0)), height_(std::max(height, 0)),
      data_(pixel_count() * 4) {
    for (std::size_t i = 0; i < data_.size(); i += 4) {
        data_[i] = fill.r;
        data_[i + 1] = fill.g;
        data_[i + 2] = fill.b;
        data_[i + 3] = 255;
    }
}

void Raster::fill_rect(int x, int y, int w, int h, Rgb c) noexcept {
    const int x0 = std::max(x, 0);
    const int y0 = std::max(y, 0);
    const int x1 = std::min(x + w, width_);
    const int y1 = std::min(y + h, height_);
    for (int yy = y0; yy < y1; ++yy) {
        for (int xx = x0; xx < x1; ++xx) set(xx, yy, c);
    }
}

Raster Raster::crop(int x, int y, int w, int h) const {
    if (w <= 0 || h <= 0) throw Error("crop: zero-area region");
    if (x < 0 || y < 0 || x + w > width_ || y + h > height_) {
        throw Error("crop: region outside image");
    }
    Raster out(w, h);
    const std::size_t row_bytes = static_cast<std::size_t>(w) * 4;
    for (int yy = 0; yy < h; ++yy) {
        std::copy_n(&data_[offset(x, y + yy)], row_bytes, &out.data_[out.offset(0, yy)]);
    }
    return out;
}

Mask::Mask(int width, int height, std::uint8_t fill)
    : width_(std::max(width, 0)), height_(std::max(height, 0)), data_(pixel_count(), fill) {}

void Mask::fill_rect(int x, int y, int w, int h, std::uint8_t v) noexcept {
    const int x0 = std::max(x, 0);
    const int y0 = std::max(y, 0);
    const int x1 = std::min(x + w, width_);
    const int y1 = std::min(y + h, height_);
    for (int yy = y0; yy < y1; ++yy) {
        std::fill(data_.begin() + static_cast<std::ptrdiff_t>(yy) * width_ + x0,
                  data_.begin() + static_cast<std::ptrdiff_t>(yy) * width_ + x1, v);
    }
}

std::size_t Mask::popcount() const noexcept {
    return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

Raster Mask::to_raster() const {
    Raster out(width_, height_);
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            const std::uint8_t v = at(x, y) ? 255 : 0;
            out.set(x, y, {v, v, v});
        }
    }
    return out;
}

namespace {

std::vector<int> nearest_index(int src, int dst) {
    std::vector<int> idx(static_cast<std::size_t>(dst));
    for (int i = 0; i < dst; ++i) {
        idx[i] = static_cast<int>(static_cast<std::int64_t>(i) * src / dst);
    }
    return idx;
}

}  // namespace

Raster resize_nearest(const Raster& src, int width, int height) {
    if (src.width() == width && src.height() == height) return src;
    if (src.empty() || width <= 0 || height <= 0) throw Error("resize: zero-dimension image");
    const auto xs = nearest_index(src.width(), width);
    const auto ys = nearest_index(src.height(), height);
    Raster out(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) out.set(x, y, src.at(xs[x], ys[y]));
    }
    return out;
}

Mask resize_nearest(const Mask& src, int width, int height) {
    if (src.width() == width && src.height() == height) return src;
    if (src.empty() || width <= 0 || height <= 0) throw Error("resize: zero-dimension mask");
    const auto xs = nearest_index(src.width(), width);
    const auto ys = nearest_index(src.height(), height);
    Mask out(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) out.set(x, y, src.at(xs[x], ys[y]));
    }
    return out;
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const noexcept {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_error_fn(png_structp png, png_const_charp msg) {
    auto* what = static_cast<std::string*>(png_get_error_ptr(png));
    if (what) *what = msg;
    png_longjmp(png, 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

}  // namespace

Raster read_png(const std::filesystem::path& path) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) throw IoError("cannot open image " + path.string());

    std::uint8_t sig[8] = {};
    if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
        throw IoError("not a PNG file: " + path.string());
    }

    std::string libpng_error;
    png_structp png =
        png_create_read_struct(PNG_LIBPNG_VER_STRING, &libpng_error, png_error_fn, png_warning_fn);
    if (!png) throw IoError("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("png_create_info_struct failed");
    }

    Raster out;
    std::vector<png_bytep> rows;
    std::vector<std::uint8_t> buffer;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("corrupt PNG " + path.string() + ": " + libpng_error);
    }

    png_init_io(png, file.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
        png_set_gray_to_rgb(png);
    }
    png_set_filler(png, 0xFF, PNG_FILLER_AFTER);
    png_read_update_info(png, info);

    if (width == 0 || height == 0) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("zero-dimension image " + path.string());
    }

    out = Raster(static_cast<int>(width), static_cast<int>(height));
    auto bytes = out.rgba();
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        rows[y] = bytes.data() + static_cast<std::size_t>(y) * width * 4;
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    for (std::size_t i = 3; i < bytes.size(); i += 4) bytes[i] = 255;
    return out;
}

void write_png(const std::filesystem::path& path, const Raster& image) {
    if (image.empty()) throw IoError("refusing to write empty image " + path.string());
    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) throw IoError("cannot write image " + path.string());

    std::string libpng_error;
    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, &libpng_error, png_error_fn, png_warning_fn);
    if (!png) throw IoError("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("png_create_info_struct failed");
    }

    std::vector<std::uint8_t> row(static_cast<std::size_t>(image.width()) * 3);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("PNG encode failed for " + path.string() + ": " + libpng_error);
    }

    png_init_io(png, file.get());
    png_set_compression_level(png, 6);
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width()),
                 static_cast<png_uint_32>(image.height()), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    const auto bytes = image.rgba();
    for (int y = 0; y < image.height(); ++y) {
        const std::uint8_t* src = bytes.data() + static_cast<std::size_t>(y) * image.width() * 4;
        for (int x = 0; x < image.width(); ++x) {
            row[x * 3] = src[x * 4];
            row[x * 3 + 1] = src[x * 4 + 1];
            row[x * 3 + 2] = src[x * 4 + 2];
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace guidiff
