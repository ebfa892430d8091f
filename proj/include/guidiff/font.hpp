#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "guidiff/raster.hpp"

namespace guidiff::font {

// Built-in 5x7 bitmap font. Lowercase letters share the uppercase glyphs;
// characters without a glyph render as '?'.

inline constexpr int kGlyphWidth = 5;
inline constexpr int kGlyphHeight = 7;
inline constexpr int kAdvance = 6;  // glyph width plus one column of spacing

/// Seven rows, bit 4 is the leftmost column.
const std::array<std::uint8_t, 7>& glyph(char ch) noexcept;

/// Pixel size of `text` at `scale` (bold adds one column).
int text_width(std::string_view text, int scale, bool bold = false) noexcept;
inline int text_height(int scale) noexcept { return kGlyphHeight * scale; }

/// Draws text with its top-left at (x, y); pixels outside the image are skipped.
/// Bold smears every lit pixel one column to the right.
void draw_text(Raster& image, int x, int y, std::string_view text, int scale, Rgb color,
               bool bold = false);

}  // namespace guidiff::font
