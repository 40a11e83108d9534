#ifndef PDFVEX_SRC_BITMAPFONT_HPP
#define PDFVEX_SRC_BITMAPFONT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pdfvex/raster.hpp"

namespace pdfvex::bitmapfont {

/// Fixed 5x7 glyph grid with a 6-cell advance, upper-case letters and
/// digits. The same table drives painting (fixtures) and reading (the OCR
/// stub), so recognition of painted text is exact.
inline constexpr int kGlyphWidth = 5;
inline constexpr int kGlyphHeight = 7;
inline constexpr int kAdvance = 6;

bool has_glyph(char c);

/// Pixel width of `text` at `scale` (lowercase is painted as uppercase;
/// unknown characters advance like spaces).
int text_width(std::string_view text, int scale);

/// Paints `text` with its top-left cell at (x, y), each font cell scale x
/// scale pixels, writing the given RGBA straight into the raster.
void draw_text(RasterImage& img, int x, int y, int scale,
               std::string_view text, std::uint8_t r, std::uint8_t g,
               std::uint8_t b, std::uint8_t a);

/// Reads text back from a binary ink mask (non-zero = ink, row-major w x h).
/// Ink rows group into bands; each band is decoded at fixed pitch from its
/// leftmost ink column. Bands join with a single space. Unknown patterns
/// decode as '?'.
std::string read_mask(const std::vector<std::uint8_t>& ink, int w, int h);

}  // namespace pdfvex::bitmapfont

#endif  // PDFVEX_SRC_BITMAPFONT_HPP
