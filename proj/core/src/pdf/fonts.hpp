#ifndef PDFVEX_SRC_PDF_FONTS_HPP
#define PDFVEX_SRC_PDF_FONTS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pdfvex::pdf {

/// Metrics for the built-in base fonts (1/1000 em units, chars 32..126).
/// The same tables drive both the fixture writer (planning text extents)
/// and the reader (fallback when a font dict carries no /Widths).
struct BuiltinFont {
  std::string_view base_name;
  std::array<std::uint16_t, 95> widths;  // for codes 32..126
  int ascent;    // 1/1000 em
  int descent;   // negative
  bool bold;
  bool italic;
};

const BuiltinFont* find_builtin_font(std::string_view base_font);

/// Width for an ASCII code from a builtin font; 0 if out of range.
int builtin_width(const BuiltinFont& font, int code);

/// Glyph name to Unicode: ASCII names, ligature names (fi, fl, ...), and the
/// uniXXXX convention. Unknown names map to nullopt.
std::optional<char32_t> glyph_name_to_unicode(std::string_view name);

/// WinAnsi (CP1252) byte to Unicode for the 128..255 range.
char32_t winansi_to_unicode(std::uint8_t code);

/// Appends a code point as UTF-8.
void append_utf8(std::string& out, char32_t cp);

}  // namespace pdfvex::pdf

#endif  // PDFVEX_SRC_PDF_FONTS_HPP
