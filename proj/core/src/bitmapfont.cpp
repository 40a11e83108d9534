#include "bitmapfont.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>

namespace pdfvex::bitmapfont {

namespace {

struct GlyphRows {
  char ch;
  const char* rows[7];  // 'X' = ink
};

// clang-format off
constexpr GlyphRows kGlyphs[] = {
  {'A', {".XXX.", "X...X", "X...X", "XXXXX", "X...X", "X...X", "X...X"}},
  {'B', {"XXXX.", "X...X", "X...X", "XXXX.", "X...X", "X...X", "XXXX."}},
  {'C', {".XXX.", "X...X", "X....", "X....", "X....", "X...X", ".XXX."}},
  {'D', {"XXXX.", "X...X", "X...X", "X...X", "X...X", "X...X", "XXXX."}},
  {'E', {"XXXXX", "X....", "X....", "XXXX.", "X....", "X....", "XXXXX"}},
  {'F', {"XXXXX", "X....", "X....", "XXXX.", "X....", "X....", "X...."}},
  {'G', {".XXX.", "X...X", "X....", "X.XXX", "X...X", "X...X", ".XXXX"}},
  {'H', {"X...X", "X...X", "X...X", "XXXXX", "X...X", "X...X", "X...X"}},
  {'I', {"XXXXX", "..X..", "..X..", "..X..", "..X..", "..X..", "XXXXX"}},
  {'J', {"....X", "....X", "....X", "....X", "X...X", "X...X", ".XXX."}},
  {'K', {"X...X", "X..X.", "X.X..", "XX...", "X.X..", "X..X.", "X...X"}},
  {'L', {"X....", "X....", "X....", "X....", "X....", "X....", "XXXXX"}},
  {'M', {"X...X", "XX.XX", "X.X.X", "X...X", "X...X", "X...X", "X...X"}},
  {'N', {"X...X", "XX..X", "X.X.X", "X..XX", "X...X", "X...X", "X...X"}},
  {'O', {".XXX.", "X...X", "X...X", "X...X", "X...X", "X...X", ".XXX."}},
  {'P', {"XXXX.", "X...X", "X...X", "XXXX.", "X....", "X....", "X...."}},
  {'Q', {".XXX.", "X...X", "X...X", "X...X", "X.X.X", "X..X.", ".XX.X"}},
  {'R', {"XXXX.", "X...X", "X...X", "XXXX.", "X.X..", "X..X.", "X...X"}},
  {'S', {".XXXX", "X....", "X....", ".XXX.", "....X", "....X", "XXXX."}},
  {'T', {"XXXXX", "..X..", "..X..", "..X..", "..X..", "..X..", "..X.."}},
  {'U', {"X...X", "X...X", "X...X", "X...X", "X...X", "X...X", ".XXX."}},
  {'V', {"X...X", "X...X", "X...X", "X...X", "X...X", ".X.X.", "..X.."}},
  {'W', {"X...X", "X...X", "X...X", "X.X.X", "X.X.X", "XX.XX", "X...X"}},
  {'X', {"X...X", "X...X", ".X.X.", "..X..", ".X.X.", "X...X", "X...X"}},
  {'Y', {"X...X", "X...X", ".X.X.", "..X..", "..X..", "..X..", "..X.."}},
  {'Z', {"XXXXX", "....X", "...X.", "..X..", ".X...", "X....", "XXXXX"}},
  {'0', {".XXX.", "X...X", "X..XX", "X.X.X", "XX..X", "X...X", ".XXX."}},
  {'1', {"..X..", ".XX..", "X.X..", "..X..", "..X..", "..X..", "XXXXX"}},
  {'2', {".XXX.", "X...X", "....X", "...X.", "..X..", ".X...", "XXXXX"}},
  {'3', {"XXXX.", "....X", "....X", ".XXX.", "....X", "....X", "XXXX."}},
  {'4', {"X..X.", "X..X.", "X..X.", "XXXXX", "...X.", "...X.", "...X."}},
  {'5', {"XXXXX", "X....", "X....", "XXXX.", "....X", "....X", "XXXX."}},
  {'6', {".XXX.", "X....", "X....", "XXXX.", "X...X", "X...X", ".XXX."}},
  {'7', {"XXXXX", "....X", "...X.", "..X..", "..X..", "..X..", "..X.."}},
  {'8', {".XXX.", "X...X", "X...X", ".XXX.", "X...X", "X...X", ".XXX."}},
  {'9', {".XXX.", "X...X", "X...X", ".XXXX", "....X", "....X", ".XXX."}},
};
// clang-format on

using Pattern = std::uint64_t;  // 35 bits, row-major

Pattern glyph_pattern(const GlyphRows& g) {
  Pattern p = 0;
  for (int r = 0; r < kGlyphHeight; ++r)
    for (int c = 0; c < kGlyphWidth; ++c)
      if (g.rows[r][c] == 'X') p |= Pattern{1} << (r * kGlyphWidth + c);
  return p;
}

const std::map<char, Pattern>& forward_table() {
  static std::map<char, Pattern> table = [] {
    std::map<char, Pattern> t;
    for (const GlyphRows& g : kGlyphs) t[g.ch] = glyph_pattern(g);
    return t;
  }();
  return table;
}

const std::map<Pattern, char>& reverse_table() {
  static std::map<Pattern, char> table = [] {
    std::map<Pattern, char> t;
    for (const GlyphRows& g : kGlyphs) t[glyph_pattern(g)] = g.ch;
    return t;
  }();
  return table;
}

char normalize(char c) {
  return static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
}

}  // namespace

bool has_glyph(char c) { return forward_table().count(normalize(c)) > 0; }

int text_width(std::string_view text, int scale) {
  if (text.empty()) return 0;
  return (static_cast<int>(text.size()) * kAdvance - 1) * scale;
}

void draw_text(RasterImage& img, int x, int y, int scale,
               std::string_view text, std::uint8_t r, std::uint8_t g,
               std::uint8_t b, std::uint8_t a) {
  const auto& table = forward_table();
  int pen = x;
  for (char raw : text) {
    auto it = table.find(normalize(raw));
    if (it != table.end()) {
      const Pattern p = it->second;
      for (int gr = 0; gr < kGlyphHeight; ++gr)
        for (int gc = 0; gc < kGlyphWidth; ++gc) {
          if (!(p >> (gr * kGlyphWidth + gc) & 1)) continue;
          for (int dy = 0; dy < scale; ++dy)
            for (int dx = 0; dx < scale; ++dx) {
              const int px = pen + gc * scale + dx;
              const int py = y + gr * scale + dy;
              if (px < 0 || py < 0 || px >= img.width || py >= img.height)
                continue;
              img.set_pixel(px, py, r, g, b, a);
            }
        }
    }
    pen += kAdvance * scale;
  }
}

std::string read_mask(const std::vector<std::uint8_t>& ink, int w, int h) {
  if (w <= 0 || h <= 0 ||
      ink.size() != static_cast<std::size_t>(w) * static_cast<std::size_t>(h))
    return "";
  auto at = [&](int x, int y) { return ink[static_cast<std::size_t>(y) * w + x] != 0; };
  auto row_has_ink = [&](int y) {
    for (int x = 0; x < w; ++x)
      if (at(x, y)) return true;
    return false;
  };

  std::vector<std::string> bands;
  int y = 0;
  while (y < h) {
    if (!row_has_ink(y)) {
      ++y;
      continue;
    }
    int y0 = y;
    while (y < h && row_has_ink(y)) ++y;
    const int y1 = y - 1;
    const int band_h = y1 - y0 + 1;
    const int scale = static_cast<int>(
        std::llround(static_cast<double>(band_h) / kGlyphHeight));
    if (scale < 1) continue;

    int x0 = w, x1 = -1;
    for (int yy = y0; yy <= y1; ++yy)
      for (int xx = 0; xx < w; ++xx)
        if (at(xx, yy)) {
          x0 = std::min(x0, xx);
          x1 = std::max(x1, xx);
        }
    if (x1 < x0) continue;

    std::string text;
    const auto& rev = reverse_table();
    for (int k = 0; x0 + k * kAdvance * scale <= x1; ++k) {
      const int cx = x0 + k * kAdvance * scale;
      Pattern p = 0;
      for (int gr = 0; gr < kGlyphHeight; ++gr)
        for (int gc = 0; gc < kGlyphWidth; ++gc) {
          int count = 0;
          for (int dy = 0; dy < scale; ++dy)
            for (int dx = 0; dx < scale; ++dx) {
              const int px = cx + gc * scale + dx;
              const int py = y0 + gr * scale + dy;
              if (px >= 0 && py >= 0 && px < w && py < h && at(px, py)) ++count;
            }
          if (count * 2 >= scale * scale)
            p |= Pattern{1} << (gr * kGlyphWidth + gc);
        }
      if (p == 0) {
        text.push_back(' ');
      } else {
        auto it = rev.find(p);
        text.push_back(it != rev.end() ? it->second : '?');
      }
    }
    // Tidy cell artifacts: collapse space runs, trim the ends.
    std::string tidy;
    for (char c : text) {
      if (c == ' ' && (tidy.empty() || tidy.back() == ' ')) continue;
      tidy.push_back(c);
    }
    while (!tidy.empty() && tidy.back() == ' ') tidy.pop_back();
    if (!tidy.empty()) bands.push_back(std::move(tidy));
  }

  std::string out;
  for (std::size_t i = 0; i < bands.size(); ++i) {
    if (i) out.push_back(' ');
    out += bands[i];
  }
  return out;
}

}  // namespace pdfvex::bitmapfont
