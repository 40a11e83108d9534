#include "pdf/fonts.hpp"

#include <unordered_map>

namespace pdfvex::pdf {

namespace {

// Standard Type1 AFM widths for codes 32..126.
constexpr std::array<std::uint16_t, 95> kHelvetica = {
    278, 278, 355, 556, 556, 889, 667, 191, 333, 333, 389, 584, 278, 333,
    278, 278, 556, 556, 556, 556, 556, 556, 556, 556, 556, 556, 278, 278,
    584, 584, 584, 556, 1015, 667, 667, 722, 722, 667, 611, 778, 722, 278,
    500, 667, 556, 833, 722, 778, 667, 778, 722, 667, 611, 722, 667, 944,
    667, 667, 611, 278, 278, 278, 469, 556, 333, 556, 556, 500, 556, 556,
    278, 556, 556, 222, 222, 500, 222, 833, 556, 556, 556, 556, 333, 500,
    278, 556, 500, 722, 500, 500, 500, 334, 260, 334, 584};

constexpr std::array<std::uint16_t, 95> kHelveticaBold = {
    278, 333, 474, 556, 556, 889, 722, 238, 333, 333, 389, 584, 278, 333,
    278, 278, 556, 556, 556, 556, 556, 556, 556, 556, 556, 556, 333, 333,
    584, 584, 584, 611, 975, 722, 722, 722, 722, 667, 611, 778, 722, 278,
    556, 722, 611, 833, 722, 778, 667, 778, 722, 667, 611, 722, 667, 944,
    667, 667, 611, 333, 278, 333, 584, 556, 333, 556, 611, 556, 611, 556,
    333, 611, 611, 278, 278, 556, 278, 889, 611, 611, 611, 611, 389, 556,
    333, 611, 556, 778, 556, 556, 500, 389, 280, 389, 584};

std::array<std::uint16_t, 95> courier_widths() {
  std::array<std::uint16_t, 95> w{};
  w.fill(600);
  return w;
}

const BuiltinFont kFonts[] = {
    {"Helvetica", kHelvetica, 718, -207, false, false},
    {"Helvetica-Bold", kHelveticaBold, 718, -207, true, false},
    {"Helvetica-Oblique", kHelvetica, 718, -207, false, true},
    {"Helvetica-BoldOblique", kHelveticaBold, 718, -207, true, true},
    {"Courier", courier_widths(), 629, -157, false, false},
    {"Courier-Bold", courier_widths(), 629, -157, true, false},
};

std::string_view strip_subset_tag(std::string_view name) {
  // Subset fonts look like "ABCDEF+Helvetica".
  if (name.size() > 7 && name[6] == '+') {
    bool tag = true;
    for (int i = 0; i < 6; ++i)
      if (name[i] < 'A' || name[i] > 'Z') tag = false;
    if (tag) return name.substr(7);
  }
  return name;
}

}  // namespace

const BuiltinFont* find_builtin_font(std::string_view base_font) {
  const std::string_view name = strip_subset_tag(base_font);
  for (const auto& f : kFonts)
    if (f.base_name == name) return &f;
  // Arial aliases map onto Helvetica metrics.
  if (name == "Arial") return &kFonts[0];
  if (name == "Arial-Bold" || name == "Arial,Bold") return &kFonts[1];
  return nullptr;
}

int builtin_width(const BuiltinFont& font, int code) {
  if (code < 32 || code > 126) return 0;
  return font.widths[static_cast<std::size_t>(code - 32)];
}

std::optional<char32_t> glyph_name_to_unicode(std::string_view name) {
  static const std::unordered_map<std::string_view, char32_t> kNamed = {
      {"space", U' '},        {"exclam", U'!'},     {"quotedbl", U'"'},
      {"numbersign", U'#'},   {"dollar", U'$'},     {"percent", U'%'},
      {"ampersand", U'&'},    {"quotesingle", U'\''}, {"parenleft", U'('},
      {"parenright", U')'},   {"hyphen", U'-'},     {"period", U'.'},
      {"slash", U'/'},        {"colon", U':'},      {"comma", U','},
      {"ff", U'ﬀ'},      {"fi", U'ﬁ'},    {"fl", U'ﬂ'},
      {"ffi", U'ﬃ'},     {"ffl", U'ﬄ'},   {"longst", U'ﬅ'},
      {"st", U'ﬆ'},      {"nbspace", U' '},
  };
  auto it = kNamed.find(name);
  if (it != kNamed.end()) return it->second;

  // uniXXXX / uXXXX[XX] hexadecimal convention.
  auto parse_hex = [](std::string_view hex) -> std::optional<char32_t> {
    if (hex.empty() || hex.size() > 6) return std::nullopt;
    char32_t v = 0;
    for (char c : hex) {
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else return std::nullopt;
      v = v * 16 + static_cast<char32_t>(d);
    }
    return v;
  };
  if (name.size() >= 7 && name.substr(0, 3) == "uni")
    return parse_hex(name.substr(3));
  if (name.size() >= 2 && name[0] == 'u' && name.size() <= 7 &&
      name.find_first_not_of("0123456789abcdefABCDEF", 1) ==
          std::string_view::npos)
    return parse_hex(name.substr(1));

  if (name.size() == 1) {
    const char c = name[0];
    if (c >= 0x20 && c <= 0x7E) return static_cast<char32_t>(c);
  }
  return std::nullopt;
}

char32_t winansi_to_unicode(std::uint8_t code) {
  // CP1252 high range; 0x80..0x9F differ from Latin-1.
  static const char32_t k80[32] = {
      0x20AC, 0x0081, 0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021,
      0x02C6, 0x2030, 0x0160, 0x2039, 0x0152, 0x008D, 0x017D, 0x008F,
      0x0090, 0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
      0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0x009D, 0x017E, 0x0178};
  if (code < 0x80) return code;
  if (code < 0xA0) return k80[code - 0x80];
  return code;  // Latin-1 identity, includes 0xA0 NBSP
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace pdfvex::pdf
