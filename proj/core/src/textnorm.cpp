#include "pdfvex/textnorm.hpp"

#include <cstdint>
#include <vector>

namespace pdfvex {

namespace {

struct Decoded {
  char32_t cp = 0;
  int length = 1;   // bytes consumed
  bool valid = true;
};

Decoded decode_utf8(const std::string& s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1, true};
  auto cont = [&](std::size_t k) {
    return i + k < s.size() &&
           (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
  };
  auto cbits = [&](std::size_t k) {
    return static_cast<char32_t>(static_cast<unsigned char>(s[i + k]) & 0x3F);
  };
  if ((b0 & 0xE0) == 0xC0 && cont(1))
    return {static_cast<char32_t>((b0 & 0x1F) << 6) | cbits(1), 2, true};
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2))
    return {static_cast<char32_t>((b0 & 0x0F) << 12) | cbits(1) << 6 | cbits(2),
            3, true};
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3))
    return {static_cast<char32_t>((b0 & 0x07) << 18) | cbits(1) << 12 |
                cbits(2) << 6 | cbits(3),
            4, true};
  return {b0, 1, false};
}

void encode_utf8(std::string& out, char32_t cp) {
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

const char* ligature_expansion(char32_t cp) {
  switch (cp) {
    case 0xFB00: return "ff";
    case 0xFB01: return "fi";
    case 0xFB02: return "fl";
    case 0xFB03: return "ffi";
    case 0xFB04: return "ffl";
    case 0xFB05: return "st";  // long-s t
    case 0xFB06: return "st";
    default: return nullptr;
  }
}

bool is_lowercase_start(char32_t cp) {
  if (cp >= 'a' && cp <= 'z') return true;
  // Latin-1 lowercase range (ß..ÿ), excluding the division sign.
  return cp >= 0xDF && cp <= 0xFF && cp != 0xF7;
}

}  // namespace

std::string normalize_text(const std::string& raw) {
  // Pass 1: ligatures and space characters, CR folded into LF.
  std::string flat;
  flat.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size();) {
    const Decoded d = decode_utf8(raw, i);
    if (!d.valid) {
      flat.push_back(raw[i]);
      i += 1;
      continue;
    }
    i += static_cast<std::size_t>(d.length);
    if (const char* lig = ligature_expansion(d.cp)) {
      flat += lig;
    } else if (d.cp == 0x00A0 || d.cp == 0x2007 || d.cp == 0x202F) {
      flat.push_back(' ');
    } else if (d.cp == 0x200B || d.cp == 0xFEFF) {
      // zero-width: drop
    } else if (d.cp == '\r') {
      if (i < raw.size() && raw[i] == '\n') continue;  // CRLF -> one LF
      flat.push_back('\n');
    } else {
      encode_utf8(flat, d.cp);
    }
  }

  // Pass 2: line joins. A hyphen ending a line glues to a lowercase
  // continuation; every other newline widens to a space.
  std::string joined;
  joined.reserve(flat.size());
  for (std::size_t i = 0; i < flat.size();) {
    if (flat[i] != '\n') {
      const Decoded d = decode_utf8(flat, i);
      joined.append(flat, i, static_cast<std::size_t>(d.length));
      i += static_cast<std::size_t>(d.length);
      continue;
    }
    std::size_t next = i + 1;
    if (!joined.empty() && joined.back() == '-' && next < flat.size()) {
      const Decoded d = decode_utf8(flat, next);
      if (d.valid && is_lowercase_start(d.cp)) {
        joined.pop_back();  // drop the hyphen, join the word halves
        i = next;
        continue;
      }
    }
    joined.push_back(' ');
    i = next;
  }

  // Pass 3: collapse space runs.
  std::string out;
  out.reserve(joined.size());
  for (char c : joined) {
    if (c == ' ' && !out.empty() && out.back() == ' ') continue;
    out.push_back(c);
  }
  return out;
}

}  // namespace pdfvex
