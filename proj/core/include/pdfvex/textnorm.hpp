#ifndef PDFVEX_TEXTNORM_HPP
#define PDFVEX_TEXTNORM_HPP

#include <string>

namespace pdfvex {

/// Cleans extracted text for downstream comparison:
///   1. typographic ligatures (U+FB00..U+FB06) expand to ASCII letters;
///   2. non-breaking/figure/narrow spaces become plain spaces, zero-width
///      characters vanish;
///   3. a line break after a trailing hyphen joins the split word (hyphen
///      dropped) when the next line starts lowercase; other line breaks
///      become spaces;
///   4. space runs collapse to one space.
/// Idempotent; invalid UTF-8 bytes pass through untouched.
std::string normalize_text(const std::string& raw);

}  // namespace pdfvex

#endif  // PDFVEX_TEXTNORM_HPP
