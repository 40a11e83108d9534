#ifndef PDFVEX_SRC_PDF_CONTENT_HPP
#define PDFVEX_SRC_PDF_CONTENT_HPP

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "pdf/document.hpp"
#include "pdfvex/raster.hpp"

namespace pdfvex::pdf {

/// PDF transform matrix [a b 0; c d 0; e f 1], row-vector convention.
struct Mat {
  double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;

  static Mat translate(double tx, double ty) { return {1, 0, 0, 1, tx, ty}; }
  static Mat scale(double sx, double sy) { return {sx, 0, 0, sy, 0, 0}; }

  /// "this, then m".
  Mat mul(const Mat& m) const {
    return {a * m.a + b * m.c,         a * m.b + b * m.d,
            c * m.a + d * m.c,         c * m.b + d * m.d,
            e * m.a + f * m.c + m.e,   e * m.b + f * m.d + m.f};
  }

  void apply(double x, double y, double& ox, double& oy) const {
    ox = a * x + c * y + e;
    oy = b * x + d * y + f;
  }
};

/// One shown string, in device space (PDF convention, y up).
struct TextRunOut {
  std::string utf8;
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // ink box incl. ascent/descent
  double baseline_y = 0;
  double size = 0;  // effective device-space font size
  bool bold = false;
  bool italic = false;
};

struct DrawOut {
  enum class Kind { Line, Rect, Curve } kind = Kind::Line;
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // device-space bbox
  double ax = 0, ay = 0, bx = 0, by = 0;  // line endpoints when kind==Line
};

struct ImageOut {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // device-space placement
  int pixel_width = 0;
  int pixel_height = 0;
  bool has_alpha = false;
  std::shared_ptr<const RasterImage> raster;  // null if decode failed
  std::string raw_digest_input;  // raw stream bytes when decode failed
};

struct ContentResult {
  std::vector<TextRunOut> runs;
  std::vector<DrawOut> drawings;
  std::vector<ImageOut> images;
  std::vector<std::string> warnings;
};

/// Executes a page content stream. `resources` is the page /Resources dict
/// (already resolved). Operator errors degrade into warnings, never throw.
ContentResult run_content(const Document& doc, const Dict& resources,
                          std::span<const std::uint8_t> content);

/// Decodes an image XObject to RGBA8 (DeviceRGB/DeviceGray, 8 bpc, optional
/// /SMask). Returns null on unsupported formats and explains why.
std::shared_ptr<RasterImage> decode_image_xobject(const Document& doc,
                                                  const Stream& s,
                                                  std::string* why_not);

}  // namespace pdfvex::pdf

#endif  // PDFVEX_SRC_PDF_CONTENT_HPP
