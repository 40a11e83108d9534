#ifndef PDFVEX_PAGE_MODEL_HPP
#define PDFVEX_PAGE_MODEL_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdfvex/geometry.hpp"
#include "pdfvex/raster.hpp"

namespace pdfvex {

/// One extracted text line: bbox plus its text (no trailing newline).
struct LineSpan {
  BoundingBox bbox;
  std::string text;
};

/// A paragraph-level text block. `text` is the line texts joined with a
/// single '\n' per line break, which is what downstream dehyphenation needs.
struct TextBlock {
  BoundingBox bbox;
  std::string text;
  double font_size = 0.0;  // dominant size across lines, points
  bool bold = false;
  bool italic = false;
  std::vector<LineSpan> line_spans;
};

enum class DrawKind { Line, Rectangle, Curve, Other };

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct DrawingPrimitive {
  DrawKind kind = DrawKind::Other;
  BoundingBox bbox;
  std::vector<Point> endpoints;  // exactly 2 when kind == Line

  double length() const {
    if (endpoints.size() != 2) return 0.0;
    const double dx = endpoints[1].x - endpoints[0].x;
    const double dy = endpoints[1].y - endpoints[0].y;
    return std::sqrt(dx * dx + dy * dy);
  }
};

/// An embedded image occurrence on a page. Pixels decode lazily; the digest
/// is computed over the decoded pixel stream so recompressed duplicates on
/// other pages still hash identically.
struct ImageRegion {
  BoundingBox bbox;
  int pixel_width = 0;
  int pixel_height = 0;
  bool has_alpha = false;
  std::string content_digest;
  std::shared_ptr<const RasterImage> pixels;  // may be null if decode failed

  const RasterImage* raster() const { return pixels.get(); }
};

enum class FieldType { Text, Checkbox, Radio, Combo, Signature, Other };

struct FormWidget {
  std::string field_name;
  FieldType field_type = FieldType::Other;
  BoundingBox rect;
  bool anonymous = false;  // set when the widget carries no usable name
};

const char* field_type_name(FieldType t);

/// Immutable per-page primitive bundle. All coordinates are page points with
/// a top-left origin; child bboxes are clamped into [0,width]x[0,height] at
/// construction time by the backend.
struct PageModel {
  int page_index = 0;
  double width = 0.0;
  double height = 0.0;
  std::vector<ImageRegion> images;
  std::vector<TextBlock> blocks;
  std::vector<DrawingPrimitive> drawings;
  std::vector<FormWidget> widgets;
  std::vector<std::string> warnings;  // per-page degradations, never fatal

  BoundingBox page_box() const { return BoundingBox(0, 0, width, height); }
};

/// Intersects `b` with the page rectangle. Degenerate (zero-area) results
/// are permitted; a box fully outside collapses onto the nearest edge.
inline BoundingBox clamp_to_page(const BoundingBox& b, const PageModel& page) {
  const auto clampd = [](double v, double lo, double hi) {
    return v < lo ? lo : (v > hi ? hi : v);
  };
  return BoundingBox(clampd(b.x0, 0.0, page.width), clampd(b.y0, 0.0, page.height),
                     clampd(b.x1, 0.0, page.width), clampd(b.y1, 0.0, page.height));
}

using PagePtr = std::shared_ptr<const PageModel>;

}  // namespace pdfvex

#endif  // PDFVEX_PAGE_MODEL_HPP
