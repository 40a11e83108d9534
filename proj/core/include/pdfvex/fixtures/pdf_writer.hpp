#ifndef PDFVEX_FIXTURES_PDF_WRITER_HPP
#define PDFVEX_FIXTURES_PDF_WRITER_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pdfvex/geometry.hpp"
#include "pdfvex/raster.hpp"

namespace pdfvex::fixtures {

/// Simple-font declaration for the writer. `base` must be a standard base
/// font the reader knows (the Helvetica family or Courier). `differences`
/// assigns glyph names to byte codes (emitted as /Encoding /Differences) and
/// `diff_widths` gives their advances in 1/1000 em, emitted via /Widths so
/// consumers never need external glyph metrics.
struct FontSpec {
  std::string base = "Helvetica";
  std::map<int, std::string> differences;
  std::map<int, int> diff_widths;
};

enum class WidgetKind { Text, Checkbox, Radio, Combo, Signature, Pushbutton };

class PdfWriter;

/// Builds one page. All geometry is top-left-origin page points; conversion
/// to PDF coordinates happens at serialization.
class PageBuilder {
 public:
  /// Places one line of text with the glyph-box top at `y_top`. Returns the
  /// tight glyph bounding box (the same box the reader reconstructs).
  /// `font` is an id from PdfWriter::add_font; id 0 is plain Helvetica.
  BoundingBox text_line(double x, double y_top, std::string_view text,
                        int font = 0, double size = 11.0);

  /// Same, but emits explicit byte codes (for custom-encoded glyphs).
  BoundingBox text_codes(double x, double y_top,
                         const std::vector<std::uint8_t>& codes, int font = 0,
                         double size = 11.0);

  void stroke_line(double x0, double y0, double x1, double y1,
                   double line_width = 1.0);
  void stroke_rect(const BoundingBox& box, double line_width = 1.0);
  void fill_rect(const BoundingBox& box, double r, double g, double b);

  /// Draws `pixels` scaled into `placement`. Alpha is carried via a soft
  /// mask when present.
  void image(const RasterImage& pixels, const BoundingBox& placement);

  /// Adds an interactive form field anchored at `rect`. An empty `name`
  /// produces a field without a partial name.
  void widget(WidgetKind kind, const std::string& name,
              const BoundingBox& rect);

  double width() const { return width_; }
  double height() const { return height_; }

 private:
  friend class PdfWriter;
  PageBuilder(PdfWriter* owner, double w, double h)
      : owner_(owner), width_(w), height_(h) {}

  struct ImageData {
    int pixel_width = 0;
    int pixel_height = 0;
    std::vector<std::uint8_t> rgb;
    std::vector<std::uint8_t> alpha;  // empty when opaque
  };
  struct WidgetData {
    WidgetKind kind;
    std::string name;
    BoundingBox rect;
  };

  PdfWriter* owner_;
  double width_, height_;
  std::string content_;
  std::vector<ImageData> images_;
  std::vector<WidgetData> widgets_;
};

/// Deterministic single-pass PDF builder: classic cross-reference table,
/// Flate-compressed content and image streams, WinAnsi simple fonts.
class PdfWriter {
 public:
  PdfWriter();
  PdfWriter(const PdfWriter&) = delete;
  PdfWriter& operator=(const PdfWriter&) = delete;

  /// Registers a font; returns its id for PageBuilder text calls.
  int add_font(const FontSpec& spec);

  PageBuilder& add_page(double width = 612, double height = 792);

  /// Advance width of ASCII `text` at `size`, matching reader metrics.
  double measure(std::string_view text, int font = 0,
                 double size = 11.0) const;

  /// Serializes the whole document.
  std::string bytes() const;
  void write_file(const std::string& path) const;

 private:
  friend class PageBuilder;
  int glyph_width_1000(int font, int code) const;

  std::vector<FontSpec> fonts_;
  std::vector<std::unique_ptr<PageBuilder>> pages_;
};

}  // namespace pdfvex::fixtures

#endif  // PDFVEX_FIXTURES_PDF_WRITER_HPP
