#include "pdfvex/fixtures/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "bitmapfont.hpp"
#include "json.hpp"
#include "pdfvex/embed.hpp"
#include "pdfvex/fixtures/pdf_writer.hpp"

namespace pdfvex::fixtures {
namespace {

using ordered_json = nlohmann::ordered_json;

// ---- rasters --------------------------------------------------------------

// Procedural figure content; the variant picks the motif and, together with
// the corpus seed, shifts the palette so every figure hashes differently.
RasterImage figure_raster(int w, int h, int variant, std::uint32_t seed) {
  RasterImage img = RasterImage::filled(w, h, 245, 245, 245);
  const int shift = static_cast<int>((variant * 41u + seed * 13u) % 97u);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int r = 0, g = 0, b = 0;
      switch (variant % 6) {
        case 0:
          r = 40 + 180 * x / w;
          g = 90;
          b = 200 - 150 * x / w;
          break;
        case 1:
          r = 70;
          g = 40 + 180 * y / h;
          b = 60 + 120 * x / w;
          break;
        case 2: {
          const bool c = ((x / 14) + (y / 14)) % 2 != 0;
          r = c ? 220 : 60;
          g = c ? 120 : 80;
          b = c ? 60 : 170;
          break;
        }
        case 3: {
          const bool s = ((x + y) / 11) % 2 != 0;
          r = s ? 30 : 200;
          g = s ? 140 : 210;
          b = s ? 90 : 70;
          break;
        }
        case 4: {
          const int dx = x - w / 2, dy = y - h / 2;
          const int ring =
              static_cast<int>(std::sqrt(double(dx * dx + dy * dy)) / 9) % 2;
          r = ring ? 235 : 50;
          g = ring ? 190 : 90;
          b = ring ? 80 : 160;
          break;
        }
        default:
          r = (x * 7 + y * 3) % 256;
          g = (x * 2 + y * 5) % 256;
          b = (x + y * 2) % 256;
          break;
      }
      img.set_pixel(x, y, static_cast<std::uint8_t>((r + shift) % 256),
                    static_cast<std::uint8_t>(g),
                    static_cast<std::uint8_t>(b));
    }
  }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (x < 2 || y < 2 || x >= w - 2 || y >= h - 2)
        img.set_pixel(x, y, 30, 30, 30);
  return img;
}

RasterImage logo_raster() {
  const int n = 60;
  RasterImage img = RasterImage::filled(n, n, 255, 255, 255);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const bool ring = x < 6 || y < 6 || x >= n - 6 || y >= n - 6;
      const bool diag = std::abs(x - y) < 3 || std::abs(x + y - (n - 1)) < 3;
      if (ring)
        img.set_pixel(x, y, 20, 40, 120);
      else if (diag)
        img.set_pixel(x, y, 180, 30, 50);
    }
  return img;
}

RasterImage watermark_raster() {
  RasterImage img = RasterImage::filled(500, 600, 0, 0, 0, 0);
  const int scale = 4;
  const int tw = bitmapfont::text_width("CONFIDENTIAL", scale);
  const int th = bitmapfont::kGlyphHeight * scale;
  bitmapfont::draw_text(img, (500 - tw) / 2, (600 - th) / 2, scale,
                        "CONFIDENTIAL", 0, 0, 0, 102);
  return img;
}

// Soft blue disc on a transparent ground: translucent but free of any
// recognizable glyphs, so the transparency check fires without a keyword.
RasterImage blob_raster() {
  const int n = 140;
  RasterImage img = RasterImage::filled(n, n, 0, 0, 0, 0);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const int dx = x - n / 2, dy = y - n / 2;
      if (dx * dx + dy * dy <= 55 * 55)
        img.set_pixel(x, y, 80, 80, 160, 110);
    }
  return img;
}

RasterImage header_raster() {
  RasterImage img = RasterImage::filled(512, 60, 240, 240, 245);
  for (int y = 0; y < 60; ++y)
    for (int x = 0; x < 512; ++x) {
      if (y < 20)
        img.set_pixel(x, y, 50, 90, 160);
      else if (y >= 40)
        img.set_pixel(x, y, 180, 60, 70);
      if (x % 32 < 2) img.set_pixel(x, y, 25, 35, 60);
    }
  return img;
}

RasterImage tiny_raster() {
  RasterImage img = RasterImage::filled(24, 24, 255, 255, 255);
  for (int y = 0; y < 24; ++y)
    for (int x = 0; x < 24; ++x)
      if (((x / 6) + (y / 6)) % 2 == 0) img.set_pixel(x, y, 120, 40, 140);
  return img;
}

// ---- page text bookkeeping ------------------------------------------------

struct LineRec {
  double y, x;
  std::string text;
};

std::string join_reading_order(std::vector<LineRec> lines) {
  std::stable_sort(lines.begin(), lines.end(),
                   [](const LineRec& a, const LineRec& b) {
                     if (a.y != b.y) return a.y < b.y;
                     return a.x < b.x;
                   });
  // The normalized page text is a single whitespace-collapsed stream, so
  // the reference joins lines with plain spaces.
  std::string out;
  for (const LineRec& l : lines) {
    if (!out.empty()) out.push_back(' ');
    out += l.text;
  }
  return out;
}

/// Wraps a PageBuilder and records each drawn line so the reference page
/// text can be reassembled in reading order.
struct Scribe {
  PageBuilder* pb = nullptr;
  std::vector<LineRec> lines;

  BoundingBox put(double x, double y, std::string_view text, int font = 0,
                  double size = 11.0) {
    BoundingBox b = pb->text_line(x, y, text, font, size);
    lines.push_back(LineRec{b.y0, b.x0, std::string(text)});
    return b;
  }
  std::string text() const { return join_reading_order(lines); }
};

GroundTruthElement gt_element(ElementKind kind, const BoundingBox& bbox) {
  GroundTruthElement el;
  el.type = kind;
  el.bbox = bbox;
  return el;
}

GroundTruthElement gt_element(ElementKind kind, const BoundingBox& bbox,
                              const std::string& caption) {
  GroundTruthElement el = gt_element(kind, bbox);
  el.caption = caption;
  return el;
}

GroundTruthPage gt_page(int index, std::string text,
                        std::vector<GroundTruthElement> elements = {}) {
  GroundTruthPage p;
  p.index = index;
  p.text = std::move(text);
  p.elements = std::move(elements);
  return p;
}

CorpusDoc finish(const std::string& name, const PdfWriter& writer,
                 GroundTruth truth, std::vector<std::string> tags,
                 bool unambiguous, int pages) {
  CorpusDoc d;
  d.name = name;
  d.pdf = writer.bytes();
  d.truth = std::move(truth);
  d.tags = std::move(tags);
  d.layout_unambiguous = unambiguous;
  d.page_count = pages;
  return d;
}

// ---- documents ------------------------------------------------------------

// Ruled 4x3 grid drawn with stroke segments, title and a keyworded caption
// above the rule block.
CorpusDoc make_bordered_grid() {
  PdfWriter w;
  Scribe s{&w.add_page()};

  s.put(72, 60, "MATERIAL PROPERTIES OVERVIEW");
  const std::string caption = "Table 2: Tensile strength by alloy";
  s.put(140, 120, caption);

  const double top = 160, bottom = 250, left = 72, right = 584;
  for (double y : {160.0, 190.0, 220.0, 250.0})
    s.pb->stroke_line(left, y, right, y);
  for (double x : {72.0, 200.0, 328.0, 456.0, 584.0})
    s.pb->stroke_line(x, top, x, bottom);

  const char* cells[3][4] = {{"Alloy", "Yield", "Ultimate", "Rating"},
                             {"A356", "186", "262", "B"},
                             {"7075", "503", "572", "A"}};
  const double col_x[4] = {80, 208, 336, 464};
  const double row_y[3] = {168, 198, 228};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) s.put(col_x[c], row_y[r], cells[r][c]);

  GroundTruth truth;
  truth.pages.push_back(gt_page(
      0, s.text(),
      {gt_element(ElementKind::Table, BoundingBox{left, top, right, bottom},
                  caption)}));
  return finish("bordered_grid", w, std::move(truth),
                {"table", "bordered", "caption"}, true, 1);
}

// Three aligned columns and rows of plain text, no rules at all; the caption
// sits below the grid.
CorpusDoc make_unbordered_grid() {
  PdfWriter w;
  Scribe s{&w.add_page()};

  s.put(72, 80, "SALES SUMMARY");
  const char* cells[3][3] = {{"Region", "Units", "Share"},
                             {"North", "4820", "31"},
                             {"South", "6102", "44"}};
  const double col_x[3] = {90, 150, 210};
  const double row_y[3] = {200, 232, 264};
  BoundingBox region;
  bool first = true;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      BoundingBox b = s.put(col_x[c], row_y[r], cells[r][c]);
      region = first ? b : union_box(region, b);
      first = false;
    }
  const std::string caption = "Table 1: Regional distribution of unit sales";
  s.put(150, 300, caption);

  GroundTruth truth;
  truth.pages.push_back(
      gt_page(0, s.text(), {gt_element(ElementKind::Table, region, caption)}));
  return finish("unbordered_grid", w, std::move(truth),
                {"table", "unbordered", "caption"}, true, 1);
}

// Interactive fields: two text inputs and a checkbox, with printed labels.
CorpusDoc make_acroform_basic() {
  PdfWriter w;
  Scribe s{&w.add_page()};

  s.put(72, 60, "ENROLLMENT RECORD");
  const std::string caption = "Form 1: Enrollment request";
  s.put(140, 100, caption);
  s.put(120, 150, "Name");
  s.put(120, 200, "Email");
  s.put(120, 247, "Updates");

  const BoundingBox name_rect{200, 145, 420, 170};
  const BoundingBox email_rect{200, 195, 420, 220};
  const BoundingBox optin_rect{200, 245, 218, 263};
  s.pb->widget(WidgetKind::Text, "applicant.name", name_rect);
  s.pb->widget(WidgetKind::Text, "applicant.email", email_rect);
  s.pb->widget(WidgetKind::Checkbox, "updates.optin", optin_rect);
  const BoundingBox region =
      union_box(union_box(name_rect, email_rect), optin_rect);

  GroundTruth truth;
  truth.pages.push_back(
      gt_page(0, s.text(), {gt_element(ElementKind::Form, region, caption)}));
  return finish("acroform_basic", w, std::move(truth),
                {"form", "acroform", "caption"}, true, 1);
}

// No widgets: 36 short labels in two columns trip the layout profile. Rows
// repeat y only twice, so the alignment-based table branch stays quiet.
CorpusDoc make_label_grid_form() {
  PdfWriter w;
  Scribe s{&w.add_page()};

  s.put(72, 40, "INVENTORY CHECKLIST");
  const std::string caption = "Form 2: Warehouse inventory checklist";
  s.put(72, 64, caption);

  BoundingBox region;
  bool first = true;
  for (int r = 0; r < 18; ++r) {
    const double y = 100 + 36.0 * r;
    char left[4], right[4];
    std::snprintf(left, sizeof left, "Q%02d", r + 1);
    std::snprintf(right, sizeof right, "R%02d", r + 1);
    BoundingBox bl = s.put(80, y, left);
    BoundingBox br = s.put(320, y, right);
    region = first ? union_box(bl, br)
                   : union_box(region, union_box(bl, br));
    first = false;
  }

  GroundTruth truth;
  truth.pages.push_back(
      gt_page(0, s.text(), {gt_element(ElementKind::Form, region, caption)}));
  return finish("label_grid_form", w, std::move(truth),
                {"form", "layout", "caption"}, true, 1);
}

// One picture delivered as two overlapping slices; they must collapse into a
// single element covering the union.
CorpusDoc make_fragment_pair(std::uint32_t seed) {
  PdfWriter w;
  Scribe s{&w.add_page()};

  const BoundingBox left{100, 100, 260, 260};
  const BoundingBox right{150, 100, 310, 260};
  s.pb->image(figure_raster(160, 160, 0, seed), left);
  s.pb->image(figure_raster(160, 160, 1, seed), right);
  const BoundingBox merged = union_box(left, right);

  const std::string caption = "Figure 1: Coastal erosion measurements";
  s.put(100, 270, caption);
  s.put(72, 600, "Sediment transport rates vary by season.");

  GroundTruth truth;
  truth.pages.push_back(
      gt_page(0, s.text(), {gt_element(ElementKind::Image, merged, caption)}));
  return finish("fragment_pair", w, std::move(truth),
                {"image", "merge", "caption"}, true, 1);
}

// Three slices chained A-B-C where A and C never overlap directly; the
// component closure still produces one element.
CorpusDoc make_fragment_chain(std::uint32_t seed) {
  PdfWriter w;
  Scribe s{&w.add_page()};

  const BoundingBox a{100, 120, 220, 240};
  const BoundingBox b{160, 120, 280, 240};
  const BoundingBox c{220, 120, 340, 240};
  s.pb->image(figure_raster(120, 120, 2, seed), a);
  s.pb->image(figure_raster(120, 120, 3, seed), b);
  s.pb->image(figure_raster(120, 120, 4, seed), c);
  const BoundingBox merged = union_box(union_box(a, b), c);

  const std::string caption = "Figure 2: Migration corridors across seasons";
  s.put(100, 250, caption);
  s.put(72, 560, "Tagged individuals were tracked for two years.");

  GroundTruth truth;
  truth.pages.push_back(
      gt_page(0, s.text(), {gt_element(ElementKind::Image, merged, caption)}));
  return finish("fragment_chain", w, std::move(truth),
                {"image", "merge", "transitive", "caption"}, true, 1);
}

// Ten pages, each carrying the same translucent CONFIDENTIAL overlay; page 3
// also has a real figure that must survive filtering.
CorpusDoc make_watermark_tiled(std::uint32_t seed) {
  PdfWriter w;
  const RasterImage wm = watermark_raster();
  const char* section[10] = {"one", "two",   "three", "four", "five",
                             "six", "seven", "eight", "nine", "ten"};
  GroundTruth truth;
  const std::string caption = "Figure 3: Audit trail completeness";
  for (int i = 0; i < 10; ++i) {
    Scribe s{&w.add_page()};
    s.pb->image(wm, BoundingBox{56, 96, 556, 696});
    s.put(72, 340, std::string("Attestation section ") + section[i]);
    std::vector<GroundTruthElement> elements;
    if (i == 2) {
      const BoundingBox fig{206, 300, 406, 450};
      s.pb->image(figure_raster(200, 150, 5, seed), fig);
      s.put(206, 460, caption);
      elements.push_back(gt_element(ElementKind::Image, fig, caption));
    }
    truth.pages.push_back(gt_page(i, s.text(), std::move(elements)));
  }
  return finish("watermark_tiled", w, std::move(truth),
                {"image", "watermark", "filter", "caption"}, true, 10);
}

// The same corner mark on nine of ten pages — page furniture that must not
// survive — with genuine captioned figures on three of the pages.
CorpusDoc make_corner_logo(std::uint32_t seed) {
  PdfWriter w;
  const RasterImage logo = logo_raster();
  GroundTruth truth;

  struct Spec {
    BoundingBox fig;
    const char* caption;
    int variant;
  };
  // page index -> figure spec
  const Spec fig1{{200, 200, 400, 350}, "Figure 4: Beam deflection under load", 6};
  const Spec fig4{{200, 250, 400, 400}, "Figure 5: Thermal cycling results", 7};
  const Spec fig8{{180, 220, 420, 400}, "Figure 6: Fatigue crack growth rates", 8};
  const char* body[10] = {"Summary of structural test campaigns.",
                          nullptr,
                          "Specimens were conditioned for two weeks.",
                          "Strain gauges were re-zeroed daily.",
                          nullptr,
                          "Environmental chamber logs were archived.",
                          "Load frames were calibrated in March.",
                          "Crack lengths were measured optically.",
                          nullptr,
                          "Raw channel data is stored off-site."};
  for (int i = 0; i < 10; ++i) {
    Scribe s{&w.add_page()};
    if (i < 9) s.pb->image(logo, BoundingBox{16, 16, 76, 76});
    const Spec* spec = i == 1 ? &fig1 : i == 4 ? &fig4 : i == 8 ? &fig8 : nullptr;
    std::vector<GroundTruthElement> elements;
    if (spec) {
      s.pb->image(figure_raster(200, 150, spec->variant, seed), spec->fig);
      s.put(spec->fig.x0, spec->fig.y1 + 10, spec->caption);
      elements.push_back(
          gt_element(ElementKind::Image, spec->fig, spec->caption));
    } else {
      s.put(72, 340, body[i]);
    }
    truth.pages.push_back(gt_page(i, s.text(), std::move(elements)));
  }
  return finish("corner_logo", w, std::move(truth),
                {"image", "logo", "frequency", "filter", "caption"}, true, 10);
}

// A decorative mark far below the size floor next to a regular figure.
CorpusDoc make_small_decorations(std::uint32_t seed) {
  PdfWriter w;
  Scribe s{&w.add_page()};

  s.put(72, 60, "VEGETATION SURVEY");
  s.pb->image(tiny_raster(), BoundingBox{294, 60, 318, 84});
  const BoundingBox fig{160, 200, 420, 420};
  s.pb->image(figure_raster(260, 220, 9, seed), fig);
  const std::string caption =
      "Figure 7: Canopy density along the northern transect";
  s.put(160, 430, caption);
  s.put(72, 600, "Sampling followed the standard quadrat protocol.");

  GroundTruth truth;
  truth.pages.push_back(
      gt_page(0, s.text(), {gt_element(ElementKind::Image, fig, caption)}));
  return finish("small_decorations", w, std::move(truth),
                {"image", "size", "filter", "caption"}, true, 1);
}

// A translucent glyph-free disc: transparency fires, OCR finds no keyword,
// so the element drops for opacity rather than as a watermark.
CorpusDoc make_translucent_overlay(std::uint32_t seed) {
  PdfWriter w;
  Scribe s{&w.add_page()};

  const BoundingBox fig{150, 120, 400, 270};
  s.pb->image(figure_raster(250, 150, 10, seed), fig);
  const std::string caption = "Figure 8: Dissolved oxygen at depth";
  s.put(150, 280, caption);
  s.pb->image(blob_raster(), BoundingBox{236, 300, 376, 440});
  s.put(72, 520, "Hypoxic events increased in frequency.");

  GroundTruth truth;
  truth.pages.push_back(
      gt_page(0, s.text(), {gt_element(ElementKind::Image, fig, caption)}));
  return finish("translucent_overlay", w, std::move(truth),
                {"image", "transparency", "filter", "caption"}, true, 1);
}

// The same banner graphic on every page: page furniture by frequency. The
// page-3 figure keeps no scripted caption, exercising the unannotated path.
CorpusDoc make_repeated_header(std::uint32_t seed) {
  PdfWriter w;
  const RasterImage header = header_raster();
  const char* station[5] = {"alpha", "bravo", "delta", "echo", "kilo"};
  GroundTruth truth;
  for (int i = 0; i < 5; ++i) {
    Scribe s{&w.add_page()};
    s.pb->image(header, BoundingBox{50, 24, 562, 84});
    s.put(72, 300, std::string("River stage logs, station ") + station[i]);
    s.put(72, 324, "Values are provisional until review.");
    std::vector<GroundTruthElement> elements;
    if (i == 2) {
      const BoundingBox fig{180, 380, 420, 560};
      s.pb->image(figure_raster(240, 180, 11, seed), fig);
      elements.push_back(gt_element(ElementKind::Image, fig));
    }
    truth.pages.push_back(gt_page(i, s.text(), std::move(elements)));
  }
  return finish("repeated_header", w, std::move(truth),
                {"image", "frequency", "filter"}, false, 5);
}

// Two identical stacked figures with a caption wedged between them: both
// prefer the middle block, the upper one wins it, the lower one falls back.
CorpusDoc make_caption_conflict(std::uint32_t seed) {
  PdfWriter w;
  Scribe s{&w.add_page()};

  const RasterImage probe = figure_raster(150, 150, 12, seed);
  const BoundingBox fig_a{100, 100, 250, 250};
  const BoundingBox fig_b{100, 298, 250, 448};
  s.pb->image(probe, fig_a);
  s.pb->image(probe, fig_b);
  const std::string cap_a = "Figure 11: Probe calibration against reference";
  const std::string cap_b = "Figure 12: Probe drift across repeated trials";
  s.put(100, 258, cap_a);
  s.put(100, 488, cap_b);

  GroundTruth truth;
  truth.pages.push_back(
      gt_page(0, s.text(),
              {gt_element(ElementKind::Image, fig_a, cap_a),
               gt_element(ElementKind::Image, fig_b, cap_b)}));
  return finish("caption_conflict", w, std::move(truth),
                {"image", "caption", "conflict"}, true, 1);
}

// Ligature glyphs via a /Differences encoding, a hyphen split across lines,
// and a non-breaking space; the reference text is the cleaned form.
CorpusDoc make_typography() {
  PdfWriter w;
  FontSpec lig;
  lig.differences = {{193, "fi"}, {194, "fl"}};
  lig.diff_widths = {{193, 556}, {194, 556}};
  const int lig_font = w.add_font(lig);

  PageBuilder& pb = w.add_page();
  auto codes_of = [](std::string_view text) {
    std::vector<std::uint8_t> out;
    for (char c : text) out.push_back(static_cast<std::uint8_t>(c));
    return out;
  };
  std::vector<std::uint8_t> line1 = codes_of("Ef");
  line1.push_back(193);
  for (std::uint8_t c : codes_of("ciency re")) line1.push_back(c);
  line1.push_back(194);
  for (std::uint8_t c : codes_of("ects the design")) line1.push_back(c);
  pb.text_codes(72, 100, line1, lig_font);

  pb.text_line(72, 124, "The committee approved the inter-");
  pb.text_line(72, 136, "national standard without deliberation.");

  std::vector<std::uint8_t> line4 = codes_of("Result:");
  line4.push_back(0xA0);  // non-breaking space
  for (std::uint8_t c : codes_of("4.2")) line4.push_back(c);
  pb.text_codes(72, 172, line4);

  GroundTruth truth;
  truth.pages.push_back(gt_page(
      0,
      "Efficiency reflects the design "
      "The committee approved the international standard without "
      "deliberation. "
      "Result: 4.2"));
  return finish("typography", w, std::move(truth),
                {"text", "ligatures", "dehyphenation"}, false, 1);
}

CorpusDoc make_blank() {
  PdfWriter w;
  w.add_page();
  GroundTruth truth;
  truth.pages.push_back(gt_page(0, ""));
  return finish("blank", w, std::move(truth), {"degenerate", "blank"}, false,
                1);
}

// A ruled table and a figure sharing one page, each with its own caption.
CorpusDoc make_mixed_page(std::uint32_t seed) {
  PdfWriter w;
  Scribe s{&w.add_page()};

  const std::string table_cap = "Table 5: Emission ceilings by sector";
  s.put(150, 84, table_cap);
  const double top = 120, bottom = 216, left = 72, right = 432;
  for (double y : {120.0, 152.0, 184.0, 216.0})
    s.pb->stroke_line(left, y, right, y);
  for (double x : {72.0, 192.0, 312.0, 432.0})
    s.pb->stroke_line(x, top, x, bottom);
  const char* cells[3][3] = {{"Sector", "Cap", "Used"},
                             {"Power", "410", "388"},
                             {"Cement", "150", "114"}};
  const double col_x[3] = {80, 200, 320};
  const double row_y[3] = {126, 158, 190};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) s.put(col_x[c], row_y[r], cells[r][c]);

  const BoundingBox fig{150, 330, 430, 480};
  s.pb->image(figure_raster(280, 150, 13, seed), fig);
  const std::string fig_cap = "Figure 10: Continuous monitoring coverage";
  s.put(150, 490, fig_cap);

  GroundTruth truth;
  truth.pages.push_back(gt_page(
      0, s.text(),
      {gt_element(ElementKind::Table, BoundingBox{left, top, right, bottom},
                  table_cap),
       gt_element(ElementKind::Image, fig, fig_cap)}));
  return finish("mixed_page", w, std::move(truth),
                {"table", "image", "mixed", "caption"}, true, 1);
}

}  // namespace

Corpus build_corpus(std::uint32_t seed) {
  Corpus c;
  c.seed = seed;
  c.docs.push_back(make_bordered_grid());
  c.docs.push_back(make_unbordered_grid());
  c.docs.push_back(make_acroform_basic());
  c.docs.push_back(make_label_grid_form());
  c.docs.push_back(make_fragment_pair(seed));
  c.docs.push_back(make_fragment_chain(seed));
  c.docs.push_back(make_watermark_tiled(seed));
  c.docs.push_back(make_corner_logo(seed));
  c.docs.push_back(make_small_decorations(seed));
  c.docs.push_back(make_translucent_overlay(seed));
  c.docs.push_back(make_repeated_header(seed));
  c.docs.push_back(make_caption_conflict(seed));
  c.docs.push_back(make_typography());
  c.docs.push_back(make_blank());
  c.docs.push_back(make_mixed_page(seed));

  StubEmbeddingProvider embedder;
  c.logo_refs.push_back(
      LogoReference{"corner-logo", embedder.embed_image(logo_raster())});
  c.watermark_vocab = FilterParams{}.watermark_keywords;
  return c;
}

void write_corpus(const Corpus& corpus, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  ordered_json index;
  index["seed"] = corpus.seed;
  index["docs"] = ordered_json::array();
  for (const CorpusDoc& doc : corpus.docs) {
    const std::string pdf_name = doc.name + ".pdf";
    const std::string gt_name = doc.name + ".gt.json";
    const std::string meta_name = doc.name + ".meta.json";

    std::ofstream pdf_out((fs::path(dir) / pdf_name).string(),
                          std::ios::binary);
    if (!pdf_out)
      throw std::runtime_error("cannot write corpus file: " + pdf_name);
    pdf_out << doc.pdf;

    save_ground_truth((fs::path(dir) / gt_name).string(), doc.truth);

    ordered_json meta;
    meta["name"] = doc.name;
    meta["pages"] = doc.page_count;
    meta["tags"] = doc.tags;
    meta["layout_unambiguous"] = doc.layout_unambiguous;
    std::ofstream meta_out((fs::path(dir) / meta_name).string(),
                           std::ios::binary);
    if (!meta_out)
      throw std::runtime_error("cannot write corpus file: " + meta_name);
    meta_out << meta.dump(2) << "\n";

    ordered_json entry;
    entry["name"] = doc.name;
    entry["pdf"] = pdf_name;
    entry["ground_truth"] = gt_name;
    entry["meta"] = meta_name;
    entry["pages"] = doc.page_count;
    entry["tags"] = doc.tags;
    entry["layout_unambiguous"] = doc.layout_unambiguous;
    index["docs"].push_back(std::move(entry));
  }

  save_logo_references((fs::path(dir) / "logos.txt").string(),
                       corpus.logo_refs);
  std::ofstream vocab_out((fs::path(dir) / "watermark_vocab.txt").string(),
                          std::ios::binary);
  for (const std::string& kw : corpus.watermark_vocab) vocab_out << kw << "\n";

  index["logo_reference"] = "logos.txt";
  index["watermark_vocab"] = "watermark_vocab.txt";
  std::ofstream index_out((fs::path(dir) / "index.json").string(),
                          std::ios::binary);
  index_out << index.dump(2) << "\n";
}

}  // namespace pdfvex::fixtures
