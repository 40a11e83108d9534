// Table and form page classification: border-count and alignment branches,
// threshold strictness, region clustering, widget handling, and the
// label-grid profile.
#include "doctest.h"

#include <memory>
#include <string>
#include <vector>

#include "pdfvex/fixtures/pdf_writer.hpp"
#include "pdfvex/forms.hpp"
#include "pdfvex/pdf/backend.hpp"
#include "pdfvex/tables.hpp"

using namespace pdfvex;
using fixtures::PdfWriter;
using fixtures::WidgetKind;

namespace {

TextBlock block_at(double x, double y, const std::string& text,
                   double w = 40, double h = 10) {
  TextBlock b;
  b.bbox = BoundingBox(x, y, x + w, y + h);
  b.text = text;
  b.font_size = 10;
  b.line_spans.push_back(LineSpan{b.bbox, text});
  return b;
}

DrawingPrimitive hline(double x0, double y, double x1) {
  DrawingPrimitive d;
  d.kind = DrawKind::Line;
  d.bbox = BoundingBox(x0, y, x1, y);
  d.endpoints = {{x0, y}, {x1, y}};
  return d;
}

PageModel page_of(std::vector<TextBlock> blocks,
                  std::vector<DrawingPrimitive> drawings = {},
                  std::vector<FormWidget> widgets = {}) {
  PageModel p;
  p.width = 612;
  p.height = 792;
  p.blocks = std::move(blocks);
  p.drawings = std::move(drawings);
  p.widgets = std::move(widgets);
  return p;
}

FormWidget widget(const std::string& name, FieldType type,
                  const BoundingBox& rect) {
  FormWidget w;
  w.field_name = name;
  w.field_type = type;
  w.rect = rect;
  return w;
}

}  // namespace

TEST_CASE("five long lines declare a bordered table, four do not") {
  std::vector<DrawingPrimitive> lines;
  for (int i = 0; i < 4; ++i) lines.push_back(hline(72, 100 + 30.0 * i, 400));
  PageModel four = page_of({}, lines);
  CHECK_FALSE(detect_table(four).present);
  CHECK(detect_table(four).evidence.line_count == 4);

  lines.push_back(hline(72, 220, 400));
  PageModel five = page_of({}, lines);
  const TableDetection det = detect_table(five);
  CHECK(det.present);
  CHECK(det.kind == TableKind::Bordered);
  REQUIRE(det.regions.size() == 1);
  CHECK(det.regions[0] == BoundingBox(72, 100, 400, 220));
}

TEST_CASE("short strokes do not count as border evidence") {
  // Seven strokes, but five of them are 6 pt underline stubs (below the
  // 8 pt noise guard); only two real lines remain.
  std::vector<DrawingPrimitive> lines;
  for (int i = 0; i < 5; ++i) lines.push_back(hline(72, 300 + 12.0 * i, 78));
  lines.push_back(hline(72, 100, 400));
  lines.push_back(hline(72, 140, 400));
  const TableDetection det = detect_table(page_of({}, lines));
  CHECK(det.evidence.line_count == 2);
  CHECK_FALSE(det.present);
}

TEST_CASE("rectangles and curves are not border lines") {
  std::vector<DrawingPrimitive> shapes(6);
  for (auto& d : shapes) {
    d.kind = DrawKind::Rectangle;
    d.bbox = BoundingBox(72, 100, 400, 300);
  }
  CHECK_FALSE(detect_table(page_of({}, shapes)).present);
}

TEST_CASE("a three-by-three grid of blocks is an unbordered table") {
  std::vector<TextBlock> blocks;
  for (double y : {200.0, 232.0, 264.0})
    for (double x : {90.0, 150.0, 210.0})
      blocks.push_back(block_at(x, y, "cell"));
  const TableDetection det = detect_table(page_of(blocks));
  CHECK(det.present);
  CHECK(det.kind == TableKind::Unbordered);
  CHECK(det.evidence.x_alignments == 3);
  CHECK(det.evidence.y_alignments == 3);
  REQUIRE(det.regions.size() == 1);
  CHECK(det.regions[0] == BoundingBox(90, 200, 250, 274));
}

TEST_CASE("column alignment alone is not enough") {
  // Two columns repeated over three rows spaced far apart: the x values
  // qualify (multiplicity 3) but every y occurs twice, below multiplicity 3.
  std::vector<TextBlock> blocks;
  for (double y : {100.0, 300.0, 500.0})
    for (double x : {90.0, 260.0}) blocks.push_back(block_at(x, y, "v"));
  const TableDetection det = detect_table(page_of(blocks));
  CHECK(det.evidence.x_alignments == 2);
  CHECK(det.evidence.y_alignments == 0);
  CHECK_FALSE(det.present);
}

TEST_CASE("one qualifying column and row each misses the minimum of two") {
  std::vector<TextBlock> blocks;
  for (double y : {100.0, 130.0, 160.0}) blocks.push_back(block_at(90, y, "a"));
  for (double x : {150.0, 210.0}) blocks.push_back(block_at(x, 100, "b"));
  const TableDetection det = detect_table(page_of(blocks));
  CHECK(det.evidence.x_alignments == 1);
  CHECK(det.evidence.y_alignments == 1);
  CHECK_FALSE(det.present);
}

TEST_CASE("near-integer corners round onto one alignment") {
  std::vector<TextBlock> blocks = {
      block_at(99.6, 100, "a"), block_at(100.4, 140, "b"),
      block_at(100.0, 180, "c"),  // all three round to x = 100
      block_at(200.0, 100, "d"), block_at(200.2, 140, "e"),
      block_at(199.8, 180, "f"),  // all three round to x = 200
  };
  // y values: 100 twice + 140 twice + 180 twice -> no qualifying rows, so
  // only the alignment counts are interesting here.
  const auto [xa, ya] = count_alignments(blocks);
  CHECK(xa == 2);
  CHECK(ya == 0);
}

TEST_CASE("blank blocks are ignored for alignments") {
  std::vector<TextBlock> blocks;
  for (double y : {100.0, 130.0, 160.0}) {
    blocks.push_back(block_at(90, y, "  "));  // whitespace only
    blocks.push_back(block_at(90, y, ""));
  }
  const auto [xa, ya] = count_alignments(blocks);
  CHECK(xa == 0);
  CHECK(ya == 0);
}

TEST_CASE("border evidence outranks a coexisting aligned grid") {
  std::vector<TextBlock> blocks;
  for (double y : {200.0, 232.0, 264.0})
    for (double x : {90.0, 150.0, 210.0}) blocks.push_back(block_at(x, y, "c"));
  std::vector<DrawingPrimitive> lines;
  for (int i = 0; i < 5; ++i) lines.push_back(hline(72, 190 + 25.0 * i, 400));
  const TableDetection det = detect_table(page_of(blocks, lines));
  CHECK(det.present);
  CHECK(det.kind == TableKind::Bordered);
}

TEST_CASE("distant line groups split into separate regions") {
  std::vector<DrawingPrimitive> lines;
  for (int i = 0; i < 3; ++i) lines.push_back(hline(72, 100 + 20.0 * i, 300));
  for (int i = 0; i < 3; ++i) lines.push_back(hline(72, 500 + 20.0 * i, 300));
  const TableDetection det = detect_table(page_of({}, lines));
  REQUIRE(det.regions.size() == 2);
  CHECK(det.regions[0] == BoundingBox(72, 100, 300, 140));
  CHECK(det.regions[1] == BoundingBox(72, 500, 300, 540));

  // The same groups within the split gap stay one region.
  std::vector<DrawingPrimitive> close;
  for (int i = 0; i < 3; ++i) close.push_back(hline(72, 100 + 20.0 * i, 300));
  for (int i = 0; i < 3; ++i) close.push_back(hline(72, 176 + 20.0 * i, 300));
  CHECK(detect_table(page_of({}, close)).regions.size() == 1);
}

TEST_CASE("table detection works through the document reader") {
  PdfWriter w;
  auto& pg = w.add_page();
  for (double y : {160.0, 190.0, 220.0, 250.0}) pg.stroke_line(72, y, 584, y);
  for (double x : {72.0, 200.0, 328.0, 456.0, 584.0})
    pg.stroke_line(x, 160, x, 250);
  auto pages = load_document(w.bytes());
  const TableDetection det = detect_table(*pages[0]);
  CHECK(det.present);
  CHECK(det.kind == TableKind::Bordered);
  CHECK(det.evidence.line_count == 9);
  REQUIRE(det.regions.size() == 1);
  CHECK(det.regions[0].contains(BoundingBox(72, 160, 584, 250), 1e-4));
}

// ---- forms ---------------------------------------------------------------

TEST_CASE("interactive widgets make a form page with a union region") {
  PageModel page = page_of(
      {}, {},
      {widget("name", FieldType::Text, BoundingBox(200, 145, 420, 170)),
       widget("optin", FieldType::Checkbox, BoundingBox(200, 245, 218, 263))});
  const FormDetection det = detect_form(page);
  CHECK(det.is_form_page);
  REQUIRE(det.strategy.size() == 1);
  CHECK(det.strategy[0] == FormStrategy::AcroForm);
  CHECK(det.fields.size() == 2);
  REQUIRE(det.region.has_value());
  CHECK(*det.region == BoundingBox(200, 145, 420, 263));
}

TEST_CASE("the short-block threshold is strictly more-than") {
  auto make_short_blocks = [](int n) {
    std::vector<TextBlock> blocks;
    for (int i = 0; i < n; ++i)
      blocks.push_back(block_at(80 + 40.0 * (i % 8), 100 + 40.0 * (i / 8),
                                "Q" + std::to_string(i % 10)));
    return blocks;
  };
  PageModel at = page_of(make_short_blocks(30));
  auto [fired_at, count_at] = detect_form_layout(at);
  CHECK(count_at == 30);
  CHECK_FALSE(fired_at);
  CHECK_FALSE(detect_form(at).is_form_page);

  PageModel above = page_of(make_short_blocks(31));
  auto [fired_above, count_above] = detect_form_layout(above);
  CHECK(count_above == 31);
  CHECK(fired_above);
  const FormDetection det = detect_form(above);
  CHECK(det.is_form_page);
  REQUIRE(det.strategy.size() == 1);
  CHECK(det.strategy[0] == FormStrategy::Layout);
  CHECK(det.region.has_value());
}

TEST_CASE("a block is short only below five trimmed code points") {
  std::vector<TextBlock> blocks = {
      block_at(80, 100, "abcd"),      // 4 -> short
      block_at(80, 140, "abcde"),     // 5 -> not short
      block_at(80, 180, "  ab  "),    // trims to 2 -> short
      block_at(80, 220, "café"), // 4 code points -> short
      block_at(80, 260, ""),          // empty trims short
  };
  auto [fired, count] = detect_form_layout(page_of(blocks));
  CHECK(count == 4);
  CHECK_FALSE(fired);
}

TEST_CASE("long prose paragraphs never profile as a form") {
  std::vector<TextBlock> blocks;
  for (int i = 0; i < 40; ++i)
    blocks.push_back(block_at(72, 80 + 17.0 * i,
                              "This sentence clearly exceeds the limit."));
  CHECK_FALSE(detect_form(page_of(blocks)).is_form_page);
}

TEST_CASE("drawing evidence corroborates but never declares") {
  std::vector<DrawingPrimitive> shapes;
  for (int i = 0; i < 12; ++i) {
    DrawingPrimitive d;
    d.kind = DrawKind::Rectangle;
    d.bbox = BoundingBox(200, 100 + 30.0 * i, 400, 120 + 30.0 * i);
    shapes.push_back(d);
  }
  // Rectangles alone: no form.
  PageModel bare = page_of({}, shapes);
  const FormDetection none = detect_form(bare);
  CHECK_FALSE(none.is_form_page);
  CHECK(none.drawing_evidence.rect_count == 12);
  CHECK(none.strategy.empty());

  // The same rectangles on a widget page are recorded as a strategy.
  PageModel both = page_of(
      {}, shapes,
      {widget("f", FieldType::Text, BoundingBox(200, 100, 400, 120))});
  const FormDetection det = detect_form(both);
  REQUIRE(det.strategy.size() == 2);
  CHECK(det.strategy[0] == FormStrategy::AcroForm);
  CHECK(det.strategy[1] == FormStrategy::Drawings);
}

TEST_CASE("widget region wins over the label-grid region") {
  std::vector<TextBlock> blocks;
  for (int i = 0; i < 31; ++i)
    blocks.push_back(block_at(80, 100 + 20.0 * i, "Q1"));
  PageModel page = page_of(
      blocks, {},
      {widget("only", FieldType::Text, BoundingBox(300, 100, 500, 130))});
  const FormDetection det = detect_form(page);
  REQUIRE(det.region.has_value());
  CHECK(*det.region == BoundingBox(300, 100, 500, 130));
}

TEST_CASE("acroform widgets come back through the reader in page order") {
  PdfWriter w;
  auto& pg = w.add_page();
  pg.widget(WidgetKind::Text, "first", BoundingBox(100, 100, 300, 125));
  pg.widget(WidgetKind::Checkbox, "second", BoundingBox(100, 150, 118, 168));
  auto pages = load_document(w.bytes());
  const auto fields = detect_acroform(*pages[0]);
  REQUIRE(fields.size() == 2);
  CHECK(fields[0].field_name == "first");
  CHECK(fields[1].field_name == "second");
  const FormDetection det = detect_form(*pages[0]);
  CHECK(det.is_form_page);
  REQUIRE(det.region.has_value());
  CHECK(det.region->contains(BoundingBox(100, 100, 300, 168), 1e-4));
}
