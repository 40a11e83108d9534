// Caption association: context-window geometry (including page boundaries),
// line clustering, layout cues, semantic scoring, fusion weighting and
// cross-element conflict resolution.
#include "doctest.h"

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "pdfvex/caption.hpp"
#include "pdfvex/embed.hpp"

using namespace pdfvex;

namespace {

struct PageSpec {
  int index = 0;
  double width = 612, height = 792;
};

std::shared_ptr<PageModel> make_page(PageSpec spec = {}) {
  auto p = std::make_shared<PageModel>();
  p->page_index = spec.index;
  p->width = spec.width;
  p->height = spec.height;
  return p;
}

void add_line(PageModel& page, double x, double y, const std::string& text,
              double width = 160, double height = 10, double font_size = 10,
              bool bold = false) {
  TextBlock b;
  b.bbox = BoundingBox(x, y, x + width, y + height);
  b.text = text;
  b.font_size = font_size;
  b.bold = bold;
  b.line_spans.push_back(LineSpan{b.bbox, text});
  page.blocks.push_back(std::move(b));
}

VisualElement image_at(int page, const BoundingBox& bbox,
                       std::shared_ptr<RasterImage> raster = nullptr) {
  VisualElement el;
  el.kind = ElementKind::Image;
  el.page_index = page;
  el.bbox = bbox;
  el.image.bbox = bbox;
  el.image.pixels = raster;
  return el;
}

/// Text scorer scripted by prefix: captions starting with "Bait" embed
/// parallel to every raster, everything else orthogonal.
struct ScriptedProvider : EmbeddingProvider {
  EmbeddingVector embed_text(const std::string& text) override {
    const bool bait = text.rfind("Bait", 0) == 0;
    return EmbeddingVector{{bait ? 1.0f : 0.0f, bait ? 0.0f : 1.0f}};
  }
  EmbeddingVector embed_image(const RasterImage&) override {
    return EmbeddingVector{{1.0f, 0.0f}};
  }
};

}  // namespace

TEST_CASE("the context window spans the element plus 1.5 heights both ways") {
  auto page = make_page();
  add_line(*page, 100, 130, "too far above");    // ends above y = 150
  add_line(*page, 100, 200, "above, inside");
  add_line(*page, 100, 320, "beside");
  add_line(*page, 100, 540, "below, touching");  // y0 == window floor
  add_line(*page, 100, 561, "too far below");
  std::vector<PagePtr> pages = {page};

  // Element height 100, so the window reaches 150 beyond both edges:
  // [150, 550].
  const VisualElement el = image_at(0, BoundingBox(100, 300, 300, 400));
  const auto lines = context_window(el, pages);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].text == "above, inside");
  CHECK(lines[1].text == "beside");
  CHECK(lines[2].text == "below, touching");
}

TEST_CASE("the window reaches into facing strips of adjacent pages") {
  auto prev = make_page({0});
  add_line(*prev, 100, 700, "previous page tail");  // within 150 of the bottom
  add_line(*prev, 100, 100, "previous page head");  // far from the boundary
  auto cur = make_page({1});
  auto next = make_page({2});
  add_line(*next, 100, 40, "next page head");
  add_line(*next, 100, 400, "next page middle");
  std::vector<PagePtr> pages = {prev, cur, next};

  const VisualElement el = image_at(1, BoundingBox(100, 300, 300, 400));
  const auto lines = context_window(el, pages);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].text == "previous page tail");
  CHECK(lines[1].text == "next page head");
}

TEST_CASE("window lines sort in reading order") {
  auto page = make_page();
  add_line(*page, 300, 320, "right");
  add_line(*page, 100, 320, "left");
  add_line(*page, 100, 250, "upper");
  std::vector<PagePtr> pages = {page};
  const auto lines =
      context_window(image_at(0, BoundingBox(100, 300, 300, 400)), pages);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].text == "upper");
  CHECK(lines[1].text == "left");
  CHECK(lines[2].text == "right");
}

TEST_CASE("clustering joins nearby lines and splits distant ones") {
  std::vector<PagePtr> pages = {make_page()};
  std::vector<CaptionLine> lines(3);
  lines[0] = {0, BoundingBox(100, 200, 260, 210), "Figure 1: first line", 10,
              false};
  lines[1] = {0, BoundingBox(100, 212, 240, 222), "continuation text", 10,
              false};  // dy = 1.2 units of 10: inside eps 1.5
  lines[2] = {0, BoundingBox(100, 300, 240, 310), "separate paragraph", 10,
              false};  // far below
  const auto cands = cluster_lines(lines, 1.5, 10.0, pages);
  REQUIRE(cands.size() == 2);
  CHECK(cands[0].block.text == "Figure 1: first line\ncontinuation text");
  CHECK(cands[0].lines.size() == 2);
  CHECK(cands[0].block.bbox == BoundingBox(100, 200, 260, 222));
  CHECK(cands[1].block.text == "separate paragraph");
}

TEST_CASE("clustering separates side-by-side columns") {
  std::vector<PagePtr> pages = {make_page()};
  std::vector<CaptionLine> lines(2);
  lines[0] = {0, BoundingBox(100, 200, 180, 210), "left label", 10, false};
  lines[1] = {0, BoundingBox(130, 200, 210, 210), "near label", 10, false};
  // dx = 3 units at norm 10: beyond eps 1.5 despite equal y.
  CHECK(cluster_lines(lines, 1.5, 10.0, pages).size() == 2);
  // With a larger radius they fuse.
  CHECK(cluster_lines(lines, 3.5, 10.0, pages).size() == 1);
}

TEST_CASE("layout cues: keyword, proximity, style and enumeration add up") {
  auto page = make_page();
  add_line(*page, 100, 210, "Figure 5: annotated caption");
  std::vector<PagePtr> pages = {page};
  const VisualElement el = image_at(0, BoundingBox(100, 100, 300, 200));

  auto cands = cluster_lines(context_window(el, pages, {}), 1.5, 10.0, pages);
  REQUIRE(cands.size() == 1);
  const double h = heuristic_score(cands[0], el, pages);

  CHECK(cands[0].features.keyword_hit);
  CHECK(cands[0].features.enumeration_hit);
  CHECK(cands[0].features.distance_pts == doctest::Approx(10.0));
  // keyword 0.4 + proximity 0.3*(1 - 10/150) + style 0.2*(0.5*10/12) +
  // enumeration 0.1, the style ratio coming from the page median font 10
  // against the 1.2x headroom.
  const double want = 0.4 + 0.3 * (1.0 - 10.0 / 150.0) +
                      0.2 * (0.5 * (10.0 / 12.0)) + 0.1;
  CHECK(h == doctest::Approx(want));
  CHECK(cands[0].layout_score == h);
}

TEST_CASE("keyword prefixes match case-insensitively, with optional dot") {
  auto page = make_page();
  add_line(*page, 100, 210, "FIG. 2 load curves");
  add_line(*page, 100, 240, "plain sentence without markers");
  std::vector<PagePtr> pages = {page};
  const VisualElement el = image_at(0, BoundingBox(100, 100, 300, 200));
  auto cands = cluster_lines(context_window(el, pages, {}), 1.5, 10.0, pages);
  REQUIRE(cands.size() == 2);
  heuristic_score(cands[0], el, pages);
  heuristic_score(cands[1], el, pages);
  CHECK(cands[0].features.keyword_hit);
  CHECK(cands[0].features.enumeration_hit);
  CHECK_FALSE(cands[1].features.keyword_hit);
  CHECK_FALSE(cands[1].features.enumeration_hit);
  CHECK(cands[0].layout_score > cands[1].layout_score);
}

TEST_CASE("enumeration needs a digit after the keyword") {
  auto page = make_page();
  add_line(*page, 100, 210, "Table of important constants");
  std::vector<PagePtr> pages = {page};
  const VisualElement el = image_at(0, BoundingBox(100, 100, 300, 200));
  auto cands = cluster_lines(context_window(el, pages, {}), 1.5, 10.0, pages);
  REQUIRE(cands.size() == 1);
  heuristic_score(cands[0], el, pages);
  CHECK(cands[0].features.keyword_hit);  // "Table" prefix still hits
  CHECK_FALSE(cands[0].features.enumeration_hit);
}

TEST_CASE("bold outsized text raises the style cue") {
  auto page = make_page();
  add_line(*page, 100, 210, "Figure 1: bold caption", 160, 10, 14, true);
  add_line(*page, 100, 240, "Figure 1: bold caption", 160, 10, 9, false);
  add_line(*page, 100, 500, "body", 160, 10, 9, false);
  add_line(*page, 100, 520, "body", 160, 10, 9, false);
  std::vector<PagePtr> pages = {page};
  const VisualElement el = image_at(0, BoundingBox(100, 100, 300, 200));
  auto cands = cluster_lines(context_window(el, pages, {}), 1.5, 10.0, pages);
  REQUIRE(cands.size() >= 2);
  heuristic_score(cands[0], el, pages);
  heuristic_score(cands[1], el, pages);
  CHECK(cands[0].features.style_score > cands[1].features.style_score);
}

TEST_CASE("semantic score is neutral without provider or raster") {
  CaptionCandidate cand;
  cand.block.text = "anything";
  const VisualElement hollow = image_at(0, BoundingBox(0, 0, 100, 100));
  CHECK(semantic_score(cand, hollow, nullptr) == 0.5);
  StubEmbeddingProvider provider;
  CHECK(semantic_score(cand, hollow, &provider) == 0.5);
}

TEST_CASE("semantic score equals the mapped embedding cosine") {
  auto raster =
      std::make_shared<RasterImage>(RasterImage::filled(12, 12, 40, 90, 200));
  const VisualElement el = image_at(0, BoundingBox(0, 0, 100, 100), raster);
  CaptionCandidate cand;
  cand.block.text = "Figure 2: some caption";
  StubEmbeddingProvider provider;
  const double want =
      (cosine(provider.embed_text(cand.block.text),
              provider.embed_image(*raster)) +
       1.0) /
      2.0;
  CHECK(semantic_score(cand, el, &provider) == doctest::Approx(want));
}

TEST_CASE("a failing provider degrades the semantic score to neutral") {
  struct Broken : EmbeddingProvider {
    EmbeddingVector embed_text(const std::string&) override {
      throw EmbeddingUnavailable("down");
    }
    EmbeddingVector embed_image(const RasterImage&) override {
      throw EmbeddingUnavailable("down");
    }
  } broken;
  auto raster =
      std::make_shared<RasterImage>(RasterImage::filled(4, 4, 1, 2, 3));
  const VisualElement el = image_at(0, BoundingBox(0, 0, 100, 100), raster);
  CaptionCandidate cand;
  cand.block.text = "caption";
  std::vector<std::string> warnings;
  CHECK(semantic_score(cand, el, &broken, &warnings) == 0.5);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("degraded") != std::string::npos);
}

TEST_CASE("association fuses scores with the configured weight") {
  auto page = make_page();
  add_line(*page, 100, 210, "Figure 3: the only candidate");
  std::vector<PagePtr> pages = {page};
  auto raster =
      std::make_shared<RasterImage>(RasterImage::filled(8, 8, 10, 20, 30));
  std::vector<VisualElement> elements = {
      image_at(0, BoundingBox(100, 100, 300, 200), raster)};

  StubEmbeddingProvider provider;
  const auto matches = associate_captions(elements, pages, &provider);
  REQUIRE(matches.size() == 1);
  const CaptionCandidate& c = matches[0].candidate;
  CHECK(c.fused_score ==
        doctest::Approx(0.45 * c.layout_score + 0.55 * c.semantic_score));
  CHECK(matches[0].text == "Figure 3: the only candidate");
}

TEST_CASE("a candidate dominating both scores wins at every fusion weight") {
  auto page = make_page();
  add_line(*page, 100, 210, "Figure 7: dominant caption");
  add_line(*page, 100, 380, "unrelated body paragraph");
  std::vector<PagePtr> pages = {page};
  std::vector<VisualElement> elements = {
      image_at(0, BoundingBox(100, 100, 300, 200))};  // no raster: S = 0.5

  for (double alpha : {0.0, 0.25, 0.45, 0.75, 1.0}) {
    CaptionParams params;
    params.fusion_alpha = alpha;
    const auto matches = associate_captions(elements, pages, nullptr, params);
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].text == "Figure 7: dominant caption");
  }
}

TEST_CASE("semantic bait can beat layout, and a pure-layout weight undoes it") {
  auto page = make_page();
  add_line(*page, 100, 210, "Figure 4: true annotated caption");
  // Close enough that perfect semantics can make up the layout deficit at
  // the default mixing weight, far enough that pure layout cannot.
  add_line(*page, 100, 240, "Bait paragraph mentioning nothing");
  std::vector<PagePtr> pages = {page};
  auto raster =
      std::make_shared<RasterImage>(RasterImage::filled(8, 8, 5, 5, 5));
  std::vector<VisualElement> elements = {
      image_at(0, BoundingBox(100, 100, 300, 200), raster)};

  ScriptedProvider scripted;
  const auto fused = associate_captions(elements, pages, &scripted);
  REQUIRE(fused.size() == 1);
  CHECK(fused[0].text == "Bait paragraph mentioning nothing");

  CaptionParams layout_only;
  layout_only.fusion_alpha = 1.0;
  const auto layout =
      associate_captions(elements, pages, &scripted, layout_only);
  REQUIRE(layout.size() == 1);
  CHECK(layout[0].text == "Figure 4: true annotated caption");
}

TEST_CASE("conflicting elements split the captions by proximity") {
  auto page = make_page();
  // Two stacked figures; the middle block is both elements' first choice.
  add_line(*page, 100, 258, "Figure 11: upper measurement series");
  add_line(*page, 100, 478, "Figure 12: lower measurement series");
  std::vector<PagePtr> pages = {page};
  std::vector<VisualElement> elements = {
      image_at(0, BoundingBox(100, 100, 250, 250)),
      image_at(0, BoundingBox(100, 298, 250, 448)),
  };
  const auto matches = associate_captions(elements, pages, nullptr);
  REQUIRE(matches.size() == 2);
  CHECK(matches[0].element_index == 0);
  CHECK(matches[0].text == "Figure 11: upper measurement series");
  CHECK(matches[1].element_index == 1);
  CHECK(matches[1].text == "Figure 12: lower measurement series");
}

TEST_CASE("elements with an empty window stay uncaptioned") {
  auto page = make_page();
  std::vector<PagePtr> pages = {page};
  std::vector<VisualElement> elements = {
      image_at(0, BoundingBox(100, 100, 300, 200))};
  CHECK(associate_captions(elements, pages, nullptr).empty());
}

TEST_CASE("caption text is normalized on the way out") {
  auto page = make_page();
  TextBlock b;
  b.bbox = BoundingBox(100, 210, 260, 234);
  b.text = "Figure 9: over-\nlapping protocols";
  b.font_size = 10;
  b.line_spans.push_back(
      LineSpan{BoundingBox(100, 210, 260, 220), "Figure 9: over-"});
  b.line_spans.push_back(
      LineSpan{BoundingBox(100, 224, 260, 234), "lapping protocols"});
  page->blocks.push_back(b);
  std::vector<PagePtr> pages = {page};
  std::vector<VisualElement> elements = {
      image_at(0, BoundingBox(100, 100, 300, 200))};
  const auto matches = associate_captions(elements, pages, nullptr);
  REQUIRE(matches.size() == 1);
  CHECK(matches[0].text == "Figure 9: overlapping protocols");
}
