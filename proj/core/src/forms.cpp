#include "pdfvex/forms.hpp"

#include <algorithm>

namespace pdfvex {

namespace {

/// Code-point count of the whitespace-trimmed text.
int trimmed_length(const std::string& text) {
  std::size_t begin = 0, end = text.size();
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (begin < end && is_space(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && is_space(static_cast<unsigned char>(text[end - 1]))) --end;
  int count = 0;
  for (std::size_t i = begin; i < end; ++i)
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) ++count;
  return count;
}

}  // namespace

std::vector<FormWidget> detect_acroform(const PageModel& page) {
  return page.widgets;
}

std::pair<bool, int> detect_form_layout(const PageModel& page,
                                        const FormParams& params) {
  int short_blocks = 0;
  for (const TextBlock& b : page.blocks)
    if (trimmed_length(b.text) < params.short_text_max) ++short_blocks;
  return {short_blocks > params.short_block_min, short_blocks};
}

std::pair<int, int> form_drawing_evidence(const PageModel& page) {
  int rects = 0, lines = 0;
  for (const DrawingPrimitive& d : page.drawings) {
    if (d.kind == DrawKind::Rectangle) ++rects;
    if (d.kind == DrawKind::Line) ++lines;
  }
  return {rects, lines};
}

FormDetection detect_form(const PageModel& page, const FormParams& params) {
  FormDetection out;
  out.fields = detect_acroform(page);
  auto [layout_fired, short_count] = detect_form_layout(page, params);
  out.short_block_count = short_count;
  auto [rects, lines] = form_drawing_evidence(page);
  out.drawing_evidence.rect_count = rects;
  out.drawing_evidence.line_count = lines;

  if (!out.fields.empty()) out.strategy.push_back(FormStrategy::AcroForm);
  if (layout_fired) out.strategy.push_back(FormStrategy::Layout);
  out.is_form_page = !out.strategy.empty();
  // Drawn field borders corroborate a page already declared a form.
  if (out.is_form_page && rects > 0)
    out.strategy.push_back(FormStrategy::Drawings);

  if (!out.fields.empty()) {
    BoundingBox region = out.fields.front().rect;
    for (const FormWidget& w : out.fields) region = union_box(region, w.rect);
    out.region = region;
  } else if (layout_fired) {
    std::optional<BoundingBox> region;
    for (const TextBlock& b : page.blocks) {
      if (trimmed_length(b.text) >= params.short_text_max) continue;
      region = region ? union_box(*region, b.bbox) : b.bbox;
    }
    out.region = region;
  }
  return out;
}

const char* form_strategy_name(FormStrategy s) {
  switch (s) {
    case FormStrategy::AcroForm: return "acroform";
    case FormStrategy::Layout: return "layout";
    case FormStrategy::Drawings: return "drawings";
  }
  return "unknown";
}

}  // namespace pdfvex
