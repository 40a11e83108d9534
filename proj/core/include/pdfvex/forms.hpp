#ifndef PDFVEX_FORMS_HPP
#define PDFVEX_FORMS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "pdfvex/page_model.hpp"

namespace pdfvex {

struct FormParams {
  /// A page is a layout-detected form when it has more than this many short
  /// blocks.
  int short_block_min = 30;
  /// A block is "short" when its trimmed text has fewer than this many
  /// characters (code points).
  int short_text_max = 5;
};

enum class FormStrategy { AcroForm, Layout, Drawings };

struct FormDetection {
  bool is_form_page = false;
  std::vector<FormStrategy> strategy;  // sorted, unique
  std::vector<FormWidget> fields;
  std::optional<BoundingBox> region;
  int short_block_count = 0;
  struct DrawingEvidence {
    int rect_count = 0;
    int line_count = 0;
  } drawing_evidence;
};

/// Interactive form widgets exposed by the page, in page order.
std::vector<FormWidget> detect_acroform(const PageModel& page);

/// Label-grid profile: (is_form, short_block_count).
std::pair<bool, int> detect_form_layout(const PageModel& page,
                                        const FormParams& params = {});

/// (rectangle_count, line_count) of page drawings. Advisory evidence only;
/// it corroborates a form page but never declares one on its own.
std::pair<int, int> form_drawing_evidence(const PageModel& page);

/// Union of the strategies: widgets present or layout profile fired.
FormDetection detect_form(const PageModel& page, const FormParams& params = {});

const char* form_strategy_name(FormStrategy s);

}  // namespace pdfvex

#endif  // PDFVEX_FORMS_HPP
