#ifndef PDFVEX_ELEMENT_HPP
#define PDFVEX_ELEMENT_HPP

#include <string>
#include <vector>

#include "pdfvex/forms.hpp"
#include "pdfvex/page_model.hpp"
#include "pdfvex/tables.hpp"

namespace pdfvex {

enum class ElementKind { Image, Table, Form };

enum class FilterReason { TooSmall, Logo, Frequent, SemiTransparent, Watermark };

struct FilterVerdict {
  bool keep = true;
  std::vector<FilterReason> reasons;  // sorted, unique; keep ⇔ empty
};

/// One extracted visual element — the unit that flows through filtering,
/// caption association and the output manifest.
struct VisualElement {
  std::string id;  // unique per document, assigned by the pipeline
  ElementKind kind = ElementKind::Image;
  int page_index = 0;
  BoundingBox bbox;

  // Image payload (kind == Image). `image.pixels` may be null when the
  // source stream could not be decoded; `merged_parts` records pre-merge
  // fragments (present only when a merge actually happened).
  ImageRegion image;
  std::vector<ImageRegion> merged_parts;

  // Table payload.
  TableKind table_kind = TableKind::None;

  // Form payload.
  std::vector<FormStrategy> form_strategies;
  std::vector<FormWidget> form_fields;

  FilterVerdict verdict;
  std::vector<std::string> notes;  // provider warnings etc.
};

const char* element_kind_name(ElementKind kind);
const char* filter_reason_name(FilterReason reason);

}  // namespace pdfvex

#endif  // PDFVEX_ELEMENT_HPP
