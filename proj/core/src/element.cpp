#include "pdfvex/element.hpp"

namespace pdfvex {

const char* element_kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::Image: return "image";
    case ElementKind::Table: return "table";
    case ElementKind::Form: return "form";
  }
  return "image";
}

const char* filter_reason_name(FilterReason reason) {
  switch (reason) {
    case FilterReason::TooSmall: return "too_small";
    case FilterReason::Logo: return "logo";
    case FilterReason::Frequent: return "frequent";
    case FilterReason::SemiTransparent: return "semi_transparent";
    case FilterReason::Watermark: return "watermark";
  }
  return "unknown";
}

}  // namespace pdfvex
