#ifndef PDFVEX_CAPTION_HPP
#define PDFVEX_CAPTION_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "pdfvex/element.hpp"
#include "pdfvex/embed.hpp"

namespace pdfvex {

struct CaptionParams {
  /// Context window height as a multiple of the element height, above and
  /// below; also reaches into the facing strips of adjacent pages.
  double window_scale = 1.5;
  /// Fusion weight: F = alpha * layout + (1 - alpha) * semantic.
  double fusion_alpha = 0.45;
  /// Clustering radius in units of the page median line height.
  double cluster_eps = 1.5;
  /// Layout cue weights (keyword, proximity, style, enumeration).
  double keyword_weight = 0.4;
  double proximity_weight = 0.3;
  double style_weight = 0.2;
  double enumeration_weight = 0.1;
  std::vector<std::string> keywords = {"Figure", "Fig.",    "Table",
                                       "Chart",  "Diagram", "Form"};
};

/// A text line in an element's context window, carrying its parent block's
/// style.
struct CaptionLine {
  int page_index = 0;
  BoundingBox bbox;
  std::string text;
  double font_size = 0;
  bool bold = false;
};

/// Lines vertically within window_scale element-heights of the element on
/// its own page, plus the facing strip of the previous and next pages.
std::vector<CaptionLine> context_window(const VisualElement& el,
                                        const std::vector<PagePtr>& pages,
                                        const CaptionParams& params = {});

struct CaptionCandidate {
  TextBlock block;     // clustered lines: text joined in reading order
  int page_index = 0;  // page of the cluster's first line
  double layout_score = 0;    // H
  double semantic_score = 0;  // S
  double fused_score = 0;     // F
  struct Features {
    bool keyword_hit = false;
    double distance_pts = 0;
    double style_score = 0;
    bool enumeration_hit = false;
  } features;
  std::vector<CaptionLine> lines;  // cluster members, reading order
};

/// Groups window lines into candidate blocks: connected components of the
/// graph joining lines whose anchor points (x0, y_center) lie within eps
/// when distances are measured in units of norm_height (pages stack
/// vertically for cross-page geometry).
std::vector<CaptionCandidate> cluster_lines(
    const std::vector<CaptionLine>& lines, double eps, double norm_height,
    const std::vector<PagePtr>& pages);

/// Layout score of a candidate for an element; fills candidate.features.
/// Cues: keyword prefix, vertical proximity, bold/size style, enumeration
/// pattern like "Fig. 2".
double heuristic_score(CaptionCandidate& cand, const VisualElement& el,
                       const std::vector<PagePtr>& pages,
                       const CaptionParams& params = {});

/// (cosine(text embedding, element raster embedding) + 1) / 2; neutral 0.5
/// when no provider, no raster, or the provider fails.
double semantic_score(const CaptionCandidate& cand, const VisualElement& el,
                      EmbeddingProvider* provider,
                      std::vector<std::string>* warnings = nullptr);

struct CaptionMatch {
  std::size_t element_index = 0;
  CaptionCandidate candidate;
  std::string text;  // normalized caption text
};

/// Full association: window -> cluster -> score -> argmax fused score per
/// element, with cross-element conflict resolution (one candidate block
/// captions at most one element; losers fall back to their next-best).
std::vector<CaptionMatch> associate_captions(
    const std::vector<VisualElement>& elements,
    const std::vector<PagePtr>& pages, EmbeddingProvider* provider,
    const CaptionParams& params = {},
    std::vector<std::string>* warnings = nullptr);

}  // namespace pdfvex

#endif  // PDFVEX_CAPTION_HPP
