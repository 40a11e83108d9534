#ifndef PDFVEX_METRICS_HPP
#define PDFVEX_METRICS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdfvex/element.hpp"
#include "pdfvex/embed.hpp"

namespace pdfvex {

struct GroundTruthElement {
  ElementKind type = ElementKind::Image;
  BoundingBox bbox;
  std::optional<std::string> caption;
};

struct GroundTruthPage {
  int index = 0;
  std::string text;  // normalized reference text
  std::vector<GroundTruthElement> elements;
};

struct GroundTruth {
  std::vector<GroundTruthPage> pages;
};

GroundTruth load_ground_truth(const std::string& path);
void save_ground_truth(const std::string& path, const GroundTruth& gt);

/// 1 - distance / max(len_a, len_b) over code points; 1.0 when both empty.
double levenshtein_similarity(const std::string& a, const std::string& b);

/// A detection or reference box for matching purposes.
struct EvalBox {
  ElementKind type = ElementKind::Image;
  int page_index = 0;
  BoundingBox bbox;
};

/// One-to-one greedy matching on descending overlap among same-type,
/// same-page pairs with IoU >= min_iou. Returns (detected index, gt index)
/// pairs.
std::vector<std::pair<std::size_t, std::size_t>> match_elements(
    const std::vector<EvalBox>& detected, const std::vector<EvalBox>& gt,
    double min_iou);

/// Matched / ground-truth count; empty ground truth has no defined value.
std::optional<double> compute_bba(const std::vector<EvalBox>& detected,
                                  const std::vector<EvalBox>& gt,
                                  double min_iou);

/// Matched / detected count; empty detection set has no defined value.
std::optional<double> compute_dc(const std::vector<EvalBox>& detected,
                                 const std::vector<EvalBox>& gt,
                                 double min_iou);

/// Cosine of the two caption embeddings mapped to [0,1] via (c+1)/2.
/// Raises EmbeddingUnavailable when the provider fails.
double caption_similarity(const std::string& predicted,
                          const std::string& reference,
                          EmbeddingProvider& provider);

/// Full evaluation input: one detected element row per manifest element.
struct EvalElement {
  ElementKind type = ElementKind::Image;
  int page_index = 0;
  BoundingBox bbox;
  bool keep = true;
  std::optional<std::string> caption;
};

struct EvalInput {
  std::vector<std::string> page_texts;  // normalized, by page order
  std::vector<EvalElement> elements;
};

struct CategoryCounts {
  int detected = 0;  // kept detections
  int gt = 0;
  int matched = 0;
};

struct EvalReport {
  std::optional<double> text_similarity;
  std::optional<double> caption_similarity;
  std::optional<double> bba_table, bba_image, bba_form;
  std::optional<double> dc_overall, dc_table, dc_image, dc_form;
  CategoryCounts counts_image, counts_table, counts_form;
  std::vector<std::string> warnings;
};

/// Computes every report field. Only keep=true detections participate.
/// Document text compares as the concatenation of page texts. Caption
/// similarity averages over matched pairs whose ground truth has a caption;
/// a missing predicted caption scores 0 for its pair. A null provider omits
/// caption similarity with a warning.
EvalReport evaluate(const EvalInput& input, const GroundTruth& gt,
                    EmbeddingProvider* provider, double min_iou = 0.8);

std::string report_to_json(const EvalReport& report);
void save_report(const std::string& path, const EvalReport& report);

}  // namespace pdfvex

#endif  // PDFVEX_METRICS_HPP
