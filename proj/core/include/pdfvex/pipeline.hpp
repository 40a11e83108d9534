#ifndef PDFVEX_PIPELINE_HPP
#define PDFVEX_PIPELINE_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdfvex/caption.hpp"
#include "pdfvex/element.hpp"
#include "pdfvex/filter.hpp"
#include "pdfvex/forms.hpp"
#include "pdfvex/merge.hpp"
#include "pdfvex/metrics.hpp"
#include "pdfvex/tables.hpp"

namespace pdfvex {

/// Whole-pipeline configuration. Defaults are the tuned operating point;
/// serialization round-trips every field.
struct PipelineConfig {
  TableParams tables;
  FormParams forms;
  MergeParams merge;
  FilterParams filter;
  CaptionParams caption;

  /// IoU floor for counting a detection as matching a reference box.
  double match_iou = 0.8;

  /// "stub" (in-process deterministic) or "remote" (HTTP services).
  std::string provider = "stub";
  std::string embed_endpoint;  // remote only; env PDFVEX_EMBED_URL overrides
  std::string ocr_endpoint;    // remote only; env PDFVEX_OCR_URL overrides
  int provider_timeout_ms = 5000;
  int provider_max_inflight = 4;

  std::string logo_reference_path;  // optional (id + embedding rows)
  std::string keyword_vocab_path;   // optional, replaces built-in keywords

  int jobs = 0;  // page-level parallelism; 0 = hardware concurrency

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;

  std::string to_json() const;
  static PipelineConfig from_json(const std::string& text);
  static PipelineConfig load(const std::string& path);
  void save(const std::string& path) const;
};

struct ManifestPage {
  int page_index = 0;
  double width = 0, height = 0;
  std::string normalized_text;
  TableDetection table;
  FormDetection form;
  std::vector<std::string> warnings;
};

struct ElementCaption {
  std::string element_id;
  std::string text;  // normalized
  double layout_score = 0, semantic_score = 0, fused_score = 0;
  int page_index = 0;
  BoundingBox bbox;
};

struct DocumentManifest {
  int schema_version = 1;
  std::string source_digest;  // content hash of the input bytes
  std::vector<ManifestPage> pages;
  std::vector<VisualElement> elements;
  std::vector<ElementCaption> captions;
  std::vector<std::string> warnings;
};

/// Borrowed provider views used by the pipeline stages. Null members mean
/// the matching stage degrades per its own contract.
struct PipelineProviders {
  EmbeddingProvider* embedder = nullptr;
  OcrProvider* ocr = nullptr;
  std::vector<LogoReference> logo_refs;
};

/// Owning bundle constructed from config (provider selection, endpoints,
/// logo references, keyword vocabulary).
struct OwnedProviders {
  std::unique_ptr<EmbeddingProvider> embedder;
  std::unique_ptr<OcrProvider> ocr;
  std::vector<LogoReference> logo_refs;
  PipelineProviders view();
};

/// Builds providers per config: stub pair by default, remote clients when
/// provider == "remote" (endpoints from config, overridable through
/// PDFVEX_EMBED_URL / PDFVEX_OCR_URL). Loads logo references when
/// logo_reference_path is set. The keyword vocabulary file is applied by
/// run_pipeline itself.
OwnedProviders make_providers(const PipelineConfig& cfg);

/// Full run: page primitives, per-page table/form/image-merge detection,
/// document-wide filtering, caption association, text normalization.
/// Degrades page-locally on malformed content; throws only when the
/// document itself cannot be opened.
DocumentManifest run_pipeline(std::span<const std::uint8_t> pdf_bytes,
                              const PipelineConfig& cfg,
                              const PipelineProviders& providers);
DocumentManifest run_pipeline_file(const std::string& path,
                                   const PipelineConfig& cfg,
                                   const PipelineProviders& providers);

std::string manifest_to_json(const DocumentManifest& manifest);
/// Rebuilds the structured manifest from JSON. Rasters are not serialized,
/// so image payload pointers come back null.
DocumentManifest manifest_from_json(const std::string& text);
DocumentManifest load_manifest(const std::string& path);
void save_manifest(const std::string& path, const DocumentManifest& manifest);

/// Flattens a manifest into evaluation rows (kept/filtered flags, captions).
EvalInput manifest_to_eval_input(const DocumentManifest& manifest);

/// Writes kept image rasters as <dir>/<element_id>.png. Returns the file
/// names written.
std::vector<std::string> write_element_rasters(const DocumentManifest& manifest,
                                               const std::string& dir);

}  // namespace pdfvex

#endif  // PDFVEX_PIPELINE_HPP
