#ifndef PDFVEX_FILTER_HPP
#define PDFVEX_FILTER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pdfvex/element.hpp"
#include "pdfvex/embed.hpp"

namespace pdfvex {

struct FilterParams {
  /// An element is too small when either side falls below this percentage of
  /// the matching page side, or both sides fall below size_min_abs points.
  double size_min_page_frac_pct = 5.0;
  double size_min_abs = 50.0;
  /// Same-content images on more than this percentage of pages are page
  /// furniture (multi-page documents only).
  double frequency_page_pct = 80.0;
  /// Mean opacity below this marks an image semi-transparent.
  double opacity_threshold = 0.8;
  /// Corner-zone images whose embedding matches a reference at least this
  /// closely are logos.
  double logo_similarity_threshold = 0.75;
  /// Each corner zone spans this fraction of the page width and height.
  double logo_corner_frac = 0.15;
  /// Connected components outside [min_px, max_frac * image_area] are noise
  /// and drop out before OCR.
  int watermark_cc_min_px = 25;
  double watermark_cc_max_frac = 0.9;
  std::vector<std::string> watermark_keywords = {
      "Confidential",       "Do Not Copy", "Sample",     "Draft",
      "Internal Use Only",  "Restricted",  "Top Secret",
  };
};

struct LogoReference {
  std::string id;
  EmbeddingVector embedding;  // unit length
};

/// True when the element is below the size floor (strict comparisons).
bool filter_by_size(const VisualElement& el, const PageModel& page,
                    const FilterParams& params);

/// True when the box center lies in one of the four corner zones
/// (inclusive edges).
bool in_logo_zone(const BoundingBox& bbox, const PageModel& page,
                  const FilterParams& params);

/// Embeds the element raster and compares against every reference; flags on
/// max similarity >= threshold. Provider failure keeps the element
/// (fail-open) and appends a warning.
bool detect_logo(const VisualElement& el,
                 const std::vector<LogoReference>& refs,
                 EmbeddingProvider& provider, double similarity_threshold,
                 std::vector<std::string>* warnings = nullptr);

/// Per-element frequent flags: an image content digest seen on strictly more
/// than page_pct percent of document pages (only when the document has at
/// least two pages).
std::vector<bool> mark_frequent(const std::vector<VisualElement>& elements,
                                int page_count, double page_pct);

/// True when the image carries an alpha plane with some transparency and a
/// mean opacity below the threshold.
bool detect_semi_transparent(const ImageRegion& img, double opacity_threshold,
                             std::vector<std::string>* warnings = nullptr);

struct WatermarkScan {
  bool watermark = false;     // transparency + keyword confirmed
  bool transparent = false;   // transparency gate fired
  bool inconclusive = false;  // transparency fired but OCR was unavailable
  std::string extracted_text;
};

/// Transparency gate, adaptive threshold (Otsu fallback), size-filtered
/// connected components, OCR over the surviving ink, keyword search.
/// A null provider yields the transparency-only verdict.
WatermarkScan detect_watermark(const ImageRegion& img, OcrProvider* ocr,
                               const FilterParams& params,
                               std::vector<std::string>* warnings = nullptr);

/// Binary ink mask from a grayscale image: local-mean threshold, falling
/// back to a global bimodal split when the local pass degenerates.
std::vector<std::uint8_t> threshold_ink_mask(
    const std::vector<std::uint8_t>& gray, int w, int h);

/// Drops 8-connected components smaller than min_px or larger than
/// max_frac of the image area.
std::vector<std::uint8_t> keep_sized_components(
    const std::vector<std::uint8_t>& ink, int w, int h, int min_px,
    double max_frac);

struct FilterProviders {
  EmbeddingProvider* embedder = nullptr;
  OcrProvider* ocr = nullptr;
  const std::vector<LogoReference>* logo_refs = nullptr;
};

/// Runs the tiers cheap-to-expensive (size, frequency, transparency or
/// watermark, logo) over the image elements of one document. Reasons
/// accumulate; the logo tier is skipped once an element is already rejected.
/// Tables and forms pass through untouched.
void apply_filters(std::vector<VisualElement>& elements,
                   const std::vector<PagePtr>& pages,
                   const FilterProviders& providers,
                   const FilterParams& params);

/// Reference-embedding file: one record per line, id then the vector
/// components, whitespace-separated. Loader normalizes to unit length.
std::vector<LogoReference> load_logo_references(const std::string& path);
void save_logo_references(const std::string& path,
                          const std::vector<LogoReference>& refs);

/// Keyword vocabulary: UTF-8, one keyword per line, blanks skipped.
std::vector<std::string> load_keyword_file(const std::string& path);

}  // namespace pdfvex

#endif  // PDFVEX_FILTER_HPP
