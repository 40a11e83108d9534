#include "pdfvex/filter.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pdfvex {

namespace {

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

void add_reason(FilterVerdict& v, FilterReason r) {
  if (std::find(v.reasons.begin(), v.reasons.end(), r) == v.reasons.end())
    v.reasons.push_back(r);
}

}  // namespace

bool filter_by_size(const VisualElement& el, const PageModel& page,
                    const FilterParams& params) {
  const double w = el.bbox.width();
  const double h = el.bbox.height();
  const double frac = params.size_min_page_frac_pct / 100.0;
  if (w < frac * page.width || h < frac * page.height) return true;
  return w < params.size_min_abs && h < params.size_min_abs;
}

bool in_logo_zone(const BoundingBox& bbox, const PageModel& page,
                  const FilterParams& params) {
  const double cx = bbox.center_x();
  const double cy = bbox.center_y();
  const double zw = params.logo_corner_frac * page.width;
  const double zh = params.logo_corner_frac * page.height;
  const bool left = cx <= zw;
  const bool right = cx >= page.width - zw;
  const bool top = cy <= zh;
  const bool bottom = cy >= page.height - zh;
  return (left || right) && (top || bottom);
}

bool detect_logo(const VisualElement& el,
                 const std::vector<LogoReference>& refs,
                 EmbeddingProvider& provider, double similarity_threshold,
                 std::vector<std::string>* warnings) {
  if (refs.empty()) return false;
  if (!el.image.pixels || !el.image.pixels->valid()) {
    if (warnings)
      warnings->push_back("logo check skipped: element raster undecodable");
    return false;
  }
  try {
    const EmbeddingVector emb = provider.embed_image(*el.image.pixels);
    double best = -1.0;
    for (const LogoReference& ref : refs)
      best = std::max(best, cosine(emb, ref.embedding));
    return best >= similarity_threshold;
  } catch (const std::exception& e) {
    if (warnings)
      warnings->push_back(std::string("logo check unavailable, keeping: ") +
                          e.what());
    return false;  // fail-open
  }
}

std::vector<bool> mark_frequent(const std::vector<VisualElement>& elements,
                                int page_count, double page_pct) {
  std::vector<bool> out(elements.size(), false);
  if (page_count < 2) return out;
  std::map<std::string, std::set<int>> pages_by_digest;
  for (const VisualElement& el : elements) {
    if (el.kind != ElementKind::Image || el.image.content_digest.empty())
      continue;
    pages_by_digest[el.image.content_digest].insert(el.page_index);
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const VisualElement& el = elements[i];
    if (el.kind != ElementKind::Image || el.image.content_digest.empty())
      continue;
    const auto distinct =
        static_cast<double>(pages_by_digest[el.image.content_digest].size());
    out[i] = distinct * 100.0 > page_pct * page_count;
  }
  return out;
}

bool detect_semi_transparent(const ImageRegion& img, double opacity_threshold,
                             std::vector<std::string>* warnings) {
  if (!img.has_alpha) return false;
  if (!img.pixels || !img.pixels->valid()) {
    if (warnings)
      warnings->push_back("opacity check skipped: raster undecodable");
    return false;
  }
  if (img.pixels->min_alpha() == 255) return false;
  return img.pixels->mean_alpha() < opacity_threshold;
}

std::vector<std::uint8_t> threshold_ink_mask(
    const std::vector<std::uint8_t>& gray, int w, int h) {
  std::vector<std::uint8_t> ink;
  if (w <= 0 || h <= 0 ||
      gray.size() != static_cast<std::size_t>(w) * static_cast<std::size_t>(h))
    return ink;
  ink.assign(gray.size(), 0);

  // Local mean via an integral image, 15x15 window, fixed offset.
  constexpr int kHalf = 7;
  constexpr double kOffset = 10.0;
  std::vector<std::uint64_t> integral(
      static_cast<std::size_t>(w + 1) * (h + 1), 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      integral[static_cast<std::size_t>(y + 1) * (w + 1) + (x + 1)] =
          integral[static_cast<std::size_t>(y) * (w + 1) + (x + 1)] +
          integral[static_cast<std::size_t>(y + 1) * (w + 1) + x] -
          integral[static_cast<std::size_t>(y) * (w + 1) + x] +
          gray[static_cast<std::size_t>(y) * w + x];
  auto rect_sum = [&](int x0, int y0, int x1, int y1) {  // half-open
    return integral[static_cast<std::size_t>(y1) * (w + 1) + x1] -
           integral[static_cast<std::size_t>(y0) * (w + 1) + x1] -
           integral[static_cast<std::size_t>(y1) * (w + 1) + x0] +
           integral[static_cast<std::size_t>(y0) * (w + 1) + x0];
  };

  std::size_t marked = 0;
  for (int y = 0; y < h; ++y) {
    const int y0 = std::max(0, y - kHalf), y1 = std::min(h, y + kHalf + 1);
    for (int x = 0; x < w; ++x) {
      const int x0 = std::max(0, x - kHalf), x1 = std::min(w, x + kHalf + 1);
      const double mean = static_cast<double>(rect_sum(x0, y0, x1, y1)) /
                          (static_cast<double>(x1 - x0) * (y1 - y0));
      if (gray[static_cast<std::size_t>(y) * w + x] < mean - kOffset) {
        ink[static_cast<std::size_t>(y) * w + x] = 1;
        ++marked;
      }
    }
  }

  // Fallback: a near-empty or near-full local mask means the image has no
  // local contrast structure; split globally on between-class variance.
  const double frac = static_cast<double>(marked) / gray.size();
  if (frac > 0.001 && frac < 0.95) return ink;

  std::array<std::uint64_t, 256> histo{};
  for (std::uint8_t g : gray) histo[g]++;
  const double total = static_cast<double>(gray.size());
  double sum_all = 0;
  for (int i = 0; i < 256; ++i) sum_all += static_cast<double>(i) * histo[i];
  double best_var = -1.0;
  int best_t = -1;
  double w0 = 0, sum0 = 0;
  for (int t = 0; t < 255; ++t) {
    w0 += static_cast<double>(histo[t]);
    sum0 += static_cast<double>(t) * histo[t];
    const double w1 = total - w0;
    if (w0 <= 0 || w1 <= 0) continue;
    const double m0 = sum0 / w0, m1 = (sum_all - sum0) / w1;
    const double var = w0 * w1 * (m0 - m1) * (m0 - m1);
    if (var > best_var) {
      best_var = var;
      best_t = t;
    }
  }
  std::fill(ink.begin(), ink.end(), 0);
  if (best_t < 0) return ink;  // constant image: nothing to extract
  for (std::size_t i = 0; i < gray.size(); ++i)
    if (gray[i] <= best_t) ink[i] = 1;
  return ink;
}

std::vector<std::uint8_t> keep_sized_components(
    const std::vector<std::uint8_t>& ink, int w, int h, int min_px,
    double max_frac) {
  std::vector<std::uint8_t> out(ink.size(), 0);
  if (w <= 0 || h <= 0 ||
      ink.size() != static_cast<std::size_t>(w) * static_cast<std::size_t>(h))
    return out;
  const auto max_px =
      static_cast<std::size_t>(max_frac * static_cast<double>(w) * h);
  std::vector<std::uint8_t> seen(ink.size(), 0);
  std::vector<std::size_t> stack, member;
  for (std::size_t start = 0; start < ink.size(); ++start) {
    if (!ink[start] || seen[start]) continue;
    stack.assign(1, start);
    member.clear();
    seen[start] = 1;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      member.push_back(i);
      const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
      // 8-connectivity: glyph strokes often touch only diagonally, and the
      // whole point of the size gate is to drop speckle, not letter corners.
      const int nx[8] = {x - 1, x + 1, x, x, x - 1, x + 1, x - 1, x + 1};
      const int ny[8] = {y, y, y - 1, y + 1, y - 1, y - 1, y + 1, y + 1};
      for (int k = 0; k < 8; ++k) {
        if (nx[k] < 0 || ny[k] < 0 || nx[k] >= w || ny[k] >= h) continue;
        const std::size_t j = static_cast<std::size_t>(ny[k]) * w + nx[k];
        if (ink[j] && !seen[j]) {
          seen[j] = 1;
          stack.push_back(j);
        }
      }
    }
    if (member.size() >= static_cast<std::size_t>(min_px) &&
        member.size() <= max_px)
      for (std::size_t i : member) out[i] = 1;
  }
  return out;
}

WatermarkScan detect_watermark(const ImageRegion& img, OcrProvider* ocr,
                               const FilterParams& params,
                               std::vector<std::string>* warnings) {
  WatermarkScan scan;
  scan.transparent =
      detect_semi_transparent(img, params.opacity_threshold, warnings);
  if (!scan.transparent) return scan;
  if (!img.pixels || !img.pixels->valid()) return scan;

  const std::vector<std::uint8_t> gray = grayscale_over_white(*img.pixels);
  const int w = img.pixels->width, h = img.pixels->height;
  const std::vector<std::uint8_t> ink = keep_sized_components(
      threshold_ink_mask(gray, w, h), w, h, params.watermark_cc_min_px,
      params.watermark_cc_max_frac);

  if (!ocr) {
    scan.inconclusive = true;
    if (warnings)
      warnings->push_back(
          "watermark check inconclusive: transparency found, no OCR provider");
    return scan;
  }

  RasterImage mask;
  mask.width = w;
  mask.height = h;
  mask.rgba.assign(static_cast<std::size_t>(w) * h * 4, 255);
  for (std::size_t i = 0; i < ink.size(); ++i)
    if (ink[i]) {
      mask.rgba[i * 4 + 0] = 0;
      mask.rgba[i * 4 + 1] = 0;
      mask.rgba[i * 4 + 2] = 0;
    }

  std::string text;
  try {
    text = ocr->ocr_text(mask);
  } catch (const std::exception& e) {
    scan.inconclusive = true;
    if (warnings)
      warnings->push_back(std::string("watermark check inconclusive: ") +
                          e.what());
    return scan;
  }
  scan.extracted_text = text;
  const std::string lowered = to_lower(text);
  for (const std::string& kw : params.watermark_keywords) {
    if (kw.empty()) continue;
    if (lowered.find(to_lower(kw)) != std::string::npos) {
      scan.watermark = true;
      break;
    }
  }
  return scan;
}

void apply_filters(std::vector<VisualElement>& elements,
                   const std::vector<PagePtr>& pages,
                   const FilterProviders& providers,
                   const FilterParams& params) {
  auto page_of = [&](int index) -> const PageModel* {
    for (const PagePtr& p : pages)
      if (p && p->page_index == index) return p.get();
    return nullptr;
  };

  // Tier 1: size.
  for (VisualElement& el : elements) {
    if (el.kind != ElementKind::Image) continue;
    const PageModel* page = page_of(el.page_index);
    if (page && filter_by_size(el, *page, params))
      add_reason(el.verdict, FilterReason::TooSmall);
  }

  // Tier 2: cross-page frequency.
  const std::vector<bool> frequent =
      mark_frequent(elements, static_cast<int>(pages.size()),
                    params.frequency_page_pct);
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (frequent[i]) add_reason(elements[i].verdict, FilterReason::Frequent);

  // Tier 3: transparency and watermark text. A confirmed watermark is the
  // stronger verdict and replaces the bare transparency reason.
  for (VisualElement& el : elements) {
    if (el.kind != ElementKind::Image) continue;
    const WatermarkScan scan =
        detect_watermark(el.image, providers.ocr, params, &el.notes);
    if (scan.watermark) {
      add_reason(el.verdict, FilterReason::Watermark);
      if (!scan.extracted_text.empty())
        el.notes.push_back("watermark text: " + scan.extracted_text);
    } else if (scan.transparent) {
      add_reason(el.verdict, FilterReason::SemiTransparent);
    }
  }

  // Tier 4: logo matching, most expensive; skipped for anything already
  // rejected by a cheaper tier.
  for (VisualElement& el : elements) {
    if (el.kind != ElementKind::Image) continue;
    if (!el.verdict.reasons.empty()) continue;
    if (!providers.embedder || !providers.logo_refs ||
        providers.logo_refs->empty())
      continue;
    const PageModel* page = page_of(el.page_index);
    if (!page || !in_logo_zone(el.bbox, *page, params)) continue;
    if (detect_logo(el, *providers.logo_refs, *providers.embedder,
                    params.logo_similarity_threshold, &el.notes))
      add_reason(el.verdict, FilterReason::Logo);
  }

  for (VisualElement& el : elements) {
    std::sort(el.verdict.reasons.begin(), el.verdict.reasons.end());
    el.verdict.keep = el.verdict.reasons.empty();
  }
}

std::vector<LogoReference> load_logo_references(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open logo references: " + path);
  std::vector<LogoReference> refs;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    LogoReference ref;
    if (!(row >> ref.id)) continue;  // blank line
    double v;
    double norm = 0;
    while (row >> v) {
      ref.embedding.values.push_back(static_cast<float>(v));
      norm += v * v;
    }
    if (ref.embedding.values.empty()) continue;
    if (norm > 0) {
      const auto inv = static_cast<float>(1.0 / std::sqrt(norm));
      for (float& f : ref.embedding.values) f *= inv;
    }
    refs.push_back(std::move(ref));
  }
  return refs;
}

void save_logo_references(const std::string& path,
                          const std::vector<LogoReference>& refs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write logo references: " + path);
  out.precision(9);
  for (const LogoReference& ref : refs) {
    out << ref.id;
    for (float v : ref.embedding.values) out << ' ' << v;
    out << '\n';
  }
}

std::vector<std::string> load_keyword_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open keyword file: " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    std::size_t start = line.find_first_not_of(' ');
    if (start == std::string::npos) continue;
    out.push_back(line.substr(start));
  }
  return out;
}

}  // namespace pdfvex
