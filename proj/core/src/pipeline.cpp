#include "pdfvex/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "pdfvex/pdf/backend.hpp"
#include "pdfvex/raster.hpp"
#include "pdfvex/textnorm.hpp"
#include "png.hpp"

namespace pdfvex {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json bbox_to_json(const BoundingBox& b) {
  return ordered_json::array({b.x0, b.y0, b.x1, b.y1});
}

BoundingBox bbox_from_json(const ordered_json& j) {
  if (!j.is_array() || j.size() != 4)
    throw std::invalid_argument("bbox must be a 4-number array");
  return BoundingBox{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
                     j[3].get<double>()};
}

ordered_json boxes_to_json(const std::vector<BoundingBox>& boxes) {
  ordered_json arr = ordered_json::array();
  for (const auto& b : boxes) arr.push_back(bbox_to_json(b));
  return arr;
}

std::vector<BoundingBox> boxes_from_json(const ordered_json& j) {
  std::vector<BoundingBox> out;
  for (const auto& b : j) out.push_back(bbox_from_json(b));
  return out;
}

TableKind table_kind_from_name(const std::string& name) {
  for (TableKind k :
       {TableKind::None, TableKind::Bordered, TableKind::Unbordered})
    if (name == table_kind_name(k)) return k;
  throw std::invalid_argument("unknown table kind: " + name);
}

FormStrategy form_strategy_from_name(const std::string& name) {
  for (FormStrategy s :
       {FormStrategy::AcroForm, FormStrategy::Layout, FormStrategy::Drawings})
    if (name == form_strategy_name(s)) return s;
  throw std::invalid_argument("unknown form strategy: " + name);
}

ElementKind element_kind_from_name(const std::string& name) {
  for (ElementKind k : {ElementKind::Image, ElementKind::Table,
                        ElementKind::Form})
    if (name == element_kind_name(k)) return k;
  throw std::invalid_argument("unknown element kind: " + name);
}

FilterReason filter_reason_from_name(const std::string& name) {
  for (FilterReason r :
       {FilterReason::TooSmall, FilterReason::Logo, FilterReason::Frequent,
        FilterReason::SemiTransparent, FilterReason::Watermark})
    if (name == filter_reason_name(r)) return r;
  throw std::invalid_argument("unknown filter reason: " + name);
}

FieldType field_type_from_name(const std::string& name) {
  for (FieldType t : {FieldType::Text, FieldType::Checkbox, FieldType::Radio,
                      FieldType::Combo, FieldType::Signature, FieldType::Other})
    if (name == field_type_name(t)) return t;
  throw std::invalid_argument("unknown field type: " + name);
}

ordered_json strings_to_json(const std::vector<std::string>& v) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : v) arr.push_back(s);
  return arr;
}

std::vector<std::string> strings_from_json(const ordered_json& j) {
  std::vector<std::string> out;
  for (const auto& s : j) out.push_back(s.get<std::string>());
  return out;
}

// ---- config ---------------------------------------------------------------

void apply_table_options(const ordered_json& j, TableParams& p) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "min_lines") p.min_lines = it.value().get<int>();
    else if (k == "min_alignments") p.min_alignments = it.value().get<int>();
    else if (k == "min_line_length") p.min_line_length = it.value().get<double>();
    else if (k == "region_split_gap") p.region_split_gap = it.value().get<double>();
    else throw std::invalid_argument("unknown tables option: " + k);
  }
}

void apply_form_options(const ordered_json& j, FormParams& p) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "short_block_min") p.short_block_min = it.value().get<int>();
    else if (k == "short_text_max") p.short_text_max = it.value().get<int>();
    else throw std::invalid_argument("unknown forms option: " + k);
  }
}

void apply_merge_options(const ordered_json& j, MergeParams& p) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "overlap_threshold") p.overlap_threshold = it.value().get<double>();
    else throw std::invalid_argument("unknown merge option: " + k);
  }
}

void apply_filter_options(const ordered_json& j, FilterParams& p) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "size_min_page_frac_pct") p.size_min_page_frac_pct = it.value().get<double>();
    else if (k == "size_min_abs") p.size_min_abs = it.value().get<double>();
    else if (k == "frequency_page_pct") p.frequency_page_pct = it.value().get<double>();
    else if (k == "opacity_threshold") p.opacity_threshold = it.value().get<double>();
    else if (k == "logo_similarity_threshold") p.logo_similarity_threshold = it.value().get<double>();
    else if (k == "logo_corner_frac") p.logo_corner_frac = it.value().get<double>();
    else if (k == "watermark_cc_min_px") p.watermark_cc_min_px = it.value().get<int>();
    else if (k == "watermark_cc_max_frac") p.watermark_cc_max_frac = it.value().get<double>();
    else if (k == "watermark_keywords") p.watermark_keywords = strings_from_json(it.value());
    else throw std::invalid_argument("unknown filter option: " + k);
  }
}

void apply_caption_options(const ordered_json& j, CaptionParams& p) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "window_scale") p.window_scale = it.value().get<double>();
    else if (k == "fusion_alpha") p.fusion_alpha = it.value().get<double>();
    else if (k == "cluster_eps") p.cluster_eps = it.value().get<double>();
    else if (k == "keyword_weight") p.keyword_weight = it.value().get<double>();
    else if (k == "proximity_weight") p.proximity_weight = it.value().get<double>();
    else if (k == "style_weight") p.style_weight = it.value().get<double>();
    else if (k == "enumeration_weight") p.enumeration_weight = it.value().get<double>();
    else if (k == "keywords") p.keywords = strings_from_json(it.value());
    else throw std::invalid_argument("unknown caption option: " + k);
  }
}

void require_range(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("config out of range: ") + what);
}

// ---- manifest -------------------------------------------------------------

ordered_json widget_to_json(const FormWidget& w) {
  ordered_json j;
  j["name"] = w.field_name;
  j["type"] = field_type_name(w.field_type);
  j["rect"] = bbox_to_json(w.rect);
  j["anonymous"] = w.anonymous;
  return j;
}

FormWidget widget_from_json(const ordered_json& j) {
  FormWidget w;
  w.field_name = j.at("name").get<std::string>();
  w.field_type = field_type_from_name(j.at("type").get<std::string>());
  w.rect = bbox_from_json(j.at("rect"));
  w.anonymous = j.at("anonymous").get<bool>();
  return w;
}

ordered_json widgets_to_json(const std::vector<FormWidget>& v) {
  ordered_json arr = ordered_json::array();
  for (const auto& w : v) arr.push_back(widget_to_json(w));
  return arr;
}

std::vector<FormWidget> widgets_from_json(const ordered_json& j) {
  std::vector<FormWidget> out;
  for (const auto& w : j) out.push_back(widget_from_json(w));
  return out;
}

// Raster pixels never serialize; the digest identifies the content and the
// PNG export carries the bytes.
ordered_json image_region_to_json(const ImageRegion& r) {
  ordered_json j;
  j["bbox"] = bbox_to_json(r.bbox);
  j["pixel_width"] = r.pixel_width;
  j["pixel_height"] = r.pixel_height;
  j["has_alpha"] = r.has_alpha;
  j["content_digest"] = r.content_digest;
  return j;
}

ImageRegion image_region_from_json(const ordered_json& j) {
  ImageRegion r;
  r.bbox = bbox_from_json(j.at("bbox"));
  r.pixel_width = j.at("pixel_width").get<int>();
  r.pixel_height = j.at("pixel_height").get<int>();
  r.has_alpha = j.at("has_alpha").get<bool>();
  r.content_digest = j.at("content_digest").get<std::string>();
  return r;
}

ordered_json table_detection_to_json(const TableDetection& t) {
  ordered_json j;
  j["present"] = t.present;
  j["kind"] = table_kind_name(t.kind);
  j["regions"] = boxes_to_json(t.regions);
  j["evidence"] = {{"line_count", t.evidence.line_count},
                   {"x_alignments", t.evidence.x_alignments},
                   {"y_alignments", t.evidence.y_alignments}};
  return j;
}

TableDetection table_detection_from_json(const ordered_json& j) {
  TableDetection t;
  t.present = j.at("present").get<bool>();
  t.kind = table_kind_from_name(j.at("kind").get<std::string>());
  t.regions = boxes_from_json(j.at("regions"));
  const auto& e = j.at("evidence");
  t.evidence.line_count = e.at("line_count").get<int>();
  t.evidence.x_alignments = e.at("x_alignments").get<int>();
  t.evidence.y_alignments = e.at("y_alignments").get<int>();
  return t;
}

ordered_json form_detection_to_json(const FormDetection& f) {
  ordered_json j;
  j["is_form_page"] = f.is_form_page;
  ordered_json strategies = ordered_json::array();
  for (FormStrategy s : f.strategy) strategies.push_back(form_strategy_name(s));
  j["strategies"] = strategies;
  j["fields"] = widgets_to_json(f.fields);
  j["region"] = f.region ? bbox_to_json(*f.region) : ordered_json(nullptr);
  j["short_block_count"] = f.short_block_count;
  j["drawing_evidence"] = {{"rect_count", f.drawing_evidence.rect_count},
                           {"line_count", f.drawing_evidence.line_count}};
  return j;
}

FormDetection form_detection_from_json(const ordered_json& j) {
  FormDetection f;
  f.is_form_page = j.at("is_form_page").get<bool>();
  for (const auto& s : j.at("strategies"))
    f.strategy.push_back(form_strategy_from_name(s.get<std::string>()));
  f.fields = widgets_from_json(j.at("fields"));
  if (!j.at("region").is_null()) f.region = bbox_from_json(j.at("region"));
  f.short_block_count = j.at("short_block_count").get<int>();
  const auto& d = j.at("drawing_evidence");
  f.drawing_evidence.rect_count = d.at("rect_count").get<int>();
  f.drawing_evidence.line_count = d.at("line_count").get<int>();
  return f;
}

ordered_json element_to_json(const VisualElement& el) {
  ordered_json j;
  j["id"] = el.id;
  j["kind"] = element_kind_name(el.kind);
  j["page_index"] = el.page_index;
  j["bbox"] = bbox_to_json(el.bbox);
  j["keep"] = el.verdict.keep;
  ordered_json reasons = ordered_json::array();
  for (FilterReason r : el.verdict.reasons)
    reasons.push_back(filter_reason_name(r));
  j["filter_reasons"] = reasons;
  switch (el.kind) {
    case ElementKind::Image: {
      j["image"] = image_region_to_json(el.image);
      if (!el.merged_parts.empty()) {
        ordered_json parts = ordered_json::array();
        for (const auto& p : el.merged_parts)
          parts.push_back(image_region_to_json(p));
        j["merged_parts"] = parts;
      }
      break;
    }
    case ElementKind::Table:
      j["table_kind"] = table_kind_name(el.table_kind);
      break;
    case ElementKind::Form: {
      ordered_json strategies = ordered_json::array();
      for (FormStrategy s : el.form_strategies)
        strategies.push_back(form_strategy_name(s));
      j["form_strategies"] = strategies;
      j["form_fields"] = widgets_to_json(el.form_fields);
      break;
    }
  }
  if (!el.notes.empty()) j["notes"] = strings_to_json(el.notes);
  return j;
}

VisualElement element_from_json(const ordered_json& j) {
  VisualElement el;
  el.id = j.at("id").get<std::string>();
  el.kind = element_kind_from_name(j.at("kind").get<std::string>());
  el.page_index = j.at("page_index").get<int>();
  el.bbox = bbox_from_json(j.at("bbox"));
  el.verdict.keep = j.at("keep").get<bool>();
  for (const auto& r : j.at("filter_reasons"))
    el.verdict.reasons.push_back(filter_reason_from_name(r.get<std::string>()));
  switch (el.kind) {
    case ElementKind::Image:
      el.image = image_region_from_json(j.at("image"));
      if (j.contains("merged_parts"))
        for (const auto& p : j.at("merged_parts"))
          el.merged_parts.push_back(image_region_from_json(p));
      break;
    case ElementKind::Table:
      el.table_kind = table_kind_from_name(j.at("table_kind").get<std::string>());
      break;
    case ElementKind::Form:
      for (const auto& s : j.at("form_strategies"))
        el.form_strategies.push_back(
            form_strategy_from_name(s.get<std::string>()));
      el.form_fields = widgets_from_json(j.at("form_fields"));
      break;
  }
  if (j.contains("notes")) el.notes = strings_from_json(j.at("notes"));
  return el;
}

std::string read_text_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(std::string("cannot open ") + what + ": " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return text;
}

void write_text_file(const std::string& path, const std::string& text,
                     const char* what) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(std::string("cannot write ") + what + ": " + path);
  out << text;
  if (!out) throw std::runtime_error(std::string("cannot write ") + what + ": " + path);
}

}  // namespace

// ---- PipelineConfig -------------------------------------------------------

void PipelineConfig::validate() const {
  require_range(tables.min_lines >= 1, "tables.min_lines");
  require_range(tables.min_alignments >= 1, "tables.min_alignments");
  require_range(tables.min_line_length >= 0, "tables.min_line_length");
  require_range(tables.region_split_gap >= 0, "tables.region_split_gap");
  require_range(forms.short_block_min >= 0, "forms.short_block_min");
  require_range(forms.short_text_max >= 1, "forms.short_text_max");
  require_range(merge.overlap_threshold >= 0 && merge.overlap_threshold < 1,
                "merge.overlap_threshold");
  require_range(filter.size_min_page_frac_pct >= 0 &&
                    filter.size_min_page_frac_pct <= 100,
                "filter.size_min_page_frac_pct");
  require_range(filter.size_min_abs >= 0, "filter.size_min_abs");
  require_range(filter.frequency_page_pct > 0 && filter.frequency_page_pct <= 100,
                "filter.frequency_page_pct");
  require_range(filter.opacity_threshold > 0 && filter.opacity_threshold <= 1,
                "filter.opacity_threshold");
  require_range(filter.logo_similarity_threshold >= -1 &&
                    filter.logo_similarity_threshold <= 1,
                "filter.logo_similarity_threshold");
  require_range(filter.logo_corner_frac > 0 && filter.logo_corner_frac <= 0.5,
                "filter.logo_corner_frac");
  require_range(filter.watermark_cc_min_px >= 0, "filter.watermark_cc_min_px");
  require_range(filter.watermark_cc_max_frac > 0 &&
                    filter.watermark_cc_max_frac <= 1,
                "filter.watermark_cc_max_frac");
  require_range(caption.window_scale > 0, "caption.window_scale");
  require_range(caption.fusion_alpha >= 0 && caption.fusion_alpha <= 1,
                "caption.fusion_alpha");
  require_range(caption.cluster_eps > 0, "caption.cluster_eps");
  require_range(caption.keyword_weight >= 0 && caption.proximity_weight >= 0 &&
                    caption.style_weight >= 0 &&
                    caption.enumeration_weight >= 0,
                "caption weights");
  require_range(match_iou > 0 && match_iou <= 1, "match_iou");
  require_range(provider == "stub" || provider == "remote", "provider");
  require_range(provider_timeout_ms > 0, "provider_timeout_ms");
  require_range(provider_max_inflight >= 1 && provider_max_inflight <= 256,
                "provider_max_inflight");
  require_range(jobs >= 0, "jobs");
}

std::string PipelineConfig::to_json() const {
  ordered_json j;
  j["tables"] = {{"min_lines", tables.min_lines},
                 {"min_alignments", tables.min_alignments},
                 {"min_line_length", tables.min_line_length},
                 {"region_split_gap", tables.region_split_gap}};
  j["forms"] = {{"short_block_min", forms.short_block_min},
                {"short_text_max", forms.short_text_max}};
  j["merge"] = {{"overlap_threshold", merge.overlap_threshold}};
  j["filter"] = {{"size_min_page_frac_pct", filter.size_min_page_frac_pct},
                 {"size_min_abs", filter.size_min_abs},
                 {"frequency_page_pct", filter.frequency_page_pct},
                 {"opacity_threshold", filter.opacity_threshold},
                 {"logo_similarity_threshold", filter.logo_similarity_threshold},
                 {"logo_corner_frac", filter.logo_corner_frac},
                 {"watermark_cc_min_px", filter.watermark_cc_min_px},
                 {"watermark_cc_max_frac", filter.watermark_cc_max_frac},
                 {"watermark_keywords", strings_to_json(filter.watermark_keywords)}};
  j["caption"] = {{"window_scale", caption.window_scale},
                  {"fusion_alpha", caption.fusion_alpha},
                  {"cluster_eps", caption.cluster_eps},
                  {"keyword_weight", caption.keyword_weight},
                  {"proximity_weight", caption.proximity_weight},
                  {"style_weight", caption.style_weight},
                  {"enumeration_weight", caption.enumeration_weight},
                  {"keywords", strings_to_json(caption.keywords)}};
  j["match_iou"] = match_iou;
  j["provider"] = provider;
  j["embed_endpoint"] = embed_endpoint;
  j["ocr_endpoint"] = ocr_endpoint;
  j["provider_timeout_ms"] = provider_timeout_ms;
  j["provider_max_inflight"] = provider_max_inflight;
  j["logo_reference_path"] = logo_reference_path;
  j["keyword_vocab_path"] = keyword_vocab_path;
  j["jobs"] = jobs;
  return j.dump(2) + "\n";
}

PipelineConfig PipelineConfig::from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  PipelineConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "tables") apply_table_options(it.value(), cfg.tables);
    else if (k == "forms") apply_form_options(it.value(), cfg.forms);
    else if (k == "merge") apply_merge_options(it.value(), cfg.merge);
    else if (k == "filter") apply_filter_options(it.value(), cfg.filter);
    else if (k == "caption") apply_caption_options(it.value(), cfg.caption);
    else if (k == "match_iou") cfg.match_iou = it.value().get<double>();
    else if (k == "provider") cfg.provider = it.value().get<std::string>();
    else if (k == "embed_endpoint") cfg.embed_endpoint = it.value().get<std::string>();
    else if (k == "ocr_endpoint") cfg.ocr_endpoint = it.value().get<std::string>();
    else if (k == "provider_timeout_ms") cfg.provider_timeout_ms = it.value().get<int>();
    else if (k == "provider_max_inflight") cfg.provider_max_inflight = it.value().get<int>();
    else if (k == "logo_reference_path") cfg.logo_reference_path = it.value().get<std::string>();
    else if (k == "keyword_vocab_path") cfg.keyword_vocab_path = it.value().get<std::string>();
    else if (k == "jobs") cfg.jobs = it.value().get<int>();
    else throw std::invalid_argument("unknown config option: " + k);
  }
  cfg.validate();
  return cfg;
}

PipelineConfig PipelineConfig::load(const std::string& path) {
  return from_json(read_text_file(path, "config file"));
}

void PipelineConfig::save(const std::string& path) const {
  write_text_file(path, to_json(), "config file");
}

// ---- providers ------------------------------------------------------------

PipelineProviders OwnedProviders::view() {
  PipelineProviders v;
  v.embedder = embedder.get();
  v.ocr = ocr.get();
  v.logo_refs = logo_refs;
  return v;
}

OwnedProviders make_providers(const PipelineConfig& cfg) {
  OwnedProviders out;
  if (cfg.provider == "remote") {
    const char* embed_env = std::getenv("PDFVEX_EMBED_URL");
    const char* ocr_env = std::getenv("PDFVEX_OCR_URL");
    std::string embed_url = embed_env ? embed_env : cfg.embed_endpoint;
    std::string ocr_url = ocr_env ? ocr_env : cfg.ocr_endpoint;
    if (embed_url.empty())
      throw std::invalid_argument(
          "remote provider needs embed_endpoint (or PDFVEX_EMBED_URL)");
    out.embedder = make_remote_embedding_provider(
        embed_url, cfg.provider_timeout_ms, cfg.provider_max_inflight);
    // OCR endpoint is optional; without one the watermark stage records
    // transparency evidence as inconclusive instead of calling out.
    if (!ocr_url.empty())
      out.ocr = make_remote_ocr_provider(ocr_url, cfg.provider_timeout_ms,
                                         cfg.provider_max_inflight);
  } else {
    out.embedder = std::make_unique<StubEmbeddingProvider>();
    out.ocr = std::make_unique<StubOcrProvider>();
  }
  if (!cfg.logo_reference_path.empty())
    out.logo_refs = load_logo_references(cfg.logo_reference_path);
  return out;
}

// ---- run ------------------------------------------------------------------

namespace {

struct PageWork {
  TableDetection table;
  FormDetection form;
  std::vector<MergedImage> merged;
  std::string normalized_text;
  std::vector<std::string> extra_warnings;
};

void analyze_page(const PageModel& page, const PipelineConfig& cfg,
                  PageWork& w) {
  w.table = detect_table(page, cfg.tables);
  w.form = detect_form(page, cfg.forms);
  w.merged = merge_images(page.images, cfg.merge);
  std::string joined;
  for (const auto& block : page.blocks) {
    if (!joined.empty()) joined.push_back('\n');
    joined += block.text;
  }
  w.normalized_text = normalize_text(joined);
}

}  // namespace

DocumentManifest run_pipeline(std::span<const std::uint8_t> pdf_bytes,
                              const PipelineConfig& cfg,
                              const PipelineProviders& providers) {
  cfg.validate();

  DocumentManifest m;
  m.source_digest = bytes_digest(pdf_bytes.data(), pdf_bytes.size());

  std::vector<PagePtr> pages = load_document(pdf_bytes);

  FilterParams filter_params = cfg.filter;
  if (!cfg.keyword_vocab_path.empty())
    filter_params.watermark_keywords = load_keyword_file(cfg.keyword_vocab_path);

  std::vector<PageWork> work(pages.size());
  std::size_t jobs = cfg.jobs > 0
                         ? static_cast<std::size_t>(cfg.jobs)
                         : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, pages.size());

  auto run_one = [&](std::size_t i) {
    try {
      analyze_page(*pages[i], cfg, work[i]);
    } catch (const std::exception& e) {
      work[i].extra_warnings.push_back(std::string("page analysis failed: ") +
                                       e.what());
    }
  };
  if (jobs <= 1) {
    for (std::size_t i = 0; i < pages.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= pages.size()) break;
        run_one(i);
      }
    };
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t + 1 < jobs; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
  }

  // Deterministic element order: page by page, images then tables then the
  // form summary. Ids encode page and per-kind ordinal.
  for (std::size_t i = 0; i < pages.size(); ++i) {
    const PageModel& page = *pages[i];
    const PageWork& w = work[i];
    int img_n = 0, tbl_n = 0, frm_n = 0;
    for (const MergedImage& mi : w.merged) {
      VisualElement el;
      el.id = "p" + std::to_string(page.page_index) + "_img" +
              std::to_string(img_n++);
      el.kind = ElementKind::Image;
      el.page_index = page.page_index;
      el.bbox = mi.bbox;
      el.image = mi.primary;
      if (mi.parts.size() > 1) el.merged_parts = mi.parts;
      m.elements.push_back(std::move(el));
    }
    if (w.table.present) {
      for (const BoundingBox& region : w.table.regions) {
        VisualElement el;
        el.id = "p" + std::to_string(page.page_index) + "_tbl" +
                std::to_string(tbl_n++);
        el.kind = ElementKind::Table;
        el.page_index = page.page_index;
        el.bbox = region;
        el.table_kind = w.table.kind;
        m.elements.push_back(std::move(el));
      }
    }
    if (w.form.is_form_page) {
      VisualElement el;
      el.id = "p" + std::to_string(page.page_index) + "_frm" +
              std::to_string(frm_n++);
      el.kind = ElementKind::Form;
      el.page_index = page.page_index;
      el.bbox = w.form.region.value_or(BoundingBox{0, 0, page.width, page.height});
      el.form_strategies = w.form.strategy;
      el.form_fields = w.form.fields;
      m.elements.push_back(std::move(el));
    }
  }

  FilterProviders filter_providers;
  filter_providers.embedder = providers.embedder;
  filter_providers.ocr = providers.ocr;
  filter_providers.logo_refs = &providers.logo_refs;
  apply_filters(m.elements, pages, filter_providers, filter_params);

  // Caption pass sees only surviving elements; indices map back afterwards.
  std::vector<VisualElement> kept;
  std::vector<std::size_t> kept_idx;
  for (std::size_t i = 0; i < m.elements.size(); ++i) {
    if (m.elements[i].verdict.keep) {
      kept.push_back(m.elements[i]);
      kept_idx.push_back(i);
    }
  }
  std::vector<CaptionMatch> matches = associate_captions(
      kept, pages, providers.embedder, cfg.caption, &m.warnings);
  std::sort(matches.begin(), matches.end(),
            [](const CaptionMatch& a, const CaptionMatch& b) {
              return a.element_index < b.element_index;
            });
  for (const CaptionMatch& match : matches) {
    const VisualElement& el = m.elements[kept_idx[match.element_index]];
    ElementCaption c;
    c.element_id = el.id;
    c.text = match.text;
    c.layout_score = match.candidate.layout_score;
    c.semantic_score = match.candidate.semantic_score;
    c.fused_score = match.candidate.fused_score;
    c.page_index = match.candidate.page_index;
    c.bbox = match.candidate.block.bbox;
    m.captions.push_back(std::move(c));
  }

  for (std::size_t i = 0; i < pages.size(); ++i) {
    const PageModel& page = *pages[i];
    ManifestPage row;
    row.page_index = page.page_index;
    row.width = page.width;
    row.height = page.height;
    row.normalized_text = work[i].normalized_text;
    row.table = work[i].table;
    row.form = work[i].form;
    row.warnings = page.warnings;
    row.warnings.insert(row.warnings.end(), work[i].extra_warnings.begin(),
                        work[i].extra_warnings.end());
    m.pages.push_back(std::move(row));
  }
  return m;
}

DocumentManifest run_pipeline_file(const std::string& path,
                                   const PipelineConfig& cfg,
                                   const PipelineProviders& providers) {
  std::string bytes = read_text_file(path, "input file");
  return run_pipeline(
      std::span<const std::uint8_t>(
          reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()),
      cfg, providers);
}

// ---- manifest serialization ----------------------------------------------

std::string manifest_to_json(const DocumentManifest& manifest) {
  ordered_json j;
  j["schema_version"] = manifest.schema_version;
  j["source_digest"] = manifest.source_digest;
  ordered_json pages = ordered_json::array();
  for (const ManifestPage& p : manifest.pages) {
    ordered_json row;
    row["page_index"] = p.page_index;
    row["width"] = p.width;
    row["height"] = p.height;
    row["normalized_text"] = p.normalized_text;
    row["table"] = table_detection_to_json(p.table);
    row["form"] = form_detection_to_json(p.form);
    row["warnings"] = strings_to_json(p.warnings);
    pages.push_back(std::move(row));
  }
  j["pages"] = std::move(pages);
  ordered_json elements = ordered_json::array();
  for (const VisualElement& el : manifest.elements)
    elements.push_back(element_to_json(el));
  j["elements"] = std::move(elements);
  ordered_json captions = ordered_json::array();
  for (const ElementCaption& c : manifest.captions) {
    ordered_json row;
    row["element_id"] = c.element_id;
    row["text"] = c.text;
    row["layout_score"] = c.layout_score;
    row["semantic_score"] = c.semantic_score;
    row["fused_score"] = c.fused_score;
    row["page_index"] = c.page_index;
    row["bbox"] = bbox_to_json(c.bbox);
    captions.push_back(std::move(row));
  }
  j["captions"] = std::move(captions);
  j["warnings"] = strings_to_json(manifest.warnings);
  return j.dump(2) + "\n";
}

DocumentManifest manifest_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  DocumentManifest m;
  m.schema_version = j.at("schema_version").get<int>();
  if (m.schema_version != 1)
    throw std::invalid_argument("unsupported manifest schema_version: " +
                                std::to_string(m.schema_version));
  m.source_digest = j.at("source_digest").get<std::string>();
  for (const auto& row : j.at("pages")) {
    ManifestPage p;
    p.page_index = row.at("page_index").get<int>();
    p.width = row.at("width").get<double>();
    p.height = row.at("height").get<double>();
    p.normalized_text = row.at("normalized_text").get<std::string>();
    p.table = table_detection_from_json(row.at("table"));
    p.form = form_detection_from_json(row.at("form"));
    p.warnings = strings_from_json(row.at("warnings"));
    m.pages.push_back(std::move(p));
  }
  for (const auto& row : j.at("elements"))
    m.elements.push_back(element_from_json(row));
  for (const auto& row : j.at("captions")) {
    ElementCaption c;
    c.element_id = row.at("element_id").get<std::string>();
    c.text = row.at("text").get<std::string>();
    c.layout_score = row.at("layout_score").get<double>();
    c.semantic_score = row.at("semantic_score").get<double>();
    c.fused_score = row.at("fused_score").get<double>();
    c.page_index = row.at("page_index").get<int>();
    c.bbox = bbox_from_json(row.at("bbox"));
    m.captions.push_back(std::move(c));
  }
  m.warnings = strings_from_json(j.at("warnings"));
  return m;
}

DocumentManifest load_manifest(const std::string& path) {
  return manifest_from_json(read_text_file(path, "manifest"));
}

void save_manifest(const std::string& path, const DocumentManifest& manifest) {
  write_text_file(path, manifest_to_json(manifest), "manifest");
}

EvalInput manifest_to_eval_input(const DocumentManifest& manifest) {
  EvalInput input;
  for (const ManifestPage& p : manifest.pages)
    input.page_texts.push_back(p.normalized_text);
  std::map<std::string, const ElementCaption*> caption_by_id;
  for (const ElementCaption& c : manifest.captions)
    caption_by_id[c.element_id] = &c;
  for (const VisualElement& el : manifest.elements) {
    EvalElement row;
    row.type = el.kind;
    row.page_index = el.page_index;
    row.bbox = el.bbox;
    row.keep = el.verdict.keep;
    auto it = caption_by_id.find(el.id);
    if (it != caption_by_id.end()) row.caption = it->second->text;
    input.elements.push_back(std::move(row));
  }
  return input;
}

std::vector<std::string> write_element_rasters(const DocumentManifest& manifest,
                                               const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  for (const VisualElement& el : manifest.elements) {
    if (el.kind != ElementKind::Image || !el.verdict.keep) continue;
    const RasterImage* raster = el.image.raster();
    if (!raster || !raster->valid()) continue;
    std::string path = (std::filesystem::path(dir) / (el.id + ".png")).string();
    png::write_file(path, *raster);
    written.push_back(std::move(path));
  }
  return written;
}

}  // namespace pdfvex
