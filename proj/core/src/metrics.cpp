#include "pdfvex/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "pdfvex/merge.hpp"

namespace pdfvex {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<char32_t> codepoints(const std::string& s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    char32_t cp = b0;
    int len = 1;
    auto cont = [&](std::size_t k) {
      return i + k < s.size() &&
             (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(1)) {
      cp = static_cast<char32_t>(b0 & 0x1F) << 6 |
           (static_cast<unsigned char>(s[i + 1]) & 0x3F);
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
      cp = static_cast<char32_t>(b0 & 0x0F) << 12 |
           static_cast<char32_t>(static_cast<unsigned char>(s[i + 1]) & 0x3F)
               << 6 |
           (static_cast<unsigned char>(s[i + 2]) & 0x3F);
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
      cp = static_cast<char32_t>(b0 & 0x07) << 18 |
           static_cast<char32_t>(static_cast<unsigned char>(s[i + 1]) & 0x3F)
               << 12 |
           static_cast<char32_t>(static_cast<unsigned char>(s[i + 2]) & 0x3F)
               << 6 |
           (static_cast<unsigned char>(s[i + 3]) & 0x3F);
      len = 4;
    }
    out.push_back(cp);
    i += static_cast<std::size_t>(len);
  }
  return out;
}

ElementKind kind_from_name(const std::string& name) {
  if (name == "table") return ElementKind::Table;
  if (name == "form") return ElementKind::Form;
  if (name == "image") return ElementKind::Image;
  throw std::runtime_error("unknown element type: " + name);
}

ordered_json bbox_to_json(const BoundingBox& b) {
  return ordered_json::array({b.x0, b.y0, b.x1, b.y1});
}

BoundingBox bbox_from_json(const ordered_json& j) {
  if (!j.is_array() || j.size() != 4)
    throw std::runtime_error("bbox must be [x0,y0,x1,y1]");
  return BoundingBox(j[0].get<double>(), j[1].get<double>(),
                     j[2].get<double>(), j[3].get<double>());
}

}  // namespace

GroundTruth load_ground_truth(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ground truth: " + path);
  ordered_json j = ordered_json::parse(in, nullptr, true);
  GroundTruth gt;
  for (const auto& jp : j.at("pages")) {
    GroundTruthPage page;
    page.index = jp.at("index").get<int>();
    page.text = jp.value("text", std::string{});
    if (jp.contains("elements")) {
      for (const auto& je : jp["elements"]) {
        GroundTruthElement el;
        el.type = kind_from_name(je.at("type").get<std::string>());
        el.bbox = bbox_from_json(je.at("bbox"));
        if (je.contains("caption") && je["caption"].is_string())
          el.caption = je["caption"].get<std::string>();
        page.elements.push_back(std::move(el));
      }
    }
    gt.pages.push_back(std::move(page));
  }
  return gt;
}

void save_ground_truth(const std::string& path, const GroundTruth& gt) {
  ordered_json j;
  j["pages"] = ordered_json::array();
  for (const GroundTruthPage& page : gt.pages) {
    ordered_json jp;
    jp["index"] = page.index;
    jp["text"] = page.text;
    jp["elements"] = ordered_json::array();
    for (const GroundTruthElement& el : page.elements) {
      ordered_json je;
      je["type"] = element_kind_name(el.type);
      je["bbox"] = bbox_to_json(el.bbox);
      if (el.caption) je["caption"] = *el.caption;
      jp["elements"].push_back(std::move(je));
    }
    j["pages"].push_back(std::move(jp));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write ground truth: " + path);
  out << j.dump(2) << '\n';
}

double levenshtein_similarity(const std::string& a, const std::string& b) {
  const std::vector<char32_t> ca = codepoints(a), cb = codepoints(b);
  const std::size_t n = ca.size(), m = cb.size();
  if (n == 0 && m == 0) return 1.0;
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub = prev[j - 1] + (ca[i - 1] == cb[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  const double dist = static_cast<double>(prev[m]);
  return 1.0 - dist / static_cast<double>(std::max(n, m));
}

std::vector<std::pair<std::size_t, std::size_t>> match_elements(
    const std::vector<EvalBox>& detected, const std::vector<EvalBox>& gt,
    double min_iou) {
  struct Pair {
    double overlap;
    std::size_t det, ref;
  };
  std::vector<Pair> pairs;
  for (std::size_t d = 0; d < detected.size(); ++d)
    for (std::size_t g = 0; g < gt.size(); ++g) {
      if (detected[d].type != gt[g].type) continue;
      if (detected[d].page_index != gt[g].page_index) continue;
      const double ov = iou_overlap(detected[d].bbox, gt[g].bbox);
      if (ov >= min_iou) pairs.push_back(Pair{ov, d, g});
    }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.overlap != b.overlap) return a.overlap > b.overlap;
    if (a.det != b.det) return a.det < b.det;
    return a.ref < b.ref;
  });
  std::vector<bool> det_used(detected.size(), false), gt_used(gt.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const Pair& p : pairs) {
    if (det_used[p.det] || gt_used[p.ref]) continue;
    det_used[p.det] = true;
    gt_used[p.ref] = true;
    out.emplace_back(p.det, p.ref);
  }
  return out;
}

std::optional<double> compute_bba(const std::vector<EvalBox>& detected,
                                  const std::vector<EvalBox>& gt,
                                  double min_iou) {
  if (gt.empty()) return std::nullopt;
  return static_cast<double>(match_elements(detected, gt, min_iou).size()) /
         static_cast<double>(gt.size());
}

std::optional<double> compute_dc(const std::vector<EvalBox>& detected,
                                 const std::vector<EvalBox>& gt,
                                 double min_iou) {
  if (detected.empty()) return std::nullopt;
  return static_cast<double>(match_elements(detected, gt, min_iou).size()) /
         static_cast<double>(detected.size());
}

double caption_similarity(const std::string& predicted,
                          const std::string& reference,
                          EmbeddingProvider& provider) {
  const double c = cosine(provider.embed_text(predicted),
                          provider.embed_text(reference));
  return std::clamp((c + 1.0) / 2.0, 0.0, 1.0);
}

EvalReport evaluate(const EvalInput& input, const GroundTruth& gt,
                    EmbeddingProvider* provider, double min_iou) {
  EvalReport report;

  std::string pred_text, ref_text;
  for (std::size_t i = 0; i < input.page_texts.size(); ++i) {
    if (i) pred_text.push_back('\n');
    pred_text += input.page_texts[i];
  }
  for (std::size_t i = 0; i < gt.pages.size(); ++i) {
    if (i) ref_text.push_back('\n');
    ref_text += gt.pages[i].text;
  }
  report.text_similarity = levenshtein_similarity(pred_text, ref_text);

  // Kept detections and references flattened for matching; remember the
  // source rows so captions can be compared per matched pair.
  std::vector<EvalBox> det_boxes;
  std::vector<const EvalElement*> det_rows;
  for (const EvalElement& el : input.elements) {
    if (!el.keep) continue;
    det_boxes.push_back(EvalBox{el.type, el.page_index, el.bbox});
    det_rows.push_back(&el);
  }
  std::vector<EvalBox> gt_boxes;
  std::vector<const GroundTruthElement*> gt_rows;
  for (const GroundTruthPage& page : gt.pages)
    for (const GroundTruthElement& el : page.elements) {
      gt_boxes.push_back(EvalBox{el.type, page.index, el.bbox});
      gt_rows.push_back(&el);
    }

  auto of_kind = [](const std::vector<EvalBox>& boxes, ElementKind k) {
    std::vector<EvalBox> out;
    for (const EvalBox& b : boxes)
      if (b.type == k) out.push_back(b);
    return out;
  };
  struct KindSlot {
    ElementKind kind;
    CategoryCounts* counts;
    std::optional<double>* bba;
    std::optional<double>* dc;
  };
  const KindSlot slots[] = {
      {ElementKind::Image, &report.counts_image, &report.bba_image,
       &report.dc_image},
      {ElementKind::Table, &report.counts_table, &report.bba_table,
       &report.dc_table},
      {ElementKind::Form, &report.counts_form, &report.bba_form,
       &report.dc_form},
  };
  for (const KindSlot& slot : slots) {
    const std::vector<EvalBox> d = of_kind(det_boxes, slot.kind);
    const std::vector<EvalBox> g = of_kind(gt_boxes, slot.kind);
    slot.counts->detected = static_cast<int>(d.size());
    slot.counts->gt = static_cast<int>(g.size());
    slot.counts->matched =
        static_cast<int>(match_elements(d, g, min_iou).size());
    *slot.bba = compute_bba(d, g, min_iou);
    *slot.dc = compute_dc(d, g, min_iou);
  }
  report.dc_overall = compute_dc(det_boxes, gt_boxes, min_iou);

  const auto matches = match_elements(det_boxes, gt_boxes, min_iou);
  double caption_sum = 0;
  int caption_n = 0;
  bool provider_warned = false;
  for (const auto& [d, g] : matches) {
    if (!gt_rows[g]->caption) continue;
    if (!provider) {
      if (!provider_warned) {
        report.warnings.push_back(
            "caption similarity omitted: no embedding provider");
        provider_warned = true;
      }
      continue;
    }
    if (!det_rows[d]->caption) {
      caption_sum += 0.0;  // missed caption counts as a total miss
      ++caption_n;
      continue;
    }
    try {
      caption_sum +=
          caption_similarity(*det_rows[d]->caption, *gt_rows[g]->caption,
                             *provider);
      ++caption_n;
    } catch (const std::exception& e) {
      if (!provider_warned) {
        report.warnings.push_back(
            std::string("caption similarity omitted: ") + e.what());
        provider_warned = true;
      }
    }
  }
  if (caption_n > 0) report.caption_similarity = caption_sum / caption_n;
  return report;
}

std::string report_to_json(const EvalReport& report) {
  ordered_json j;
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v)
      j[key] = *v;
    else
      j[key] = nullptr;
  };
  put("text_similarity", report.text_similarity);
  put("caption_similarity", report.caption_similarity);
  put("bba_image", report.bba_image);
  put("bba_table", report.bba_table);
  put("bba_form", report.bba_form);
  put("dc_overall", report.dc_overall);
  put("dc_image", report.dc_image);
  put("dc_table", report.dc_table);
  put("dc_form", report.dc_form);
  auto counts = [&](const CategoryCounts& c) {
    return ordered_json{
        {"detected", c.detected}, {"gt", c.gt}, {"matched", c.matched}};
  };
  j["counts"] = ordered_json{{"image", counts(report.counts_image)},
                             {"table", counts(report.counts_table)},
                             {"form", counts(report.counts_form)}};
  j["warnings"] = report.warnings;
  return j.dump(2);
}

void save_report(const std::string& path, const EvalReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << report_to_json(report) << '\n';
}

}  // namespace pdfvex
