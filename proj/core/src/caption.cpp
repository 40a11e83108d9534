#include "pdfvex/caption.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>

#include "pdfvex/textnorm.hpp"

namespace pdfvex {

namespace {

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

std::string trim_front(const std::string& s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

const PageModel* page_at(const std::vector<PagePtr>& pages, int index) {
  for (const PagePtr& p : pages)
    if (p && p->page_index == index) return p.get();
  return nullptr;
}

/// Vertical offset of a page when all pages stack top to bottom — the
/// shared axis for cross-page gap arithmetic.
double stack_offset(const std::vector<PagePtr>& pages, int page_index) {
  double off = 0;
  for (const PagePtr& p : pages) {
    if (!p || p->page_index >= page_index) continue;
    off += p->height;
  }
  return off;
}

double median_of(std::vector<double> v, double fallback) {
  if (v.empty()) return fallback;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double median_line_height(const PageModel& page) {
  std::vector<double> heights;
  for (const TextBlock& b : page.blocks)
    for (const LineSpan& ls : b.line_spans) heights.push_back(ls.bbox.height());
  return median_of(std::move(heights), 12.0);
}

double median_font_size(const PageModel& page) {
  std::vector<double> sizes;
  for (const TextBlock& b : page.blocks)
    if (b.font_size > 0) sizes.push_back(b.font_size);
  return median_of(std::move(sizes), 12.0);
}

void collect_lines(const PageModel& page, double y_lo, double y_hi,
                   std::vector<CaptionLine>& out) {
  for (const TextBlock& b : page.blocks) {
    for (const LineSpan& ls : b.line_spans) {
      if (ls.bbox.y1 < y_lo || ls.bbox.y0 > y_hi) continue;
      CaptionLine line;
      line.page_index = page.page_index;
      line.bbox = ls.bbox;
      line.text = ls.text;
      line.font_size = b.font_size;
      line.bold = b.bold;
      out.push_back(std::move(line));
    }
  }
}

/// Vertical gap between the candidate and the element with pages stacked;
/// zero when their vertical extents overlap.
double stacked_vertical_gap(const CaptionCandidate& cand,
                            const VisualElement& el,
                            const std::vector<PagePtr>& pages) {
  const double cand_off = stack_offset(pages, cand.page_index);
  const double el_off = stack_offset(pages, el.page_index);
  const double c0 = cand_off + cand.block.bbox.y0;
  const double c1 = cand_off + cand.block.bbox.y1;
  const double e0 = el_off + el.bbox.y0;
  const double e1 = el_off + el.bbox.y1;
  if (c1 >= e0 && c0 <= e1) return 0.0;
  return c0 > e1 ? c0 - e1 : e0 - c1;
}

/// Keyword with any trailing dot dropped, for prefix tests where the
/// separator class covers the dot.
std::string bare_keyword(const std::string& kw) {
  std::string k = to_lower(kw);
  while (!k.empty() && k.back() == '.') k.pop_back();
  return k;
}

bool keyword_prefix_hit(const std::string& text,
                        const std::vector<std::string>& keywords) {
  const std::string lowered = to_lower(trim_front(text));
  for (const std::string& kw : keywords) {
    const std::string k = to_lower(kw);
    if (!k.empty() && lowered.rfind(k, 0) == 0) return true;
    const std::string b = bare_keyword(kw);
    if (!b.empty() && lowered.rfind(b, 0) == 0) return true;
  }
  return false;
}

bool enumeration_hit(const std::string& text,
                     const std::vector<std::string>& keywords) {
  const std::string lowered = to_lower(trim_front(text));
  auto is_sep = [](char c) {
    return c == ' ' || c == '.' || c == ':' || c == ';' || c == '-' ||
           c == '\t';
  };
  for (const std::string& kw : keywords) {
    const std::string k = bare_keyword(kw);
    if (k.empty() || lowered.rfind(k, 0) != 0) continue;
    std::size_t i = k.size();
    while (i < lowered.size() && is_sep(lowered[i])) ++i;
    if (i < lowered.size() &&
        std::isdigit(static_cast<unsigned char>(lowered[i])))
      return true;
  }
  return false;
}

std::string candidate_key(const CaptionCandidate& cand) {
  std::string key;
  char buf[96];
  for (const CaptionLine& ln : cand.lines) {
    std::snprintf(buf, sizeof buf, "%d|%.3f|%.3f|%.3f|%.3f;", ln.page_index,
                  ln.bbox.x0, ln.bbox.y0, ln.bbox.x1, ln.bbox.y1);
    key += buf;
  }
  return key;
}

}  // namespace

std::vector<CaptionLine> context_window(const VisualElement& el,
                                        const std::vector<PagePtr>& pages,
                                        const CaptionParams& params) {
  std::vector<CaptionLine> out;
  const PageModel* page = page_at(pages, el.page_index);
  if (!page) return out;
  const double reach = params.window_scale * el.bbox.height();

  collect_lines(*page, el.bbox.y0 - reach, el.bbox.y1 + reach, out);
  if (const PageModel* prev = page_at(pages, el.page_index - 1))
    collect_lines(*prev, prev->height - reach, prev->height, out);
  if (const PageModel* next = page_at(pages, el.page_index + 1))
    collect_lines(*next, 0.0, reach, out);

  std::stable_sort(out.begin(), out.end(),
                   [](const CaptionLine& a, const CaptionLine& b) {
                     if (a.page_index != b.page_index)
                       return a.page_index < b.page_index;
                     if (a.bbox.y0 != b.bbox.y0) return a.bbox.y0 < b.bbox.y0;
                     return a.bbox.x0 < b.bbox.x0;
                   });
  return out;
}

std::vector<CaptionCandidate> cluster_lines(
    const std::vector<CaptionLine>& lines, double eps, double norm_height,
    const std::vector<PagePtr>& pages) {
  std::vector<CaptionCandidate> out;
  if (lines.empty()) return out;
  const double unit = norm_height > 0 ? norm_height : 12.0;

  struct Pt {
    double x, y;
  };
  std::vector<Pt> pts;
  pts.reserve(lines.size());
  for (const CaptionLine& ln : lines) {
    const double off = stack_offset(pages, ln.page_index);
    pts.push_back(Pt{ln.bbox.x0 / unit,
                     (off + 0.5 * (ln.bbox.y0 + ln.bbox.y1)) / unit});
  }

  // Neighborhood clustering with min_pts = 1: connected components of the
  // eps-radius graph.
  const std::size_t n = lines.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
      if (dx * dx + dy * dy <= eps * eps) {
        const std::size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);

  for (const auto& [root, members] : groups) {
    CaptionCandidate cand;
    for (std::size_t idx : members) cand.lines.push_back(lines[idx]);
    // Input lines arrive in reading order; members inherit it.
    cand.page_index = cand.lines.front().page_index;

    bool first_on_page = true;
    std::map<double, int> size_votes;
    int bold_votes = 0;
    for (const CaptionLine& ln : cand.lines) {
      if (!cand.block.text.empty()) cand.block.text.push_back('\n');
      cand.block.text += ln.text;
      cand.block.line_spans.push_back(LineSpan{ln.bbox, ln.text});
      size_votes[ln.font_size]++;
      bold_votes += ln.bold ? 1 : 0;
      if (ln.page_index == cand.page_index) {
        cand.block.bbox =
            first_on_page ? ln.bbox : union_box(cand.block.bbox, ln.bbox);
        first_on_page = false;
      }
    }
    int best = 0;
    for (const auto& [size, votes] : size_votes)
      if (votes >= best) {
        best = votes;
        cand.block.font_size = size;
      }
    cand.block.bold =
        bold_votes * 2 >= static_cast<int>(cand.lines.size()) && bold_votes > 0;
    out.push_back(std::move(cand));
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const CaptionCandidate& a, const CaptionCandidate& b) {
                     if (a.page_index != b.page_index)
                       return a.page_index < b.page_index;
                     if (a.block.bbox.y0 != b.block.bbox.y0)
                       return a.block.bbox.y0 < b.block.bbox.y0;
                     return a.block.bbox.x0 < b.block.bbox.x0;
                   });
  return out;
}

double heuristic_score(CaptionCandidate& cand, const VisualElement& el,
                       const std::vector<PagePtr>& pages,
                       const CaptionParams& params) {
  cand.features.keyword_hit = keyword_prefix_hit(cand.block.text, params.keywords);
  cand.features.enumeration_hit =
      enumeration_hit(cand.block.text, params.keywords);

  const double gap = stacked_vertical_gap(cand, el, pages);
  cand.features.distance_pts = gap;
  const double reach = params.window_scale * el.bbox.height();
  const double proximity = reach > 0 ? std::max(0.0, 1.0 - gap / reach) : 0.0;

  const PageModel* cand_page = page_at(pages, cand.page_index);
  const double med_font = cand_page ? median_font_size(*cand_page) : 12.0;
  const double size_ratio =
      med_font > 0 ? std::min(1.0, cand.block.font_size / (1.2 * med_font))
                   : 0.0;
  cand.features.style_score = 0.5 * (cand.block.bold ? 1.0 : 0.0) +
                              0.5 * size_ratio;

  const double h = params.keyword_weight * (cand.features.keyword_hit ? 1 : 0) +
                   params.proximity_weight * proximity +
                   params.style_weight * cand.features.style_score +
                   params.enumeration_weight *
                       (cand.features.enumeration_hit ? 1 : 0);
  cand.layout_score = std::clamp(h, 0.0, 1.0);
  return cand.layout_score;
}

double semantic_score(const CaptionCandidate& cand, const VisualElement& el,
                      EmbeddingProvider* provider,
                      std::vector<std::string>* warnings) {
  if (!provider) return 0.5;
  if (!el.image.pixels || !el.image.pixels->valid()) return 0.5;
  try {
    const double cos = cosine(provider->embed_text(cand.block.text),
                              provider->embed_image(*el.image.pixels));
    return std::clamp((cos + 1.0) / 2.0, 0.0, 1.0);
  } catch (const std::exception& e) {
    if (warnings)
      warnings->push_back(std::string("semantic caption score degraded: ") +
                          e.what());
    return 0.5;
  }
}

std::vector<CaptionMatch> associate_captions(
    const std::vector<VisualElement>& elements,
    const std::vector<PagePtr>& pages, EmbeddingProvider* provider,
    const CaptionParams& params, std::vector<std::string>* warnings) {
  struct Scored {
    CaptionCandidate cand;
    std::string key;
  };
  std::vector<std::vector<Scored>> ranked(elements.size());

  for (std::size_t e = 0; e < elements.size(); ++e) {
    const VisualElement& el = elements[e];
    const PageModel* page = page_at(pages, el.page_index);
    if (!page) continue;

    const std::vector<CaptionLine> lines = context_window(el, pages, params);
    std::vector<CaptionCandidate> cands =
        cluster_lines(lines, params.cluster_eps, median_line_height(*page),
                      pages);
    for (CaptionCandidate& cand : cands) {
      heuristic_score(cand, el, pages, params);
      cand.semantic_score = semantic_score(cand, el, provider, warnings);
      cand.fused_score = params.fusion_alpha * cand.layout_score +
                         (1.0 - params.fusion_alpha) * cand.semantic_score;
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const CaptionCandidate& a, const CaptionCandidate& b) {
                       if (a.fused_score != b.fused_score)
                         return a.fused_score > b.fused_score;
                       if (a.features.distance_pts != b.features.distance_pts)
                         return a.features.distance_pts < b.features.distance_pts;
                       if (a.page_index != b.page_index)
                         return a.page_index < b.page_index;
                       return a.block.text < b.block.text;
                     });
    for (CaptionCandidate& cand : cands)
      ranked[e].push_back(Scored{std::move(cand), ""});
    for (Scored& s : ranked[e]) s.key = candidate_key(s.cand);
  }

  // Conflict resolution: each candidate block captions at most one element.
  // Contenders propose their current best; per block the strongest fused
  // score wins (closer element, then lower index on exact ties) and losers
  // advance to their next-best candidate.
  std::vector<std::size_t> ptr(elements.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::string, std::vector<std::size_t>> claims;
    for (std::size_t e = 0; e < elements.size(); ++e)
      if (ptr[e] < ranked[e].size())
        claims[ranked[e][ptr[e]].key].push_back(e);
    for (const auto& [key, contenders] : claims) {
      if (contenders.size() < 2) continue;
      std::size_t winner = contenders.front();
      for (std::size_t e : contenders) {
        const auto& a = ranked[e][ptr[e]].cand;
        const auto& b = ranked[winner][ptr[winner]].cand;
        if (a.fused_score > b.fused_score ||
            (a.fused_score == b.fused_score &&
             a.features.distance_pts < b.features.distance_pts))
          winner = e;
      }
      for (std::size_t e : contenders)
        if (e != winner) {
          ++ptr[e];
          changed = true;
        }
    }
  }

  std::vector<CaptionMatch> out;
  for (std::size_t e = 0; e < elements.size(); ++e) {
    if (ptr[e] >= ranked[e].size()) continue;
    CaptionMatch m;
    m.element_index = e;
    m.candidate = ranked[e][ptr[e]].cand;
    m.text = normalize_text(m.candidate.block.text);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace pdfvex
