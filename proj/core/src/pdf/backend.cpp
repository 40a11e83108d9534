#include "pdfvex/pdf/backend.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "pdf/content.hpp"
#include "pdf/document.hpp"

namespace pdfvex {

namespace {

using pdf::ContentResult;
using pdf::Dict;
using pdf::Document;
using pdf::Object;

struct PageGeom {
  double origin_x = 0;
  double origin_y = 0;
  double width = 612;
  double height = 792;

  // Device (PDF, y up) to model (top-left, y down).
  BoundingBox flip(double x0, double y0, double x1, double y1) const {
    return BoundingBox(x0 - origin_x, height - (y1 - origin_y),
                       x1 - origin_x, height - (y0 - origin_y));
  }
  Point flip_point(double x, double y) const {
    return Point{x - origin_x, height - (y - origin_y)};
  }
};

PageGeom read_media_box(const Document& doc, const Dict& page) {
  PageGeom g;
  Object page_obj{page};
  const Object& mb = doc.resolve(page_obj.get("MediaBox"));
  if (mb.is_array() && mb.array().size() == 4) {
    const auto& a = mb.array();
    const double x0 = doc.resolve(a[0]).number(0);
    const double y0 = doc.resolve(a[1]).number(0);
    const double x1 = doc.resolve(a[2]).number(612);
    const double y1 = doc.resolve(a[3]).number(792);
    g.origin_x = std::min(x0, x1);
    g.origin_y = std::min(y0, y1);
    g.width = std::abs(x1 - x0);
    g.height = std::abs(y1 - y0);
  }
  return g;
}

struct LineAccum {
  BoundingBox bbox;
  double baseline = 0;
  double size = 0;
  bool bold = false;
  bool italic = false;
  std::string text;
};

// Groups device-flipped text runs into line fragments, then fragments into
// blocks. Fragments on one baseline split when the horizontal gap exceeds
// 1.5 em; blocks chain vertically while the leading stays tight and the
// x-ranges keep overlapping.
std::vector<TextBlock> assemble_blocks(std::vector<pdf::TextRunOut> runs,
                                       const PageGeom& geom) {
  struct Run {
    BoundingBox bbox;
    double baseline;
    double size;
    bool bold, italic;
    std::string text;
  };
  std::vector<Run> rs;
  rs.reserve(runs.size());
  for (auto& r : runs) {
    Run out;
    out.bbox = geom.flip(r.x0, r.y0, r.x1, r.y1);
    out.baseline = geom.flip_point(0, r.baseline_y).y;
    out.size = r.size;
    out.bold = r.bold;
    out.italic = r.italic;
    out.text = std::move(r.utf8);
    rs.push_back(std::move(out));
  }
  std::stable_sort(rs.begin(), rs.end(), [](const Run& a, const Run& b) {
    if (a.baseline != b.baseline) return a.baseline < b.baseline;
    return a.bbox.x0 < b.bbox.x0;
  });

  // Pass 1: baseline groups -> line fragments.
  std::vector<LineAccum> lines;
  std::size_t i = 0;
  while (i < rs.size()) {
    std::size_t j = i + 1;
    const double base = rs[i].baseline;
    double tol = std::max(1.0, 0.3 * rs[i].size);
    while (j < rs.size() && std::abs(rs[j].baseline - base) <= tol) ++j;

    std::vector<const Run*> group;
    for (std::size_t k = i; k < j; ++k) group.push_back(&rs[k]);
    std::stable_sort(group.begin(), group.end(),
                     [](const Run* a, const Run* b) {
                       return a->bbox.x0 < b->bbox.x0;
                     });

    LineAccum cur;
    bool open = false;
    for (const Run* r : group) {
      if (!open) {
        cur = LineAccum{r->bbox, r->baseline, r->size, r->bold, r->italic,
                        r->text};
        open = true;
        continue;
      }
      const double gap = r->bbox.x0 - cur.bbox.x1;
      const double em = std::max(cur.size, r->size);
      if (gap > 1.5 * em) {
        lines.push_back(cur);
        cur = LineAccum{r->bbox, r->baseline, r->size, r->bold, r->italic,
                        r->text};
        continue;
      }
      if (gap > 0.18 * em && !cur.text.empty() && cur.text.back() != ' ')
        cur.text.push_back(' ');
      cur.text += r->text;
      cur.bbox = union_box(cur.bbox, r->bbox);
      cur.size = std::max(cur.size, r->size);
      cur.bold = cur.bold && r->bold;
      cur.italic = cur.italic && r->italic;
    }
    if (open) lines.push_back(cur);
    i = j;
  }

  std::stable_sort(lines.begin(), lines.end(),
                   [](const LineAccum& a, const LineAccum& b) {
                     if (a.bbox.y0 != b.bbox.y0) return a.bbox.y0 < b.bbox.y0;
                     return a.bbox.x0 < b.bbox.x0;
                   });

  // Pass 2: chain fragments into blocks.
  struct BlockAccum {
    BoundingBox bbox;
    std::vector<LineAccum> lines;
  };
  std::vector<BlockAccum> blocks;
  for (const LineAccum& ln : lines) {
    BlockAccum* best = nullptr;
    double best_gap = 0;
    for (auto& blk : blocks) {
      const LineAccum& last = blk.lines.back();
      const double gap = ln.bbox.y0 - last.bbox.y1;
      const double lead_limit = 0.8 * std::max(ln.bbox.height(),
                                               last.bbox.height());
      if (gap > lead_limit) continue;
      if (ln.baseline <= last.baseline + 0.3 * std::max(ln.size, last.size))
        continue;  // same visual row: separate column, never chain
      const double xov = std::min(ln.bbox.x1, blk.bbox.x1) -
                         std::max(ln.bbox.x0, blk.bbox.x0);
      if (xov <= 0) continue;
      if (!best || gap < best_gap) {
        best = &blk;
        best_gap = gap;
      }
    }
    if (best) {
      best->lines.push_back(ln);
      best->bbox = union_box(best->bbox, ln.bbox);
    } else {
      blocks.push_back(BlockAccum{ln.bbox, {ln}});
    }
  }

  std::vector<TextBlock> out;
  out.reserve(blocks.size());
  for (auto& blk : blocks) {
    TextBlock tb;
    tb.bbox = blk.bbox;
    std::map<double, int> size_votes;
    int bold_votes = 0, italic_votes = 0;
    for (std::size_t k = 0; k < blk.lines.size(); ++k) {
      const LineAccum& ln = blk.lines[k];
      if (k) tb.text.push_back('\n');
      tb.text += ln.text;
      tb.line_spans.push_back(LineSpan{ln.bbox, ln.text});
      size_votes[ln.size]++;
      bold_votes += ln.bold ? 1 : 0;
      italic_votes += ln.italic ? 1 : 0;
    }
    int best_votes = 0;
    for (const auto& [size, votes] : size_votes) {
      if (votes >= best_votes) {  // ties resolve to the larger size
        best_votes = votes;
        tb.font_size = size;
      }
    }
    const std::size_t n = blk.lines.size();
    tb.bold = bold_votes * 2 >= static_cast<int>(n) && bold_votes > 0;
    tb.italic = italic_votes * 2 >= static_cast<int>(n) && italic_votes > 0;
    out.push_back(std::move(tb));
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const TextBlock& a, const TextBlock& b) {
                     if (a.bbox.y0 != b.bbox.y0) return a.bbox.y0 < b.bbox.y0;
                     return a.bbox.x0 < b.bbox.x0;
                   });
  return out;
}

FieldType map_field_type(const std::string& ft, long long flags) {
  if (ft == "Tx") return FieldType::Text;
  if (ft == "Sig") return FieldType::Signature;
  if (ft == "Btn") {
    if (flags & (1LL << 16)) return FieldType::Other;  // pushbutton
    if (flags & (1LL << 15)) return FieldType::Radio;
    return FieldType::Checkbox;
  }
  if (ft == "Ch") return FieldType::Combo;
  return FieldType::Other;
}

std::vector<FormWidget> extract_widgets(const Document& doc, const Dict& page,
                                        const PageGeom& geom) {
  std::vector<FormWidget> out;
  Object page_obj{page};
  const Object& annots = doc.resolve(page_obj.get("Annots"));
  if (!annots.is_array()) return out;

  for (const Object& aref : annots.array()) {
    const Object& a = doc.resolve(aref);
    if (!a.is_dict()) continue;
    if (!doc.resolve(a.get("Subtype")).name_is("Widget")) continue;

    // Field attributes may sit on the widget or anywhere up /Parent.
    std::string ft;
    long long flags = 0;
    std::vector<std::string> name_parts;
    const Object* node = &a;
    for (int depth = 0; depth < 16 && node->is_dict(); ++depth) {
      const Object& t = doc.resolve(node->get("T"));
      if (t.is_string() && !t.string().empty())
        name_parts.push_back(t.string());
      if (ft.empty()) {
        const Object& ftv = doc.resolve(node->get("FT"));
        if (ftv.is_name()) ft = ftv.name();
      }
      const Object& ff = doc.resolve(node->get("Ff"));
      if (ff.is_number() && flags == 0) flags = ff.integer();
      const Object& parent = node->get("Parent");
      if (parent.is_null()) break;
      node = &doc.resolve(parent);
    }

    FormWidget w;
    for (auto it = name_parts.rbegin(); it != name_parts.rend(); ++it) {
      if (!w.field_name.empty()) w.field_name.push_back('.');
      w.field_name += *it;
    }
    w.anonymous = w.field_name.empty();
    w.field_type = map_field_type(ft, flags);

    const Object& rect = doc.resolve(a.get("Rect"));
    if (rect.is_array() && rect.array().size() == 4) {
      const auto& r = rect.array();
      const double x0 = doc.resolve(r[0]).number();
      const double y0 = doc.resolve(r[1]).number();
      const double x1 = doc.resolve(r[2]).number();
      const double y1 = doc.resolve(r[3]).number();
      w.rect = geom.flip(std::min(x0, x1), std::min(y0, y1), std::max(x0, x1),
                         std::max(y0, y1));
    }
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::uint8_t> page_content_bytes(const Document& doc,
                                             const Dict& page,
                                             std::vector<std::string>& warns) {
  Object page_obj{page};
  const Object& contents = doc.resolve(page_obj.get("Contents"));
  std::vector<std::uint8_t> data;
  auto append_stream = [&](const Object& obj) {
    if (!obj.is_stream()) return;
    auto decoded = doc.decode_stream(*obj.stream());
    if (!decoded) {
      warns.push_back("content stream with unsupported filter skipped");
      return;
    }
    if (!data.empty()) data.push_back('\n');
    data.insert(data.end(), decoded->begin(), decoded->end());
  };
  if (contents.is_stream()) {
    append_stream(contents);
  } else if (contents.is_array()) {
    for (const Object& c : contents.array()) append_stream(doc.resolve(c));
  }
  return data;
}

PageModel build_page(const Document& doc, const Dict& page, int index) {
  PageModel model;
  model.page_index = index;
  const PageGeom geom = read_media_box(doc, page);
  model.width = geom.width;
  model.height = geom.height;

  Object page_obj{page};
  const Object& res = doc.resolve(page_obj.get("Resources"));
  const Dict empty_res;
  const Dict& resources = res.is_dict() ? res.dict() : empty_res;

  auto content = page_content_bytes(doc, page, model.warnings);
  ContentResult result = pdf::run_content(doc, resources, content);
  for (auto& w : result.warnings) model.warnings.push_back(std::move(w));

  model.blocks = assemble_blocks(std::move(result.runs), geom);
  for (auto& b : model.blocks) {
    b.bbox = clamp_to_page(b.bbox, model);
    for (auto& ls : b.line_spans) ls.bbox = clamp_to_page(ls.bbox, model);
  }

  for (const auto& d : result.drawings) {
    DrawingPrimitive p;
    switch (d.kind) {
      case pdf::DrawOut::Kind::Line: p.kind = DrawKind::Line; break;
      case pdf::DrawOut::Kind::Rect: p.kind = DrawKind::Rectangle; break;
      case pdf::DrawOut::Kind::Curve: p.kind = DrawKind::Curve; break;
    }
    p.bbox = clamp_to_page(geom.flip(d.x0, d.y0, d.x1, d.y1), model);
    if (p.kind == DrawKind::Line) {
      p.endpoints.push_back(geom.flip_point(d.ax, d.ay));
      p.endpoints.push_back(geom.flip_point(d.bx, d.by));
    }
    model.drawings.push_back(std::move(p));
  }

  for (auto& im : result.images) {
    ImageRegion region;
    region.bbox = clamp_to_page(geom.flip(im.x0, im.y0, im.x1, im.y1), model);
    region.pixel_width = im.pixel_width;
    region.pixel_height = im.pixel_height;
    region.has_alpha = im.has_alpha;
    region.pixels = im.raster;
    if (im.raster) {
      region.content_digest = pixel_digest(*im.raster);
    } else {
      region.content_digest =
          "raw-" + bytes_digest(reinterpret_cast<const std::uint8_t*>(
                                    im.raw_digest_input.data()),
                                im.raw_digest_input.size());
    }
    if (region.pixel_width <= 0 || region.pixel_height <= 0) {
      model.warnings.push_back("image with non-positive pixel dimensions dropped");
      continue;
    }
    model.images.push_back(std::move(region));
  }

  model.widgets = extract_widgets(doc, page, geom);
  for (auto& w : model.widgets) w.rect = clamp_to_page(w.rect, model);
  return model;
}

}  // namespace

const char* field_type_name(FieldType t) {
  switch (t) {
    case FieldType::Text: return "text";
    case FieldType::Checkbox: return "checkbox";
    case FieldType::Radio: return "radio";
    case FieldType::Combo: return "combo";
    case FieldType::Signature: return "signature";
    case FieldType::Other: return "other";
  }
  return "other";
}

std::vector<PagePtr> BuiltinPdfBackend::load_document(
    std::span<const std::uint8_t> bytes) const {
  Document doc = Document::parse(bytes);
  std::vector<Dict> page_dicts = doc.pages();

  std::vector<PagePtr> out;
  out.reserve(page_dicts.size());
  for (std::size_t i = 0; i < page_dicts.size(); ++i) {
    try {
      out.push_back(std::make_shared<PageModel>(
          build_page(doc, page_dicts[i], static_cast<int>(i))));
    } catch (const EncryptedPdf&) {
      throw;
    } catch (const std::exception& e) {
      // Degrade: a page we cannot interpret still occupies its slot.
      auto page = std::make_shared<PageModel>();
      page->page_index = static_cast<int>(i);
      const PageGeom geom = read_media_box(doc, page_dicts[i]);
      page->width = geom.width;
      page->height = geom.height;
      page->warnings.push_back(std::string("page primitives unavailable: ") +
                               e.what());
      out.push_back(std::move(page));
    }
  }
  return out;
}

std::vector<PagePtr> load_document(std::span<const std::uint8_t> bytes) {
  return BuiltinPdfBackend{}.load_document(bytes);
}

std::vector<PagePtr> load_document(const std::string& bytes) {
  return load_document(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
}

std::vector<PagePtr> load_document_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedPdf("cannot open file: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return load_document(bytes);
}

}  // namespace pdfvex
