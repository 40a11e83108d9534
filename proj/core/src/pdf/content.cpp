#include "pdf/content.hpp"

#include <algorithm>
#include <cmath>

#include "pdf/fonts.hpp"
#include "pdf/lexer.hpp"

namespace pdfvex::pdf {

namespace {

struct SimpleFont {
  bool bold = false;
  bool italic = false;
  double ascent = 0.75;    // per em
  double descent = -0.25;  // per em, negative
  std::array<double, 256> widths{};       // 1/1000 em per code
  std::array<char32_t, 256> unicode{};    // 0 = unmapped
};

SimpleFont make_simple_font(const Document& doc, const Object& font_obj) {
  SimpleFont out;
  out.widths.fill(500.0);

  const Object& fd = doc.resolve(font_obj);
  if (!fd.is_dict()) return out;

  std::string base;
  const Object& base_font = doc.resolve(fd.get("BaseFont"));
  if (base_font.is_name()) base = base_font.name();
  out.bold = base.find("Bold") != std::string::npos;
  out.italic = base.find("Italic") != std::string::npos ||
               base.find("Oblique") != std::string::npos;

  const BuiltinFont* builtin = find_builtin_font(base);
  if (builtin) {
    out.ascent = builtin->ascent / 1000.0;
    out.descent = builtin->descent / 1000.0;
    for (int c = 32; c <= 126; ++c)
      out.widths[static_cast<std::size_t>(c)] = builtin_width(*builtin, c);
  }

  const Object& descr = doc.resolve(fd.get("FontDescriptor"));
  if (descr.is_dict()) {
    const Object& asc = doc.resolve(descr.get("Ascent"));
    const Object& des = doc.resolve(descr.get("Descent"));
    if (asc.is_number() && asc.number() > 0) out.ascent = asc.number() / 1000.0;
    if (des.is_number() && des.number() < 0) out.descent = des.number() / 1000.0;
  }

  // Base encoding: ASCII range identity; WinAnsi adds the CP1252 high range.
  bool winansi = false;
  const Object& enc = doc.resolve(fd.get("Encoding"));
  if (enc.name_is("WinAnsiEncoding")) winansi = true;
  if (enc.is_dict() && doc.resolve(enc.get("BaseEncoding")).name_is("WinAnsiEncoding"))
    winansi = true;
  for (int c = 32; c <= 126; ++c)
    out.unicode[static_cast<std::size_t>(c)] = static_cast<char32_t>(c);
  if (winansi)
    for (int c = 128; c <= 255; ++c)
      out.unicode[static_cast<std::size_t>(c)] =
          winansi_to_unicode(static_cast<std::uint8_t>(c));

  if (enc.is_dict()) {
    const Object& diffs = doc.resolve(enc.get("Differences"));
    if (diffs.is_array()) {
      int code = 0;
      for (const Object& item : diffs.array()) {
        const Object& r = doc.resolve(item);
        if (r.is_number()) {
          code = static_cast<int>(r.number());
        } else if (r.is_name() && code >= 0 && code <= 255) {
          auto cp = glyph_name_to_unicode(r.name());
          out.unicode[static_cast<std::size_t>(code)] = cp.value_or(0);
          ++code;
        }
      }
    }
  }

  const Object& widths = doc.resolve(fd.get("Widths"));
  const Object& first = doc.resolve(fd.get("FirstChar"));
  if (widths.is_array() && first.is_number()) {
    int code = static_cast<int>(first.number());
    for (const Object& w : widths.array()) {
      if (code > 255) break;
      const Object& wr = doc.resolve(w);
      if (wr.is_number()) out.widths[static_cast<std::size_t>(code)] = wr.number();
      ++code;
    }
  }
  return out;
}

struct GfxState {
  Mat ctm;
};

struct TextState {
  Mat tm, tlm;
  double size = 0;
  double leading = 0;
  double char_spacing = 0;
  double word_spacing = 0;
  double hscale = 1.0;
  double rise = 0;
  const SimpleFont* font = nullptr;
};

class Interp {
 public:
  Interp(const Document& doc, const Dict& resources, ContentResult& out)
      : doc_(doc), out_(out) {
    resources_.push_back(resources);
  }

  void run(std::span<const std::uint8_t> content, int depth);

 private:
  void op_show_string(const std::string& s, TextState& ts, const Mat& ctm);
  void op_show_tj_array(const Array& items, TextState& ts, const Mat& ctm);
  void flush_path(bool emit);
  void do_xobject(const std::string& name, int depth);
  const Object& lookup_resource(const char* category, const std::string& name);

  const Document& doc_;
  ContentResult& out_;
  std::vector<Dict> resources_;
  std::vector<GfxState> gs_stack_;
  GfxState gs_;
  TextState ts_;
  bool in_text_ = false;

  // Current path, in user space (pre-CTM values are transformed on append).
  struct Seg {
    DrawOut::Kind kind;
    double ax, ay, bx, by;           // line endpoints (device)
    double x0, y0, x1, y1;           // bbox (device)
  };
  std::vector<Seg> path_;
  double cur_x_ = 0, cur_y_ = 0;      // user-space current point
  double start_x_ = 0, start_y_ = 0;  // subpath start
  bool have_point_ = false;

  std::map<std::string, SimpleFont> font_cache_;
};

const Object& Interp::lookup_resource(const char* category,
                                      const std::string& name) {
  static const Object null_obj;
  for (auto it = resources_.rbegin(); it != resources_.rend(); ++it) {
    Object res_obj{*it};
    const Object& cat = doc_.resolve(res_obj.get(category));
    if (!cat.is_dict()) continue;
    const Object& hit = cat.get(name);
    if (!hit.is_null()) return hit;
  }
  return null_obj;
}

void Interp::flush_path(bool emit) {
  if (emit) {
    for (const Seg& s : path_) {
      DrawOut d;
      d.kind = s.kind;
      d.x0 = s.x0;
      d.y0 = s.y0;
      d.x1 = s.x1;
      d.y1 = s.y1;
      d.ax = s.ax;
      d.ay = s.ay;
      d.bx = s.bx;
      d.by = s.by;
      out_.drawings.push_back(d);
    }
  }
  path_.clear();
  have_point_ = false;
}

void Interp::op_show_string(const std::string& s, TextState& ts,
                            const Mat& ctm) {
  if (!ts.font || ts.size == 0) return;
  const SimpleFont& font = *ts.font;

  // Text-space extents of this run, then advance Tm.
  double advance = 0;
  std::string utf8;
  for (unsigned char code : s) {
    const double w = font.widths[code] / 1000.0;
    advance += (w * ts.size + ts.char_spacing +
                (code == 32 ? ts.word_spacing : 0.0)) *
               ts.hscale;
    const char32_t cp = font.unicode[code];
    if (cp != 0) append_utf8(utf8, cp);
  }

  const Mat trm = ts.tm.mul(ctm);
  const double ry0 = font.descent * ts.size + ts.rise;
  const double ry1 = font.ascent * ts.size + ts.rise;

  double xs[4], ys[4];
  trm.apply(0, ry0, xs[0], ys[0]);
  trm.apply(advance, ry0, xs[1], ys[1]);
  trm.apply(0, ry1, xs[2], ys[2]);
  trm.apply(advance, ry1, xs[3], ys[3]);

  TextRunOut run;
  run.utf8 = std::move(utf8);
  run.x0 = *std::min_element(xs, xs + 4);
  run.x1 = *std::max_element(xs, xs + 4);
  run.y0 = *std::min_element(ys, ys + 4);
  run.y1 = *std::max_element(ys, ys + 4);
  double bx, by;
  trm.apply(0, 0, bx, by);
  run.baseline_y = by;
  double ux, uy, ox, oy;
  trm.apply(0, 0, ox, oy);
  trm.apply(0, 1, ux, uy);
  run.size = ts.size * std::hypot(ux - ox, uy - oy);
  run.bold = font.bold;
  run.italic = font.italic;
  if (!run.utf8.empty()) out_.runs.push_back(std::move(run));

  ts.tm = Mat::translate(advance, 0).mul(ts.tm);
}

void Interp::op_show_tj_array(const Array& items, TextState& ts,
                              const Mat& ctm) {
  for (const Object& item : items) {
    if (item.is_string()) {
      op_show_string(item.string(), ts, ctm);
    } else if (item.is_number()) {
      const double tx = -item.number() / 1000.0 * ts.size * ts.hscale;
      ts.tm = Mat::translate(tx, 0).mul(ts.tm);
    }
  }
}

void Interp::do_xobject(const std::string& name, int depth) {
  const Object& xo = doc_.resolve(lookup_resource("XObject", name));
  if (!xo.is_stream()) {
    out_.warnings.push_back("XObject /" + name + " unresolvable");
    return;
  }
  const Stream& s = *xo.stream();
  Object dict_obj{s.dict};
  const Object& subtype = doc_.resolve(dict_obj.get("Subtype"));

  if (subtype.name_is("Image")) {
    ImageOut img;
    img.pixel_width =
        static_cast<int>(doc_.resolve(dict_obj.get("Width")).number());
    img.pixel_height =
        static_cast<int>(doc_.resolve(dict_obj.get("Height")).number());
    double xs[4], ys[4];
    gs_.ctm.apply(0, 0, xs[0], ys[0]);
    gs_.ctm.apply(1, 0, xs[1], ys[1]);
    gs_.ctm.apply(0, 1, xs[2], ys[2]);
    gs_.ctm.apply(1, 1, xs[3], ys[3]);
    img.x0 = *std::min_element(xs, xs + 4);
    img.x1 = *std::max_element(xs, xs + 4);
    img.y0 = *std::min_element(ys, ys + 4);
    img.y1 = *std::max_element(ys, ys + 4);

    std::string why;
    auto raster = decode_image_xobject(doc_, s, &why);
    if (raster) {
      img.has_alpha = raster->has_alpha;
      img.raster = raster;
    } else {
      img.raw_digest_input.assign(s.raw.begin(), s.raw.end());
      out_.warnings.push_back("image /" + name + " not decoded: " + why);
    }
    out_.images.push_back(std::move(img));
    return;
  }

  if (subtype.name_is("Form")) {
    if (depth >= 8) {
      out_.warnings.push_back("form XObject nesting too deep");
      return;
    }
    auto data = doc_.decode_stream(s);
    if (!data) {
      out_.warnings.push_back("form XObject /" + name + " undecodable");
      return;
    }
    gs_stack_.push_back(gs_);
    const Object& mtx = doc_.resolve(dict_obj.get("Matrix"));
    if (mtx.is_array() && mtx.array().size() == 6) {
      Mat m;
      const Array& a = mtx.array();
      m.a = doc_.resolve(a[0]).number(1);
      m.b = doc_.resolve(a[1]).number(0);
      m.c = doc_.resolve(a[2]).number(0);
      m.d = doc_.resolve(a[3]).number(1);
      m.e = doc_.resolve(a[4]).number(0);
      m.f = doc_.resolve(a[5]).number(0);
      gs_.ctm = m.mul(gs_.ctm);
    }
    const Object& own_res = doc_.resolve(dict_obj.get("Resources"));
    const bool pushed_res = own_res.is_dict();
    if (pushed_res) resources_.push_back(own_res.dict());
    run(std::span<const std::uint8_t>(data->data(), data->size()), depth + 1);
    if (pushed_res) resources_.pop_back();
    gs_ = gs_stack_.back();
    gs_stack_.pop_back();
    return;
  }
  out_.warnings.push_back("XObject /" + name + " has unsupported subtype");
}

void Interp::run(std::span<const std::uint8_t> content, int depth) {
  Lexer lex(content);
  std::vector<Object> stack;

  auto num = [&](std::size_t from_top) -> double {
    const std::size_t n = stack.size();
    if (from_top >= n) return 0.0;
    return stack[n - 1 - from_top].number();
  };

  while (true) {
    Token t = lex.next();
    if (t.type == TokenType::Eof) break;

    switch (t.type) {
      case TokenType::Number:
        stack.emplace_back(t.number);
        continue;
      case TokenType::String:
        stack.emplace_back(t.text);
        continue;
      case TokenType::Name:
        stack.emplace_back(Name{t.text});
        continue;
      case TokenType::ArrayOpen: {
        // Re-parse a bracketed array (used by TJ and dash patterns).
        Array arr;
        int guard = 0;
        while (guard++ < 100000) {
          Token p = lex.next();
          if (p.type == TokenType::ArrayClose || p.type == TokenType::Eof)
            break;
          if (p.type == TokenType::Number) arr.emplace_back(p.number);
          else if (p.type == TokenType::String) arr.emplace_back(p.text);
          else if (p.type == TokenType::Name) arr.emplace_back(Name{p.text});
        }
        stack.emplace_back(std::move(arr));
        continue;
      }
      case TokenType::DictOpen: {
        // Inline dicts appear for BDC/DP marked content; consume shallowly.
        int dict_depth = 1;
        int guard = 0;
        while (dict_depth > 0 && guard++ < 100000) {
          Token p = lex.next();
          if (p.type == TokenType::DictOpen) ++dict_depth;
          else if (p.type == TokenType::DictClose) --dict_depth;
          else if (p.type == TokenType::Eof) break;
        }
        stack.emplace_back(Dict{});
        continue;
      }
      default:
        break;
    }
    if (t.type != TokenType::Keyword) {
      stack.clear();
      continue;
    }

    const std::string& op = t.text;

    if (op == "q") {
      gs_stack_.push_back(gs_);
    } else if (op == "Q") {
      if (!gs_stack_.empty()) {
        gs_ = gs_stack_.back();
        gs_stack_.pop_back();
      }
    } else if (op == "cm") {
      Mat m{num(5), num(4), num(3), num(2), num(1), num(0)};
      gs_.ctm = m.mul(gs_.ctm);
    } else if (op == "BT") {
      in_text_ = true;
      ts_.tm = Mat{};
      ts_.tlm = Mat{};
    } else if (op == "ET") {
      in_text_ = false;
    } else if (op == "Tf") {
      ts_.size = num(0);
      if (!stack.empty() && stack.size() >= 2 && stack[stack.size() - 2].is_name()) {
        const std::string fname = stack[stack.size() - 2].name();
        auto it = font_cache_.find(fname);
        if (it == font_cache_.end()) {
          const Object& fobj = lookup_resource("Font", fname);
          it = font_cache_.emplace(fname, make_simple_font(doc_, fobj)).first;
        }
        ts_.font = &it->second;
      }
    } else if (op == "Td") {
      ts_.tlm = Mat::translate(num(1), num(0)).mul(ts_.tlm);
      ts_.tm = ts_.tlm;
    } else if (op == "TD") {
      ts_.leading = -num(0);
      ts_.tlm = Mat::translate(num(1), num(0)).mul(ts_.tlm);
      ts_.tm = ts_.tlm;
    } else if (op == "Tm") {
      ts_.tlm = Mat{num(5), num(4), num(3), num(2), num(1), num(0)};
      ts_.tm = ts_.tlm;
    } else if (op == "T*") {
      ts_.tlm = Mat::translate(0, -ts_.leading).mul(ts_.tlm);
      ts_.tm = ts_.tlm;
    } else if (op == "TL") {
      ts_.leading = num(0);
    } else if (op == "Tc") {
      ts_.char_spacing = num(0);
    } else if (op == "Tw") {
      ts_.word_spacing = num(0);
    } else if (op == "Tz") {
      ts_.hscale = num(0) / 100.0;
    } else if (op == "Ts") {
      ts_.rise = num(0);
    } else if (op == "Tr") {
      // Render mode: extraction keeps invisible text too.
    } else if (op == "Tj") {
      if (!stack.empty() && stack.back().is_string())
        op_show_string(stack.back().string(), ts_, gs_.ctm);
    } else if (op == "'") {
      ts_.tlm = Mat::translate(0, -ts_.leading).mul(ts_.tlm);
      ts_.tm = ts_.tlm;
      if (!stack.empty() && stack.back().is_string())
        op_show_string(stack.back().string(), ts_, gs_.ctm);
    } else if (op == "\"") {
      ts_.word_spacing = num(2);
      ts_.char_spacing = num(1);
      ts_.tlm = Mat::translate(0, -ts_.leading).mul(ts_.tlm);
      ts_.tm = ts_.tlm;
      if (!stack.empty() && stack.back().is_string())
        op_show_string(stack.back().string(), ts_, gs_.ctm);
    } else if (op == "TJ") {
      if (!stack.empty() && stack.back().is_array())
        op_show_tj_array(stack.back().array(), ts_, gs_.ctm);
    } else if (op == "m") {
      cur_x_ = num(1);
      cur_y_ = num(0);
      start_x_ = cur_x_;
      start_y_ = cur_y_;
      have_point_ = true;
    } else if (op == "l") {
      if (have_point_) {
        Seg s;
        s.kind = DrawOut::Kind::Line;
        gs_.ctm.apply(cur_x_, cur_y_, s.ax, s.ay);
        gs_.ctm.apply(num(1), num(0), s.bx, s.by);
        s.x0 = std::min(s.ax, s.bx);
        s.x1 = std::max(s.ax, s.bx);
        s.y0 = std::min(s.ay, s.by);
        s.y1 = std::max(s.ay, s.by);
        path_.push_back(s);
      }
      cur_x_ = num(1);
      cur_y_ = num(0);
      have_point_ = true;
    } else if (op == "re") {
      const double x = num(3), y = num(2), w = num(1), h = num(0);
      double xs[4], ys[4];
      gs_.ctm.apply(x, y, xs[0], ys[0]);
      gs_.ctm.apply(x + w, y, xs[1], ys[1]);
      gs_.ctm.apply(x, y + h, xs[2], ys[2]);
      gs_.ctm.apply(x + w, y + h, xs[3], ys[3]);
      Seg s;
      s.kind = DrawOut::Kind::Rect;
      s.x0 = *std::min_element(xs, xs + 4);
      s.x1 = *std::max_element(xs, xs + 4);
      s.y0 = *std::min_element(ys, ys + 4);
      s.y1 = *std::max_element(ys, ys + 4);
      s.ax = s.x0; s.ay = s.y0; s.bx = s.x1; s.by = s.y1;
      path_.push_back(s);
      cur_x_ = x;
      cur_y_ = y;
      start_x_ = x;
      start_y_ = y;
      have_point_ = true;
    } else if (op == "c" || op == "v" || op == "y") {
      const int npts = (op == "c") ? 3 : 2;
      double ex = num(1), ey = num(0);
      Seg s;
      s.kind = DrawOut::Kind::Curve;
      double minx = cur_x_, maxx = cur_x_, miny = cur_y_, maxy = cur_y_;
      for (int i = 0; i < npts; ++i) {
        const double px = num(2 * i + 1), py = num(2 * i);
        minx = std::min(minx, px);
        maxx = std::max(maxx, px);
        miny = std::min(miny, py);
        maxy = std::max(maxy, py);
      }
      double xs[4], ys[4];
      gs_.ctm.apply(minx, miny, xs[0], ys[0]);
      gs_.ctm.apply(maxx, miny, xs[1], ys[1]);
      gs_.ctm.apply(minx, maxy, xs[2], ys[2]);
      gs_.ctm.apply(maxx, maxy, xs[3], ys[3]);
      s.x0 = *std::min_element(xs, xs + 4);
      s.x1 = *std::max_element(xs, xs + 4);
      s.y0 = *std::min_element(ys, ys + 4);
      s.y1 = *std::max_element(ys, ys + 4);
      path_.push_back(s);
      cur_x_ = ex;
      cur_y_ = ey;
      have_point_ = true;
    } else if (op == "h") {
      if (have_point_ && (cur_x_ != start_x_ || cur_y_ != start_y_)) {
        Seg s;
        s.kind = DrawOut::Kind::Line;
        gs_.ctm.apply(cur_x_, cur_y_, s.ax, s.ay);
        gs_.ctm.apply(start_x_, start_y_, s.bx, s.by);
        s.x0 = std::min(s.ax, s.bx);
        s.x1 = std::max(s.ax, s.bx);
        s.y0 = std::min(s.ay, s.by);
        s.y1 = std::max(s.ay, s.by);
        path_.push_back(s);
        cur_x_ = start_x_;
        cur_y_ = start_y_;
      }
    } else if (op == "S" || op == "s" || op == "f" || op == "F" ||
               op == "f*" || op == "B" || op == "B*" || op == "b" ||
               op == "b*") {
      if (op == "s" || op == "b") {
        // Implicit closepath.
        if (have_point_ && (cur_x_ != start_x_ || cur_y_ != start_y_)) {
          Seg s;
          s.kind = DrawOut::Kind::Line;
          gs_.ctm.apply(cur_x_, cur_y_, s.ax, s.ay);
          gs_.ctm.apply(start_x_, start_y_, s.bx, s.by);
          s.x0 = std::min(s.ax, s.bx);
          s.x1 = std::max(s.ax, s.bx);
          s.y0 = std::min(s.ay, s.by);
          s.y1 = std::max(s.ay, s.by);
          path_.push_back(s);
        }
      }
      flush_path(true);
    } else if (op == "n") {
      flush_path(false);
    } else if (op == "W" || op == "W*") {
      // Clipping intent: the following paint op decides emission.
    } else if (op == "Do") {
      if (!stack.empty() && stack.back().is_name())
        do_xobject(stack.back().name(), depth);
    } else if (op == "BI") {
      // Inline image: scan to EI at a token boundary.
      auto data = lex.bytes();
      std::size_t p = lex.pos();
      while (p + 1 < data.size()) {
        if (data[p] == 'E' && data[p + 1] == 'I' &&
            (p + 2 >= data.size() || is_pdf_whitespace(data[p + 2])) &&
            (p == 0 || is_pdf_whitespace(data[p - 1]))) {
          p += 2;
          break;
        }
        ++p;
      }
      lex.seek(p);
      out_.warnings.push_back("inline image skipped");
    }
    // Color, line style, marked content and similar ops: operands ignored.

    stack.clear();
  }
}

}  // namespace

ContentResult run_content(const Document& doc, const Dict& resources,
                          std::span<const std::uint8_t> content) {
  ContentResult out;
  Interp interp(doc, resources, out);
  interp.run(content, 0);
  return out;
}

std::shared_ptr<RasterImage> decode_image_xobject(const Document& doc,
                                                  const Stream& s,
                                                  std::string* why_not) {
  auto fail = [&](const char* why) -> std::shared_ptr<RasterImage> {
    if (why_not) *why_not = why;
    return nullptr;
  };

  Object dict_obj{s.dict};
  const int w = static_cast<int>(doc.resolve(dict_obj.get("Width")).number());
  const int h = static_cast<int>(doc.resolve(dict_obj.get("Height")).number());
  if (w <= 0 || h <= 0 || static_cast<long long>(w) * h > 64'000'000)
    return fail("bad dimensions");

  const int bpc =
      static_cast<int>(doc.resolve(dict_obj.get("BitsPerComponent")).number(8));
  if (bpc != 8) return fail("only 8 bits per component supported");

  const Object& cs = doc.resolve(dict_obj.get("ColorSpace"));
  int ncomp;
  if (cs.name_is("DeviceRGB")) ncomp = 3;
  else if (cs.name_is("DeviceGray")) ncomp = 1;
  else return fail("unsupported color space");

  auto data = doc.decode_stream(s);
  if (!data) return fail("unsupported stream filter");
  const std::size_t need = static_cast<std::size_t>(w) * h * ncomp;
  if (data->size() < need) return fail("short image data");

  auto img = std::make_shared<RasterImage>();
  img->width = w;
  img->height = h;
  img->rgba.resize(static_cast<std::size_t>(w) * h * 4);
  for (std::size_t i = 0, px = 0; px < static_cast<std::size_t>(w) * h; ++px) {
    std::uint8_t r, g, b;
    if (ncomp == 3) {
      r = (*data)[i];
      g = (*data)[i + 1];
      b = (*data)[i + 2];
      i += 3;
    } else {
      r = g = b = (*data)[i++];
    }
    img->rgba[4 * px] = r;
    img->rgba[4 * px + 1] = g;
    img->rgba[4 * px + 2] = b;
    img->rgba[4 * px + 3] = 255;
  }

  const Object& smask = doc.resolve(dict_obj.get("SMask"));
  if (smask.is_stream()) {
    const Stream& ms = *smask.stream();
    Object mdict{ms.dict};
    const int mw = static_cast<int>(doc.resolve(mdict.get("Width")).number());
    const int mh = static_cast<int>(doc.resolve(mdict.get("Height")).number());
    auto mdata = doc.decode_stream(ms);
    if (mdata && mw > 0 && mh > 0 &&
        mdata->size() >= static_cast<std::size_t>(mw) * mh) {
      img->has_alpha = true;
      if (mw == w && mh == h) {
        for (std::size_t px = 0; px < static_cast<std::size_t>(w) * h; ++px)
          img->rgba[4 * px + 3] = (*mdata)[px];
      } else {
        // Nearest-neighbor resample of the mask onto the base grid.
        for (int y = 0; y < h; ++y) {
          const int sy = static_cast<int>(static_cast<long long>(y) * mh / h);
          for (int x = 0; x < w; ++x) {
            const int sx = static_cast<int>(static_cast<long long>(x) * mw / w);
            img->rgba[4 * (static_cast<std::size_t>(y) * w + x) + 3] =
                (*mdata)[static_cast<std::size_t>(sy) * mw + sx];
          }
        }
      }
    }
  }
  return img;
}

}  // namespace pdfvex::pdf
