#include "pdfvex/fixtures/pdf_writer.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "pdf/document.hpp"
#include "pdf/fonts.hpp"

namespace pdfvex::fixtures {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string escape_string(std::string_view raw) {
  std::string out;
  out.reserve(raw.size() + 2);
  for (unsigned char c : raw) {
    if (c == '(' || c == ')' || c == '\\') {
      out.push_back('\\');
      out.push_back(static_cast<char>(c));
    } else if (c < 32 || c > 126) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\%03o", c);
      out += buf;
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

std::string deflate(const std::vector<std::uint8_t>& raw) {
  auto z = pdf::flate_encode(raw);
  return std::string(reinterpret_cast<const char*>(z.data()), z.size());
}

std::string deflate(const std::string& raw) {
  return deflate(std::vector<std::uint8_t>(raw.begin(), raw.end()));
}

}  // namespace

// ---------------------------------------------------------------------------
// PageBuilder

BoundingBox PageBuilder::text_codes(double x, double y_top,
                                    const std::vector<std::uint8_t>& codes,
                                    int font, double size) {
  const pdf::BuiltinFont* bf =
      pdf::find_builtin_font(owner_->fonts_.at(static_cast<std::size_t>(font)).base);
  if (!bf) throw std::runtime_error("unknown base font");
  double w1000 = 0;
  std::string raw;
  for (std::uint8_t c : codes) {
    w1000 += owner_->glyph_width_1000(font, c);
    raw.push_back(static_cast<char>(c));
  }
  const double asc = bf->ascent / 1000.0;
  const double desc = bf->descent / 1000.0;
  const double baseline_pdf = height_ - (y_top + asc * size);

  content_ += "BT /F" + std::to_string(font) + " " + num(size) + " Tf 1 0 0 1 " +
              num(x) + " " + num(baseline_pdf) + " Tm (" + escape_string(raw) +
              ") Tj ET\n";
  return BoundingBox(x, y_top, x + w1000 / 1000.0 * size,
                     y_top + (asc - desc) * size);
}

BoundingBox PageBuilder::text_line(double x, double y_top,
                                   std::string_view text, int font,
                                   double size) {
  std::vector<std::uint8_t> codes(text.begin(), text.end());
  return text_codes(x, y_top, codes, font, size);
}

void PageBuilder::stroke_line(double x0, double y0, double x1, double y1,
                              double line_width) {
  content_ += "q " + num(line_width) + " w " + num(x0) + " " +
              num(height_ - y0) + " m " + num(x1) + " " + num(height_ - y1) +
              " l S Q\n";
}

void PageBuilder::stroke_rect(const BoundingBox& box, double line_width) {
  content_ += "q " + num(line_width) + " w " + num(box.x0) + " " +
              num(height_ - box.y1) + " " + num(box.width()) + " " +
              num(box.height()) + " re S Q\n";
}

void PageBuilder::fill_rect(const BoundingBox& box, double r, double g,
                            double b) {
  content_ += "q " + num(r) + " " + num(g) + " " + num(b) + " rg " +
              num(box.x0) + " " + num(height_ - box.y1) + " " +
              num(box.width()) + " " + num(box.height()) + " re f Q\n";
}

void PageBuilder::image(const RasterImage& pixels,
                        const BoundingBox& placement) {
  if (!pixels.valid()) throw std::runtime_error("image fixture without pixels");
  ImageData data;
  data.pixel_width = pixels.width;
  data.pixel_height = pixels.height;
  const std::size_t n =
      static_cast<std::size_t>(pixels.width) * static_cast<std::size_t>(pixels.height);
  data.rgb.reserve(n * 3);
  if (pixels.has_alpha) data.alpha.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    data.rgb.push_back(pixels.rgba[i * 4 + 0]);
    data.rgb.push_back(pixels.rgba[i * 4 + 1]);
    data.rgb.push_back(pixels.rgba[i * 4 + 2]);
    if (pixels.has_alpha) data.alpha.push_back(pixels.rgba[i * 4 + 3]);
  }
  images_.push_back(std::move(data));

  content_ += "q " + num(placement.width()) + " 0 0 " +
              num(placement.height()) + " " + num(placement.x0) + " " +
              num(height_ - placement.y1) + " cm /Im" +
              std::to_string(images_.size()) + " Do Q\n";
}

void PageBuilder::widget(WidgetKind kind, const std::string& name,
                         const BoundingBox& rect) {
  widgets_.push_back(WidgetData{kind, name, rect});
}

// ---------------------------------------------------------------------------
// PdfWriter

PdfWriter::PdfWriter() { fonts_.push_back(FontSpec{}); }

int PdfWriter::add_font(const FontSpec& spec) {
  if (!pdf::find_builtin_font(spec.base))
    throw std::runtime_error("unknown base font: " + spec.base);
  fonts_.push_back(spec);
  return static_cast<int>(fonts_.size()) - 1;
}

PageBuilder& PdfWriter::add_page(double width, double height) {
  pages_.emplace_back(new PageBuilder(this, width, height));
  return *pages_.back();
}

int PdfWriter::glyph_width_1000(int font, int code) const {
  const FontSpec& spec = fonts_.at(static_cast<std::size_t>(font));
  auto it = spec.diff_widths.find(code);
  if (it != spec.diff_widths.end()) return it->second;
  const pdf::BuiltinFont* bf = pdf::find_builtin_font(spec.base);
  if (bf && code >= 32 && code <= 126) return pdf::builtin_width(*bf, code);
  return 500;  // reader default for unknown codes
}

double PdfWriter::measure(std::string_view text, int font, double size) const {
  double w1000 = 0;
  for (unsigned char c : text) w1000 += glyph_width_1000(font, c);
  return w1000 / 1000.0 * size;
}

std::string PdfWriter::bytes() const {
  // Object ids: 1 catalog, 2 page tree, 3.. fonts, then per page: the page,
  // its contents, its images (data then soft mask), its widgets.
  struct PageIds {
    int page = 0, contents = 0;
    std::vector<std::pair<int, int>> images;  // (data, smask-or-0)
    std::vector<int> widgets;
  };
  int next = 3;
  std::vector<int> font_ids;
  for (std::size_t f = 0; f < fonts_.size(); ++f) font_ids.push_back(next++);
  std::vector<PageIds> ids(pages_.size());
  for (std::size_t p = 0; p < pages_.size(); ++p) {
    ids[p].page = next++;
    ids[p].contents = next++;
    for (const auto& im : pages_[p]->images_) {
      int data_id = next++;
      int smask_id = im.alpha.empty() ? 0 : next++;
      ids[p].images.emplace_back(data_id, smask_id);
    }
    for (std::size_t w = 0; w < pages_[p]->widgets_.size(); ++w)
      ids[p].widgets.push_back(next++);
  }
  const int total = next - 1;

  std::string out = "%PDF-1.5\n%\xE2\xE3\xCF\xD3\n";
  std::vector<std::size_t> offsets(static_cast<std::size_t>(total) + 1, 0);
  auto begin_obj = [&](int id) {
    offsets[static_cast<std::size_t>(id)] = out.size();
    out += std::to_string(id) + " 0 obj\n";
  };
  auto end_obj = [&] { out += "\nendobj\n"; };
  auto stream_obj = [&](int id, const std::string& dict_extra,
                        const std::string& data) {
    begin_obj(id);
    out += "<< /Length " + std::to_string(data.size()) +
           " /Filter /FlateDecode" + dict_extra + " >>\nstream\n";
    out += data;
    out += "\nendstream";
    end_obj();
  };

  // 1: catalog
  begin_obj(1);
  out += "<< /Type /Catalog /Pages 2 0 R";
  std::string all_widget_refs;
  for (const auto& pid : ids)
    for (int wid : pid.widgets)
      all_widget_refs += std::to_string(wid) + " 0 R ";
  if (!all_widget_refs.empty())
    out += " /AcroForm << /Fields [ " + all_widget_refs + "] >>";
  out += " >>";
  end_obj();

  // 2: page tree
  begin_obj(2);
  out += "<< /Type /Pages /Count " + std::to_string(pages_.size()) +
         " /Kids [ ";
  for (const auto& pid : ids) out += std::to_string(pid.page) + " 0 R ";
  out += "] >>";
  end_obj();

  // fonts
  for (std::size_t f = 0; f < fonts_.size(); ++f) {
    const FontSpec& spec = fonts_[f];
    begin_obj(font_ids[f]);
    out += "<< /Type /Font /Subtype /Type1 /BaseFont /" + spec.base;
    if (spec.differences.empty()) {
      out += " /Encoding /WinAnsiEncoding";
    } else {
      out += " /Encoding << /Type /Encoding /BaseEncoding /WinAnsiEncoding"
             " /Differences [ ";
      int prev = -2;
      for (const auto& [code, glyph] : spec.differences) {
        if (code != prev + 1) out += std::to_string(code) + " ";
        out += "/" + glyph + " ";
        prev = code;
      }
      out += "] >>";
      const int first = spec.differences.begin()->first;
      const int last = spec.differences.rbegin()->first;
      out += " /FirstChar " + std::to_string(first) + " /LastChar " +
             std::to_string(last) + " /Widths [ ";
      for (int c = first; c <= last; ++c)
        out += std::to_string(glyph_width_1000(static_cast<int>(f), c)) + " ";
      out += "]";
    }
    out += " >>";
    end_obj();
  }

  for (std::size_t p = 0; p < pages_.size(); ++p) {
    const PageBuilder& page = *pages_[p];
    const PageIds& pid = ids[p];

    begin_obj(pid.page);
    out += "<< /Type /Page /Parent 2 0 R /MediaBox [0 0 " + num(page.width_) +
           " " + num(page.height_) + "]";
    out += " /Resources << /Font << ";
    for (std::size_t f = 0; f < fonts_.size(); ++f)
      out += "/F" + std::to_string(f) + " " + std::to_string(font_ids[f]) +
             " 0 R ";
    out += ">>";
    if (!pid.images.empty()) {
      out += " /XObject << ";
      for (std::size_t i = 0; i < pid.images.size(); ++i)
        out += "/Im" + std::to_string(i + 1) + " " +
               std::to_string(pid.images[i].first) + " 0 R ";
      out += ">>";
    }
    out += " >> /Contents " + std::to_string(pid.contents) + " 0 R";
    if (!pid.widgets.empty()) {
      out += " /Annots [ ";
      for (int wid : pid.widgets) out += std::to_string(wid) + " 0 R ";
      out += "]";
    }
    out += " >>";
    end_obj();

    stream_obj(pid.contents, "", deflate(page.content_));

    for (std::size_t i = 0; i < page.images_.size(); ++i) {
      const auto& im = page.images_[i];
      const auto [data_id, smask_id] = pid.images[i];
      std::string extra = " /Type /XObject /Subtype /Image /Width " +
                          std::to_string(im.pixel_width) + " /Height " +
                          std::to_string(im.pixel_height) +
                          " /ColorSpace /DeviceRGB /BitsPerComponent 8";
      if (smask_id) extra += " /SMask " + std::to_string(smask_id) + " 0 R";
      stream_obj(data_id, extra, deflate(im.rgb));
      if (smask_id) {
        stream_obj(smask_id,
                   " /Type /XObject /Subtype /Image /Width " +
                       std::to_string(im.pixel_width) + " /Height " +
                       std::to_string(im.pixel_height) +
                       " /ColorSpace /DeviceGray /BitsPerComponent 8",
                   deflate(im.alpha));
      }
    }

    for (std::size_t w = 0; w < page.widgets_.size(); ++w) {
      const auto& wd = page.widgets_[w];
      begin_obj(pid.widgets[w]);
      std::string ft = "Tx";
      long long flags = 0;
      switch (wd.kind) {
        case WidgetKind::Text: ft = "Tx"; break;
        case WidgetKind::Checkbox: ft = "Btn"; break;
        case WidgetKind::Radio: ft = "Btn"; flags = 1LL << 15; break;
        case WidgetKind::Combo: ft = "Ch"; flags = 1LL << 17; break;
        case WidgetKind::Signature: ft = "Sig"; break;
        case WidgetKind::Pushbutton: ft = "Btn"; flags = 1LL << 16; break;
      }
      out += "<< /Type /Annot /Subtype /Widget /F 4 /P " +
             std::to_string(pid.page) + " 0 R /Rect [" + num(wd.rect.x0) +
             " " + num(page.height_ - wd.rect.y1) + " " + num(wd.rect.x1) +
             " " + num(page.height_ - wd.rect.y0) + "] /FT /" + ft;
      if (flags) out += " /Ff " + std::to_string(flags);
      if (!wd.name.empty()) out += " /T (" + escape_string(wd.name) + ")";
      out += " >>";
      end_obj();
    }
  }

  const std::size_t xref_at = out.size();
  out += "xref\n0 " + std::to_string(total + 1) + "\n";
  out += "0000000000 65535 f \n";
  char line[32];
  for (int id = 1; id <= total; ++id) {
    std::snprintf(line, sizeof line, "%010zu 00000 n \n",
                  offsets[static_cast<std::size_t>(id)]);
    out += line;
  }
  out += "trailer\n<< /Size " + std::to_string(total + 1) +
         " /Root 1 0 R >>\nstartxref\n" + std::to_string(xref_at) + "\n%%EOF\n";
  return out;
}

void PdfWriter::write_file(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  const std::string data = bytes();
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!f) throw std::runtime_error("short write: " + path);
}

}  // namespace pdfvex::fixtures
