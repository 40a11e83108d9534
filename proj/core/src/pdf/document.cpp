#include "pdf/document.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <string>

#include "pdf/lexer.hpp"
#include "pdfvex/pdf/backend.hpp"

namespace pdfvex::pdf {

namespace {

constexpr int kMaxXrefSections = 64;
constexpr int kMaxRefChain = 32;
constexpr int kMaxPageTreeDepth = 64;

std::size_t find_last(std::span<const std::uint8_t> hay, const char* needle,
                      std::size_t tail_window) {
  const std::size_t n = std::strlen(needle);
  if (hay.size() < n) return std::string::npos;
  const std::size_t begin =
      hay.size() > tail_window ? hay.size() - tail_window : 0;
  for (std::size_t i = hay.size() - n + 1; i-- > begin;) {
    if (std::memcmp(hay.data() + i, needle, n) == 0) return i;
  }
  return std::string::npos;
}

}  // namespace

std::optional<std::vector<std::uint8_t>> flate_decode(
    std::span<const std::uint8_t> in) {
  std::vector<std::uint8_t> out;
  out.resize(std::max<std::size_t>(in.size() * 4, 1024));
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) return std::nullopt;
  zs.next_in = const_cast<Bytef*>(in.data());
  zs.avail_in = static_cast<uInt>(in.size());
  std::size_t written = 0;
  int rc = Z_OK;
  while (true) {
    zs.next_out = out.data() + written;
    zs.avail_out = static_cast<uInt>(out.size() - written);
    rc = inflate(&zs, Z_NO_FLUSH);
    written = out.size() - zs.avail_out;
    if (rc == Z_STREAM_END) break;
    if (rc != Z_OK && rc != Z_BUF_ERROR) {
      inflateEnd(&zs);
      return std::nullopt;
    }
    if (zs.avail_out == 0) {
      out.resize(out.size() * 2);
    } else if (rc == Z_BUF_ERROR) {
      break;  // input exhausted without stream end; accept what we have
    }
  }
  inflateEnd(&zs);
  out.resize(written);
  return out;
}

std::vector<std::uint8_t> flate_encode(std::span<const std::uint8_t> in) {
  uLongf bound = compressBound(static_cast<uLong>(in.size()));
  std::vector<std::uint8_t> out(bound);
  if (compress2(out.data(), &bound, in.data(), static_cast<uLong>(in.size()),
                Z_DEFAULT_COMPRESSION) != Z_OK) {
    return {};
  }
  out.resize(bound);
  return out;
}

Document Document::parse(std::span<const std::uint8_t> bytes) {
  Document doc;
  doc.bytes_ = bytes;
  if (bytes.size() < 8 || std::memcmp(bytes.data(), "%PDF-", 5) != 0)
    throw MalformedPdf("missing %PDF header");

  const std::size_t sx = find_last(bytes, "startxref", 2048);
  if (sx == std::string::npos) throw MalformedPdf("startxref not found");

  Lexer lex(bytes);
  lex.seek(sx);
  Token kw = lex.next();
  if (kw.type != TokenType::Keyword || kw.text != "startxref")
    throw MalformedPdf("startxref not found");
  Token off = lex.next();
  if (off.type != TokenType::Number || off.number < 0 ||
      static_cast<std::size_t>(off.number) >= bytes.size())
    throw MalformedPdf("bad startxref offset");

  doc.load_xref_chain(static_cast<std::size_t>(off.number));

  if (doc.trailer_.count("Encrypt"))
    throw EncryptedPdf("document is encrypted");
  if (!doc.trailer_.count("Root"))
    throw MalformedPdf("trailer has no /Root");
  return doc;
}

void Document::load_xref_chain(std::size_t start_offset) {
  load_xref_section(start_offset, 0);
}

void Document::load_xref_section(std::size_t offset, int depth) {
  if (depth >= kMaxXrefSections)
    throw MalformedPdf("xref /Prev chain too deep");

  Lexer lex(bytes_);
  lex.seek(offset);
  Token t = lex.next();
  if (t.type != TokenType::Keyword || t.text != "xref")
    throw MalformedPdf(
        "xref table not found at offset (cross-reference streams are not "
        "supported by this backend)");

  while (true) {
    Token a = lex.peek();
    if (a.type == TokenType::Keyword && a.text == "trailer") {
      lex.next();
      break;
    }
    a = lex.next();
    Token b = lex.next();
    if (a.type != TokenType::Number || b.type != TokenType::Number)
      throw MalformedPdf("bad xref subsection header");
    const int start = static_cast<int>(a.number);
    const int count = static_cast<int>(b.number);
    if (count < 0 || count > 1'000'000)
      throw MalformedPdf("implausible xref subsection size");
    for (int i = 0; i < count; ++i) {
      Token o = lex.next();
      Token g = lex.next();
      Token kind = lex.next();
      if (o.type != TokenType::Number || g.type != TokenType::Number ||
          kind.type != TokenType::Keyword)
        throw MalformedPdf("bad xref entry");
      if (kind.text == "n") {
        // Earlier sections in the chain win (they are newer).
        xref_.try_emplace(start + i, static_cast<std::size_t>(o.number));
      } else if (kind.text != "f") {
        throw MalformedPdf("bad xref entry kind");
      }
    }
  }

  Object trailer_obj = parse_value(lex);
  if (!trailer_obj.is_dict()) throw MalformedPdf("trailer is not a dictionary");
  const Dict& td = trailer_obj.dict();
  for (const auto& [k, v] : td) trailer_.try_emplace(k, v);

  auto prev = td.find("Prev");
  if (prev != td.end() && prev->second.is_number()) {
    const double p = prev->second.number();
    if (p >= 0 && static_cast<std::size_t>(p) < bytes_.size())
      load_xref_section(static_cast<std::size_t>(p), depth + 1);
  }
}

Object Document::parse_value(Lexer& lex) const {
  Token t = lex.next();
  switch (t.type) {
    case TokenType::Eof:
      return Object{};
    case TokenType::Number: {
      // Could be "num gen R" (reference). Probe two tokens ahead.
      const std::size_t save = lex.pos();
      Token t2 = lex.next();
      if (t2.type == TokenType::Number) {
        Token t3 = lex.next();
        if (t3.type == TokenType::Keyword && t3.text == "R") {
          return Object{Ref{static_cast<int>(t.number),
                            static_cast<int>(t2.number)}};
        }
      }
      lex.seek(save);
      return Object{t.number};
    }
    case TokenType::Name:
      return Object{Name{t.text}};
    case TokenType::String:
      return Object{t.text};
    case TokenType::ArrayOpen: {
      Array arr;
      while (true) {
        Token p = lex.peek();
        if (p.type == TokenType::ArrayClose) {
          lex.next();
          break;
        }
        if (p.type == TokenType::Eof) throw MalformedPdf("unterminated array");
        arr.push_back(parse_value(lex));
      }
      return Object{std::move(arr)};
    }
    case TokenType::DictOpen: {
      Dict dict;
      while (true) {
        Token p = lex.next();
        if (p.type == TokenType::DictClose) break;
        if (p.type != TokenType::Name)
          throw MalformedPdf("dictionary key is not a name");
        dict[p.text] = parse_value(lex);
      }
      // A stream body may follow.
      Token p = lex.peek();
      if (p.type == TokenType::Keyword && p.text == "stream") {
        lex.next();
        lex.skip_stream_eol();
        Object dict_obj{dict};
        const Object& len_obj = resolve(dict_obj.get("Length"));
        const long long len = len_obj.integer(-1);
        if (len < 0) throw MalformedPdf("stream without a valid /Length");
        auto raw = lex.read_raw(static_cast<std::size_t>(len));
        if (raw.size() != static_cast<std::size_t>(len))
          throw MalformedPdf("truncated stream body");
        Token end = lex.next();
        if (end.type != TokenType::Keyword || end.text != "endstream")
          throw MalformedPdf("missing endstream");
        auto s = std::make_shared<Stream>();
        s->dict = std::move(dict);
        s->raw.assign(raw.begin(), raw.end());
        return Object{std::move(s)};
      }
      return Object{std::move(dict)};
    }
    case TokenType::Keyword:
      if (t.text == "true") return Object{true};
      if (t.text == "false") return Object{false};
      if (t.text == "null") return Object{};
      throw MalformedPdf("unexpected keyword '" + t.text + "' in object");
    default:
      throw MalformedPdf("unexpected token in object");
  }
}

Object Document::parse_object_at(std::size_t offset) const {
  Lexer lex(bytes_);
  lex.seek(offset);
  Token num = lex.next();
  Token gen = lex.next();
  Token obj = lex.next();
  if (num.type != TokenType::Number || gen.type != TokenType::Number ||
      obj.type != TokenType::Keyword || obj.text != "obj")
    throw MalformedPdf("xref offset does not point at an object");
  Object value = parse_value(lex);
  // endobj is not strictly verified; some writers omit it after streams.
  return value;
}

const Object& Document::object(Ref ref) const {
  auto cached = cache_.find(ref.num);
  if (cached != cache_.end()) return cached->second;
  auto it = xref_.find(ref.num);
  static const Object null_obj;
  if (it == xref_.end()) return null_obj;
  Object value = parse_object_at(it->second);
  auto [ins, _] = cache_.emplace(ref.num, std::move(value));
  return ins->second;
}

const Object& Document::resolve(const Object& obj) const {
  const Object* cur = &obj;
  for (int i = 0; i < kMaxRefChain && cur->is_ref(); ++i)
    cur = &object(cur->ref());
  static const Object null_obj;
  if (cur->is_ref()) return null_obj;
  return *cur;
}

void Document::collect_pages(const Object& node, std::vector<Dict>& out,
                             Dict inherited, int depth) const {
  if (depth >= kMaxPageTreeDepth) throw MalformedPdf("page tree too deep");
  const Object& n = resolve(node);
  if (!n.is_dict()) return;

  for (const char* key : {"MediaBox", "Resources", "Rotate"}) {
    const Object& v = n.get(key);
    if (!v.is_null()) inherited[key] = v;
  }

  const Object& type = n.get("Type");
  if (type.name_is("Page")) {
    Dict page = n.dict();
    for (const auto& [k, v] : inherited) page.try_emplace(k, v);
    out.push_back(std::move(page));
    return;
  }
  // Treat as /Pages (some writers omit /Type on intermediate nodes).
  const Object& kids = resolve(n.get("Kids"));
  if (!kids.is_array()) {
    if (type.name_is("Pages")) return;  // empty intermediate node
    return;
  }
  for (const Object& kid : kids.array())
    collect_pages(kid, out, inherited, depth + 1);
}

std::vector<Dict> Document::pages() const {
  auto root_it = trailer_.find("Root");
  if (root_it == trailer_.end()) throw MalformedPdf("no /Root");
  const Object& catalog = resolve(root_it->second);
  if (!catalog.is_dict()) throw MalformedPdf("catalog unreadable");
  const Object& tree = catalog.get("Pages");
  if (tree.is_null()) throw MalformedPdf("catalog has no /Pages");
  std::vector<Dict> out;
  collect_pages(tree, out, {}, 0);
  return out;
}

std::optional<std::vector<std::uint8_t>> Document::decode_stream(
    const Stream& s) const {
  Object dict_obj{s.dict};
  const Object& filter = resolve(dict_obj.get("Filter"));
  if (filter.is_null()) return s.raw;

  std::vector<std::string> filters;
  if (filter.is_name()) {
    filters.push_back(filter.name());
  } else if (filter.is_array()) {
    for (const Object& f : filter.array()) {
      const Object& fr = resolve(f);
      if (fr.is_name()) filters.push_back(fr.name());
    }
  }

  std::vector<std::uint8_t> data = s.raw;
  for (const std::string& f : filters) {
    if (f == "FlateDecode" || f == "Fl") {
      auto decoded = flate_decode(data);
      if (!decoded) return std::nullopt;
      data = std::move(*decoded);
    } else {
      return std::nullopt;  // unsupported filter; caller records a warning
    }
  }
  return data;
}

}  // namespace pdfvex::pdf
