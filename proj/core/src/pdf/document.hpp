#ifndef PDFVEX_SRC_PDF_DOCUMENT_HPP
#define PDFVEX_SRC_PDF_DOCUMENT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pdf/objects.hpp"

namespace pdfvex::pdf {

/// Low-level document: xref walking, object loading, stream decoding.
/// Throws MalformedPdf / EncryptedPdf (declared in pdfvex/pdf/backend.hpp).
class Document {
 public:
  static Document parse(std::span<const std::uint8_t> bytes);

  const Dict& trailer() const { return trailer_; }

  /// Follows a Ref (possibly chained) to the target object. Non-refs pass
  /// through unchanged. Unresolvable refs come back as null.
  const Object& resolve(const Object& obj) const;

  const Object& object(Ref ref) const;

  /// Page dictionaries in document order with inherited attributes
  /// (/MediaBox, /Resources) merged in.
  std::vector<Dict> pages() const;

  /// Decoded stream bytes (raw or FlateDecode). Unsupported filters yield
  /// std::nullopt so callers can degrade with a warning.
  std::optional<std::vector<std::uint8_t>> decode_stream(const Stream& s) const;

  std::span<const std::uint8_t> bytes() const { return bytes_; }

 private:
  Document() = default;
  void load_xref_chain(std::size_t start_offset);
  void load_xref_section(std::size_t offset, int depth);
  Object parse_object_at(std::size_t offset) const;
  Object parse_value(class Lexer& lex) const;
  void collect_pages(const Object& node, std::vector<Dict>& out, Dict inherited,
                     int depth) const;

  std::span<const std::uint8_t> bytes_;
  std::map<int, std::size_t> xref_;  // object number -> byte offset
  Dict trailer_;
  mutable std::map<int, Object> cache_;
};

std::optional<std::vector<std::uint8_t>> flate_decode(
    std::span<const std::uint8_t> in);
std::vector<std::uint8_t> flate_encode(std::span<const std::uint8_t> in);

}  // namespace pdfvex::pdf

#endif  // PDFVEX_SRC_PDF_DOCUMENT_HPP
