#ifndef PDFVEX_PDF_BACKEND_HPP
#define PDFVEX_PDF_BACKEND_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdfvex/page_model.hpp"

namespace pdfvex {

struct PdfError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structurally unparsable document (bad header, broken xref, truncation).
struct MalformedPdf : PdfError {
  using PdfError::PdfError;
};

/// Document requires a password; decryption is not supported.
struct EncryptedPdf : PdfError {
  using PdfError::PdfError;
};

/// Backend adapter contract. Turns raw PDF bytes into per-page primitive
/// bundles; everything downstream consumes only PageModel. Implementations
/// must be safe for concurrent load_document calls on distinct documents.
class PdfBackend {
 public:
  virtual ~PdfBackend() = default;
  virtual std::vector<PagePtr> load_document(
      std::span<const std::uint8_t> bytes) const = 0;
};

/// The built-in reader. Covers the vector-PDF subset this project targets:
/// classic xref tables (with /Prev chains), Flate and raw streams, simple
/// Type1 fonts with /Widths and /Differences encodings, image XObjects
/// (Gray/RGB, 8-bit, optional /SMask alpha), path and text operators, and
/// AcroForm widget annotations. Encrypted files raise EncryptedPdf; files
/// whose structure cannot be walked raise MalformedPdf. Per-page content
/// failures degrade to empty primitive lists plus a recorded warning.
class BuiltinPdfBackend final : public PdfBackend {
 public:
  std::vector<PagePtr> load_document(
      std::span<const std::uint8_t> bytes) const override;
};

std::vector<PagePtr> load_document(std::span<const std::uint8_t> bytes);
std::vector<PagePtr> load_document(const std::string& bytes);
std::vector<PagePtr> load_document_file(const std::string& path);

}  // namespace pdfvex

#endif  // PDFVEX_PDF_BACKEND_HPP
