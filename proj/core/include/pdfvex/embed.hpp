#ifndef PDFVEX_EMBED_HPP
#define PDFVEX_EMBED_HPP

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdfvex/raster.hpp"

namespace pdfvex {

struct EmbeddingVector {
  std::vector<float> values;
  std::size_t dimension() const { return values.size(); }
};

class EmbeddingUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class OcrUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class UndecodableImage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Standard cosine similarity in [-1,1]; zero vectors compare as 0.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

/// Text/image embedding source. Implementations must be deterministic for a
/// fixed input and safe for concurrent calls.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual EmbeddingVector embed_text(const std::string& text) = 0;
  virtual EmbeddingVector embed_image(const RasterImage& raster) = 0;
};

class OcrProvider {
 public:
  virtual ~OcrProvider() = default;
  virtual std::string ocr_text(const RasterImage& raster) = 0;
};

/// In-process deterministic reference provider.
///   text  -> L2-normalized character-trigram hash histogram (d=256)
///   image -> L2-normalized 16x16 grayscale thumbnail (d=256)
/// Text and image vectors share a dimension but not a semantic space; pair
/// them across modalities only through scripted test providers.
class StubEmbeddingProvider : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDimension = 256;
  EmbeddingVector embed_text(const std::string& text) override;
  EmbeddingVector embed_image(const RasterImage& raster) override;
};

/// Recognizes the fixed bitmap glyph grid the fixture corpus paints
/// (upper-case letters, digits, spaces). Rasters can also be planted by
/// digest, which wins over glyph matching.
class StubOcrProvider : public OcrProvider {
 public:
  std::string ocr_text(const RasterImage& raster) override;
  void plant(const std::string& pixel_digest_hex, const std::string& text);

 private:
  std::map<std::string, std::string> planted_;
};

/// Remote embedding client: POST {base_url}/embed with a JSON body
/// {"kind":"text"|"image","payload":...} where text payloads are UTF-8 and
/// image payloads are base64 PNG; expects {"vector":[...]}. Timeouts and
/// non-200 responses raise EmbeddingUnavailable. At most `max_inflight`
/// concurrent requests.
std::unique_ptr<EmbeddingProvider> make_remote_embedding_provider(
    const std::string& base_url, int timeout_ms = 5000, int max_inflight = 4);

/// Remote OCR client: POST {base_url}/ocr with {"payload": base64 PNG},
/// expects {"text": "..."}; failures raise OcrUnavailable.
std::unique_ptr<OcrProvider> make_remote_ocr_provider(
    const std::string& base_url, int timeout_ms = 5000, int max_inflight = 4);

}  // namespace pdfvex

#endif  // PDFVEX_EMBED_HPP
