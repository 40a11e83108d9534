#include "pdfvex/embed.hpp"

#include <algorithm>
#include <cmath>

#include "bitmapfont.hpp"

namespace pdfvex {

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension())
    throw DimensionMismatch("cosine: dimensions " +
                            std::to_string(a.dimension()) + " vs " +
                            std::to_string(b.dimension()));
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    dot += static_cast<double>(a.values[i]) * b.values[i];
    na += static_cast<double>(a.values[i]) * a.values[i];
    nb += static_cast<double>(b.values[i]) * b.values[i];
  }
  if (na <= 0 || nb <= 0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

namespace {

std::uint32_t fnv1a(const unsigned char* data, std::size_t n) {
  std::uint32_t h = 2166136261u;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= 16777619u;
  }
  return h;
}

EmbeddingVector normalized(std::vector<float> values) {
  double norm = 0;
  for (float v : values) norm += static_cast<double>(v) * v;
  if (norm > 0) {
    const float inv = static_cast<float>(1.0 / std::sqrt(norm));
    for (float& v : values) v *= inv;
  }
  return EmbeddingVector{std::move(values)};
}

}  // namespace

EmbeddingVector StubEmbeddingProvider::embed_text(const std::string& text) {
  std::vector<float> hist(kDimension, 0.0f);
  const auto* bytes = reinterpret_cast<const unsigned char*>(text.data());
  if (text.size() >= 3) {
    for (std::size_t i = 0; i + 3 <= text.size(); ++i)
      hist[fnv1a(bytes + i, 3) % kDimension] += 1.0f;
  } else if (!text.empty()) {
    hist[fnv1a(bytes, text.size()) % kDimension] += 1.0f;
  }
  return normalized(std::move(hist));
}

EmbeddingVector StubEmbeddingProvider::embed_image(const RasterImage& raster) {
  if (!raster.valid())
    throw UndecodableImage("stub embedding: raster has no pixels");
  const std::vector<std::uint8_t> gray = grayscale_over_white(raster);
  constexpr int kSide = 16;
  std::vector<float> cells(kDimension, 0.0f);
  for (int ty = 0; ty < kSide; ++ty) {
    for (int tx = 0; tx < kSide; ++tx) {
      int x0 = tx * raster.width / kSide;
      int x1 = std::max(x0 + 1, (tx + 1) * raster.width / kSide);
      int y0 = ty * raster.height / kSide;
      int y1 = std::max(y0 + 1, (ty + 1) * raster.height / kSide);
      x1 = std::min(x1, raster.width);
      y1 = std::min(y1, raster.height);
      x0 = std::min(x0, x1 - 1);
      y0 = std::min(y0, y1 - 1);
      double sum = 0;
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x)
          sum += gray[static_cast<std::size_t>(y) * raster.width + x];
      const double area = static_cast<double>(x1 - x0) * (y1 - y0);
      cells[static_cast<std::size_t>(ty) * kSide + tx] =
          static_cast<float>(sum / area / 255.0);
    }
  }
  return normalized(std::move(cells));
}

std::string StubOcrProvider::ocr_text(const RasterImage& raster) {
  if (!raster.valid()) return "";
  auto planted = planted_.find(pixel_digest(raster));
  if (planted != planted_.end()) return planted->second;

  // Binarize: anything darker than near-white counts as ink. This reads both
  // pre-thresholded masks (pure black on white) and raw fixture rasters
  // (semi-transparent glyphs composite to mid grays).
  const std::vector<std::uint8_t> gray = grayscale_over_white(raster);
  std::vector<std::uint8_t> ink(gray.size(), 0);
  for (std::size_t i = 0; i < gray.size(); ++i) ink[i] = gray[i] < 240 ? 1 : 0;
  return bitmapfont::read_mask(ink, raster.width, raster.height);
}

void StubOcrProvider::plant(const std::string& pixel_digest_hex,
                            const std::string& text) {
  planted_[pixel_digest_hex] = text;
}

}  // namespace pdfvex
