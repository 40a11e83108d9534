#include "pdfvex/raster.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>

namespace pdfvex {

RasterImage RasterImage::filled(int w, int h, std::uint8_t r, std::uint8_t g,
                                std::uint8_t b, std::uint8_t a) {
  RasterImage img;
  img.width = w;
  img.height = h;
  img.has_alpha = a != 255;
  img.rgba.resize(static_cast<std::size_t>(w) * h * 4);
  for (std::size_t i = 0; i < img.rgba.size(); i += 4) {
    img.rgba[i] = r;
    img.rgba[i + 1] = g;
    img.rgba[i + 2] = b;
    img.rgba[i + 3] = a;
  }
  return img;
}

void RasterImage::set_pixel(int x, int y, std::uint8_t r, std::uint8_t g,
                            std::uint8_t b, std::uint8_t a) {
  if (x < 0 || y < 0 || x >= width || y >= height) return;
  std::uint8_t* p = pixel(x, y);
  p[0] = r;
  p[1] = g;
  p[2] = b;
  p[3] = a;
  if (a != 255) has_alpha = true;
}

std::uint8_t RasterImage::min_alpha() const {
  std::uint8_t m = 255;
  for (std::size_t i = 3; i < rgba.size(); i += 4) m = std::min(m, rgba[i]);
  return m;
}

double RasterImage::mean_alpha() const {
  if (rgba.empty()) return 1.0;
  std::uint64_t sum = 0;
  for (std::size_t i = 3; i < rgba.size(); i += 4) sum += rgba[i];
  const std::size_t n = rgba.size() / 4;
  return static_cast<double>(sum) / (255.0 * static_cast<double>(n));
}

std::vector<std::uint8_t> grayscale_over_white(const RasterImage& img) {
  std::vector<std::uint8_t> gray(static_cast<std::size_t>(img.width) *
                                 img.height);
  for (std::size_t i = 0, j = 0; j < gray.size(); i += 4, ++j) {
    const double a = img.rgba[i + 3] / 255.0;
    const double r = img.rgba[i] * a + 255.0 * (1.0 - a);
    const double g = img.rgba[i + 1] * a + 255.0 * (1.0 - a);
    const double b = img.rgba[i + 2] * a + 255.0 * (1.0 - a);
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    gray[j] = static_cast<std::uint8_t>(y < 0 ? 0 : (y > 255 ? 255 : y + 0.5));
  }
  return gray;
}

namespace {

std::string sha256_hex(const void* data, std::size_t size,
                       const void* prefix = nullptr, std::size_t prefix_size = 0) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int md_len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  if (prefix && prefix_size) EVP_DigestUpdate(ctx, prefix, prefix_size);
  if (data && size) EVP_DigestUpdate(ctx, data, size);
  EVP_DigestFinal_ex(ctx, md, &md_len);
  EVP_MD_CTX_free(ctx);

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(md_len * 2);
  for (unsigned int i = 0; i < md_len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

}  // namespace

std::string pixel_digest(const RasterImage& img) {
  std::uint32_t dims[2] = {static_cast<std::uint32_t>(img.width),
                           static_cast<std::uint32_t>(img.height)};
  return sha256_hex(img.rgba.data(), img.rgba.size(), dims, sizeof(dims));
}

std::string bytes_digest(const std::uint8_t* data, std::size_t size) {
  return sha256_hex(data, size);
}

std::string bytes_digest(const std::string& data) {
  return sha256_hex(data.data(), data.size());
}

}  // namespace pdfvex
