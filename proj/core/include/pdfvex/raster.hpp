#ifndef PDFVEX_RASTER_HPP
#define PDFVEX_RASTER_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace pdfvex {

/// Decoded raster, always RGBA8 row-major. `has_alpha` records whether the
/// source carried an alpha plane at all; when false, every a byte is 255.
struct RasterImage {
  int width = 0;
  int height = 0;
  bool has_alpha = false;
  std::vector<std::uint8_t> rgba;  // width * height * 4

  static RasterImage filled(int w, int h, std::uint8_t r, std::uint8_t g,
                            std::uint8_t b, std::uint8_t a = 255);

  bool valid() const {
    return width > 0 && height > 0 &&
           rgba.size() == static_cast<std::size_t>(width) * height * 4;
  }

  std::uint8_t* pixel(int x, int y) { return rgba.data() + 4 * (y * width + x); }
  const std::uint8_t* pixel(int x, int y) const {
    return rgba.data() + 4 * (y * width + x);
  }

  void set_pixel(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b,
                 std::uint8_t a = 255);

  std::uint8_t min_alpha() const;
  double mean_alpha() const;  // in [0,1]
};

/// Luminance of the raster composited over a white background, one byte per
/// pixel. Semi-transparent ink therefore reads lighter than opaque ink.
std::vector<std::uint8_t> grayscale_over_white(const RasterImage& img);

/// Stable hex digest of the decoded pixel stream (dimensions + RGBA bytes).
/// Byte-identical decodes hash identically regardless of how the source
/// stream was compressed.
std::string pixel_digest(const RasterImage& img);

/// Hex digest of an arbitrary byte buffer (used for source PDF digests).
std::string bytes_digest(const std::uint8_t* data, std::size_t size);
std::string bytes_digest(const std::string& data);

}  // namespace pdfvex

#endif  // PDFVEX_RASTER_HPP
