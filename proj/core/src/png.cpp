#include "png.hpp"

#include <zlib.h>

#include <cstdint>
#include <fstream>
#include <stdexcept>

#include "pdf/document.hpp"

namespace pdfvex::png {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v >> 24));
  out.push_back(static_cast<char>(v >> 16));
  out.push_back(static_cast<char>(v >> 8));
  out.push_back(static_cast<char>(v));
}

void put_chunk(std::string& out, const char type[4], const std::string& data) {
  put_u32(out, static_cast<std::uint32_t>(data.size()));
  const std::size_t crc_from = out.size();
  out.append(type, 4);
  out += data;
  const auto* p = reinterpret_cast<const Bytef*>(out.data() + crc_from);
  const uLong crc = crc32(crc32(0L, nullptr, 0), p,
                          static_cast<uInt>(4 + data.size()));
  put_u32(out, static_cast<std::uint32_t>(crc));
}

}  // namespace

std::string encode(const RasterImage& img) {
  if (!img.valid()) throw std::runtime_error("png: raster has no pixels");

  std::string out("\x89PNG\r\n\x1a\n", 8);

  std::string ihdr;
  put_u32(ihdr, static_cast<std::uint32_t>(img.width));
  put_u32(ihdr, static_cast<std::uint32_t>(img.height));
  ihdr.push_back(8);   // bit depth
  ihdr.push_back(6);   // color type RGBA
  ihdr.push_back(0);   // compression
  ihdr.push_back(0);   // filter
  ihdr.push_back(0);   // no interlace
  put_chunk(out, "IHDR", ihdr);

  // Raw scanlines, filter byte 0 per row.
  std::vector<std::uint8_t> raw;
  raw.reserve(static_cast<std::size_t>(img.height) * (1 + 4 * img.width));
  for (int y = 0; y < img.height; ++y) {
    raw.push_back(0);
    const std::uint8_t* row = img.rgba.data() +
                              static_cast<std::size_t>(y) * img.width * 4;
    raw.insert(raw.end(), row, row + static_cast<std::size_t>(img.width) * 4);
  }
  const std::vector<std::uint8_t> z = pdf::flate_encode(raw);
  put_chunk(out, "IDAT", std::string(z.begin(), z.end()));
  put_chunk(out, "IEND", "");
  return out;
}

void write_file(const std::string& path, const RasterImage& img) {
  const std::string data = encode(img);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("png: cannot open " + path);
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!f) throw std::runtime_error("png: short write to " + path);
}

}  // namespace pdfvex::png
