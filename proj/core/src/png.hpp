#ifndef PDFVEX_SRC_PNG_HPP
#define PDFVEX_SRC_PNG_HPP

#include <string>

#include "pdfvex/raster.hpp"

namespace pdfvex::png {

/// Serializes the raster as an 8-bit RGBA PNG (single zlib-compressed IDAT,
/// no interlacing). Throws std::runtime_error on invalid rasters.
std::string encode(const RasterImage& img);

void write_file(const std::string& path, const RasterImage& img);

}  // namespace pdfvex::png

#endif  // PDFVEX_SRC_PNG_HPP
