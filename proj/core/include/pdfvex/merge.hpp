#ifndef PDFVEX_MERGE_HPP
#define PDFVEX_MERGE_HPP

#include <cstddef>
#include <vector>

#include "pdfvex/page_model.hpp"

namespace pdfvex {

struct MergeParams {
  /// Two regions with intersection-over-union above this are fragments of a
  /// single picture.
  double overlap_threshold = 0.25;
};

/// Intersection area over union area; 0 when the union is degenerate.
double iou_overlap(const BoundingBox& a, const BoundingBox& b);

/// Connected components of the graph with an edge wherever
/// iou_overlap > threshold. Groups preserve input order within and across
/// components (ordered by smallest member index).
std::vector<std::vector<std::size_t>> overlap_components(
    const std::vector<BoundingBox>& boxes, double threshold);

struct MergedImage {
  BoundingBox bbox;                 // union over the component
  ImageRegion primary;              // largest-area member, carries the raster
  std::vector<ImageRegion> parts;   // every member, input order
};

/// Collapses fragmented/duplicated page images: overlap components become one
/// element each, keeping the largest fragment's raster and recording the rest
/// as provenance.
std::vector<MergedImage> merge_images(const std::vector<ImageRegion>& images,
                                      const MergeParams& params = {});

}  // namespace pdfvex

#endif  // PDFVEX_MERGE_HPP
