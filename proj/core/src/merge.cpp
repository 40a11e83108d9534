#include "pdfvex/merge.hpp"

#include <algorithm>
#include <map>

namespace pdfvex {

double iou_overlap(const BoundingBox& a, const BoundingBox& b) {
  return iou(a, b);
}

std::vector<std::vector<std::size_t>> overlap_components(
    const std::vector<BoundingBox>& boxes, double threshold) {
  const std::size_t n = boxes.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (iou_overlap(boxes[i], boxes[j]) > threshold) {
        const std::size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  out.reserve(groups.size());
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

std::vector<MergedImage> merge_images(const std::vector<ImageRegion>& images,
                                      const MergeParams& params) {
  std::vector<BoundingBox> boxes;
  boxes.reserve(images.size());
  for (const ImageRegion& im : images) boxes.push_back(im.bbox);

  std::vector<MergedImage> out;
  for (const auto& group : overlap_components(boxes, params.overlap_threshold)) {
    MergedImage merged;
    std::size_t primary = group.front();
    merged.bbox = images[group.front()].bbox;
    for (std::size_t idx : group) {
      merged.bbox = union_box(merged.bbox, images[idx].bbox);
      merged.parts.push_back(images[idx]);
      if (images[idx].bbox.area() > images[primary].bbox.area()) primary = idx;
    }
    merged.primary = images[primary];
    out.push_back(std::move(merged));
  }
  return out;
}

}  // namespace pdfvex
