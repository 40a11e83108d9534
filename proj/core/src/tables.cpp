#include "pdfvex/tables.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace pdfvex {

namespace {

bool text_is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

/// Connected components over boxes where two boxes join when the gap between
/// them is at most max_gap; each component collapses to its union box.
std::vector<BoundingBox> cluster_union(const std::vector<BoundingBox>& boxes,
                                       double max_gap) {
  const std::size_t n = boxes.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (box_gap(boxes[i], boxes[j]) <= max_gap) parent[find(i)] = find(j);

  std::map<std::size_t, BoundingBox> acc;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    auto it = acc.find(root);
    if (it == acc.end())
      acc.emplace(root, boxes[i]);
    else
      it->second = union_box(it->second, boxes[i]);
  }
  std::vector<BoundingBox> out;
  out.reserve(acc.size());
  for (auto& [root, box] : acc) out.push_back(box);
  std::sort(out.begin(), out.end(), [](const BoundingBox& a, const BoundingBox& b) {
    if (a.y0 != b.y0) return a.y0 < b.y0;
    return a.x0 < b.x0;
  });
  return out;
}

std::map<long long, int> rounded_multiplicity(const std::vector<TextBlock>& blocks,
                                              bool use_x) {
  std::map<long long, int> counts;
  for (const TextBlock& b : blocks) {
    if (text_is_blank(b.text)) continue;
    const double v = use_x ? b.bbox.x0 : b.bbox.y0;
    counts[std::llround(v)]++;
  }
  return counts;
}

}  // namespace

std::pair<int, int> count_alignments(const std::vector<TextBlock>& blocks) {
  int x_alignments = 0, y_alignments = 0;
  for (const auto& [coord, mult] : rounded_multiplicity(blocks, true))
    if (mult >= 3) ++x_alignments;
  for (const auto& [coord, mult] : rounded_multiplicity(blocks, false))
    if (mult >= 3) ++y_alignments;
  return {x_alignments, y_alignments};
}

TableDetection detect_table(const PageModel& page, const TableParams& params) {
  TableDetection out;

  std::vector<BoundingBox> border_lines;
  for (const DrawingPrimitive& d : page.drawings) {
    if (d.kind != DrawKind::Line) continue;
    if (params.min_line_length > 0 && d.length() < params.min_line_length)
      continue;
    border_lines.push_back(d.bbox);
  }
  out.evidence.line_count = static_cast<int>(border_lines.size());
  auto [xa, ya] = count_alignments(page.blocks);
  out.evidence.x_alignments = xa;
  out.evidence.y_alignments = ya;

  if (out.evidence.line_count >= params.min_lines &&
      out.evidence.line_count > 0) {
    out.present = true;
    out.kind = TableKind::Bordered;
    out.regions = cluster_union(border_lines, params.region_split_gap);
    return out;
  }

  if (xa >= params.min_alignments && ya >= params.min_alignments) {
    // Blocks sitting on both a qualifying column and a qualifying row form
    // the grid body.
    std::set<long long> good_x, good_y;
    for (const auto& [coord, mult] : rounded_multiplicity(page.blocks, true))
      if (mult >= 3) good_x.insert(coord);
    for (const auto& [coord, mult] : rounded_multiplicity(page.blocks, false))
      if (mult >= 3) good_y.insert(coord);

    std::vector<BoundingBox> members;
    for (const TextBlock& b : page.blocks) {
      if (text_is_blank(b.text)) continue;
      if (good_x.count(std::llround(b.bbox.x0)) &&
          good_y.count(std::llround(b.bbox.y0)))
        members.push_back(b.bbox);
    }
    if (!members.empty()) {
      out.present = true;
      out.kind = TableKind::Unbordered;
      out.regions = cluster_union(members, params.region_split_gap);
    }
  }
  return out;
}

const char* table_kind_name(TableKind kind) {
  switch (kind) {
    case TableKind::None: return "none";
    case TableKind::Bordered: return "bordered";
    case TableKind::Unbordered: return "unbordered";
  }
  return "none";
}

}  // namespace pdfvex
