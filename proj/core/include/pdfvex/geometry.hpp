#ifndef PDFVEX_GEOMETRY_HPP
#define PDFVEX_GEOMETRY_HPP

#include <algorithm>
#include <cmath>

namespace pdfvex {

/// Axis-aligned rectangle in page points. Top-left origin, y grows downward.
/// Maintains x0 <= x1 and y0 <= y1; constructors normalize swapped corners.
struct BoundingBox {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  BoundingBox() = default;
  BoundingBox(double ax0, double ay0, double ax1, double ay1)
      : x0(std::min(ax0, ax1)),
        y0(std::min(ay0, ay1)),
        x1(std::max(ax0, ax1)),
        y1(std::max(ay0, ay1)) {}

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  double center_x() const { return 0.5 * (x0 + x1); }
  double center_y() const { return 0.5 * (y0 + y1); }
  bool empty() const { return area() <= 0.0; }

  bool contains(const BoundingBox& other, double tol = 0.0) const {
    return other.x0 >= x0 - tol && other.y0 >= y0 - tol &&
           other.x1 <= x1 + tol && other.y1 <= y1 + tol;
  }

  bool operator==(const BoundingBox& other) const = default;
};

inline BoundingBox intersect(const BoundingBox& a, const BoundingBox& b) {
  const double x0 = std::max(a.x0, b.x0);
  const double y0 = std::max(a.y0, b.y0);
  const double x1 = std::min(a.x1, b.x1);
  const double y1 = std::min(a.y1, b.y1);
  if (x0 > x1 || y0 > y1) return BoundingBox(x0, y0, x0, y0);  // degenerate
  return BoundingBox(x0, y0, x1, y1);
}

inline BoundingBox union_box(const BoundingBox& a, const BoundingBox& b) {
  return BoundingBox(std::min(a.x0, b.x0), std::min(a.y0, b.y0),
                     std::max(a.x1, b.x1), std::max(a.y1, b.y1));
}

inline double intersection_area(const BoundingBox& a, const BoundingBox& b) {
  const double w = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
  const double h = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

/// Intersection area over union area. Returns 0 when the union has zero area.
inline double iou(const BoundingBox& a, const BoundingBox& b) {
  const double inter = intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

/// Separation between two boxes: 0 when they touch or overlap, otherwise the
/// larger of the horizontal and vertical gaps.
inline double box_gap(const BoundingBox& a, const BoundingBox& b) {
  const double dx = std::max({a.x0 - b.x1, b.x0 - a.x1, 0.0});
  const double dy = std::max({a.y0 - b.y1, b.y0 - a.y1, 0.0});
  return std::max(dx, dy);
}

/// Vertical gap between two boxes; 0 when their y-ranges overlap.
inline double vertical_gap(const BoundingBox& a, const BoundingBox& b) {
  return std::max({a.y0 - b.y1, b.y0 - a.y1, 0.0});
}

}  // namespace pdfvex

#endif  // PDFVEX_GEOMETRY_HPP
