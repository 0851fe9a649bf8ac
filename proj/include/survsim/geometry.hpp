#pragma once

#include <algorithm>
#include <cmath>

namespace survsim {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Axis-aligned rectangle, [x0, x1] x [y0, y1], in meters.
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  Point center() const { return {(x0 + x1) / 2.0, (y0 + y1) / 2.0}; }

  bool contains(Point p, double eps = 0.0) const {
    return p.x >= x0 - eps && p.x <= x1 + eps && p.y >= y0 - eps && p.y <= y1 + eps;
  }
  bool contains(const Rect& r) const { return r.x0 >= x0 && r.x1 <= x1 && r.y0 >= y0 && r.y1 <= y1; }

  // Shared edges do not count as overlap.
  bool overlaps(const Rect& r) const { return x0 < r.x1 && r.x0 < x1 && y0 < r.y1 && r.y0 < y1; }

  Point clamp(Point p) const { return {std::clamp(p.x, x0, x1), std::clamp(p.y, y0, y1)}; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

}  // namespace survsim
