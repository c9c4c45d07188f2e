#pragma once

// Reference implementations used only by the tests. They share no code with
// the library so that agreement means something.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "plskel/geometry.hpp"

namespace oracle {

using plskel::Point;

/// Trapezoid-rule area of a vertex loop (absolute value).
inline double loop_area(const std::vector<Point>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    s += (b.x - a.x) * (b.y + a.y);
  }
  return std::abs(s) / 2.0;
}

inline std::vector<Point> loop_of(const plskel::Polygon& p) {
  return {p.vertices().begin(), p.vertices().end()};
}

/// Winding number of the loop around x (non-zero means inside). Undefined on
/// the boundary; callers keep away from it.
inline int winding(const std::vector<Point>& v, Point x) {
  int w = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point a = v[i];
    Point b = v[(i + 1) % v.size()];
    double side = (b.x - a.x) * (x.y - a.y) - (x.x - a.x) * (b.y - a.y);
    if (a.y <= x.y) {
      if (b.y > x.y && side > 0) ++w;
    } else if (b.y <= x.y && side < 0) {
      --w;
    }
  }
  return w;
}

/// Distance from x to the loop's boundary.
inline double boundary_distance(const std::vector<Point>& v, Point x) {
  double best = INFINITY;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point a = v[i];
    Point b = v[(i + 1) % v.size()];
    double dx = b.x - a.x, dy = b.y - a.y;
    double t = ((x.x - a.x) * dx + (x.y - a.y) * dy) / (dx * dx + dy * dy);
    t = std::fmax(0.0, std::fmin(1.0, t));
    best = std::fmin(best, std::hypot(a.x + t * dx - x.x, a.y + t * dy - x.y));
  }
  return best;
}

/// Random star-shaped (hence simple) polygon around c; non-convex most of
/// the time.
inline std::vector<Point> star(std::mt19937_64& rng, Point c, double r_min, double r_max,
                               int n_min = 3, int n_max = 12) {
  std::uniform_int_distribution<int> count(n_min, n_max);
  int n = count(rng);
  std::uniform_real_distribution<double> jitter(0.15, 0.85);
  std::uniform_real_distribution<double> radius(r_min, r_max);
  std::vector<Point> out;
  const double step = 2 * M_PI / n;
  for (int i = 0; i < n; ++i) {
    double a = (i + jitter(rng)) * step;
    double r = radius(rng);
    out.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
  }
  return out;
}

}  // namespace oracle
