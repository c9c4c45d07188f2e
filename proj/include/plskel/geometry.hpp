#pragma once

/// @file geometry.hpp
/// @brief Tolerance-based 1-D/2-D polygon kernel.
///
/// Polygons are simple counter-clockwise vertex loops without holes. They may
/// be non-convex. A 1-D interval [lo, hi] is embedded in the plane as the
/// rectangle [lo, hi] x [-kStripHalfHeight, kStripHalfHeight], so every
/// operation below works unchanged for both dimensions; 1-D points live on
/// the line y = 0 and 1-D "areas" are lengths.
///
/// Non-convex inputs are handled by decomposing them into convex parts,
/// operating on the parts and re-assembling the results with
/// union_adjacent(). Vertices closer than kEpsGeom are treated as identical.

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace plskel {

/// Absolute tolerance for vertex snapping, collinearity and on-line tests.
inline constexpr double kEpsGeom = 1e-9;
/// Relative tolerance for area bookkeeping.
inline constexpr double kEpsArea = 1e-9;
/// Half-height of the strip embedding 1-D intervals.
inline constexpr double kStripHalfHeight = 0.5;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Point&, const Point&) = default;
};

/// Gradients share the point representation.
using Vec2 = Point;

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

/// Distance from p to the closed segment [a, b].
double segment_distance(Point p, Point a, Point b);

struct BBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  static BBox of(std::span<const Point> pts);
  bool overlaps(const BBox& o, double eps = kEpsGeom) const {
    return min_x <= o.max_x + eps && o.min_x <= max_x + eps &&
           min_y <= o.max_y + eps && o.min_y <= max_y + eps;
  }
  bool contains(Point p, double eps = kEpsGeom) const {
    return p.x >= min_x - eps && p.x <= max_x + eps && p.y >= min_y - eps &&
           p.y <= max_y + eps;
  }
  void extend(const BBox& o);
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

class Polygon;

/// Axis-aligned bounded input domain. Only 1 or 2 dimensions can be turned
/// into polygons; higher dimensions are representable so callers can report
/// them as unsupported.
class Hyperrectangle {
 public:
  Hyperrectangle() = default;
  explicit Hyperrectangle(std::vector<Interval> ranges);
  static Hyperrectangle square(double lo, double hi) {
    return Hyperrectangle({{lo, hi}, {lo, hi}});
  }

  std::size_t dim() const { return ranges_.size(); }
  const Interval& operator[](std::size_t i) const { return ranges_[i]; }
  std::span<const Interval> ranges() const { return ranges_; }

  /// Length (1-D) or area (2-D).
  double measure() const;
  /// Point in the (embedded) domain, with tolerance.
  bool contains(Point p, double eps = kEpsGeom) const;
  Polygon polygon() const;

  friend bool operator==(const Hyperrectangle&, const Hyperrectangle&);

 private:
  std::vector<Interval> ranges_;
};

bool operator==(const Interval& a, const Interval& b);

/// Simple counter-clockwise polygon (or embedded 1-D interval).
class Polygon {
 public:
  Polygon() = default;

  /// Validating constructor: normalizes the loop (drops duplicate and
  /// collinear vertices, orients it counter-clockwise) and checks that the
  /// result is simple with positive area. Throws InvalidGeometry.
  explicit Polygon(std::vector<Point> loop, int dim = 2);

  static Polygon interval(double lo, double hi);
  static Polygon rectangle(double min_x, double max_x, double min_y,
                           double max_y);

  /// Normalizing but non-validating; used for loops produced by the kernel
  /// itself. Returns an empty polygon when the loop degenerates.
  static Polygon from_trusted(std::vector<Point> loop, int dim);

  bool empty() const { return vertices_.empty(); }
  int dim() const { return dim_; }
  std::span<const Point> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }
  const BBox& bbox() const { return bbox_; }
  /// Shoelace area; for 1-D polygons the interval length.
  double area() const { return area_; }
  double perimeter() const;
  /// [lo, hi] of a 1-D polygon (x-extent for 2-D ones).
  Interval interval() const { return {bbox_.min_x, bbox_.max_x}; }
  bool is_convex() const;
  /// O(n^2) self-intersection test.
  bool is_simple() const;

 private:
  void finish();

  std::vector<Point> vertices_;
  int dim_ = 2;
  BBox bbox_;
  double area_ = 0.0;
};

/// Signed shoelace area of a vertex loop.
double signed_area(std::span<const Point> loop);
inline double area(const Polygon& p) { return p.area(); }

/// Pieces on each side of the zero set of a.x + c.
struct SplitResult {
  std::vector<Polygon> pos;  ///< where a.x + c >= 0
  std::vector<Polygon> neg;  ///< where a.x + c <= 0
};

/// Splits p along a.x + c = 0. Vertices within kEpsGeom * (1 + |a|) of the
/// zero set count as lying on it and belong to both sides.
SplitResult split_by_line(const Polygon& p, Vec2 a, double c);

/// Full-dimensional pieces of p and q's intersection (empty when disjoint or
/// touching only along edges or at points).
std::vector<Polygon> intersect(const Polygon& p, const Polygon& q);

/// Merges edge-adjacent polygons of an interior-disjoint family. A merge that
/// would produce a hole or a pinched boundary is refused and the components
/// are kept apart.
std::vector<Polygon> union_adjacent(std::span<const Polygon> ps);

enum class Location { inside, boundary, outside };

/// Point location with a kEpsGeom boundary band.
Location contains(const Polygon& p, Point x);

/// Convex parts covering p (p itself when already convex).
std::vector<std::vector<Point>> convex_parts(const Polygon& p);

/// Precomputed convex decomposition, for repeated intersections.
struct ConvexCover {
  explicit ConvexCover(const Polygon& p);
  const Polygon* polygon;
  std::vector<std::vector<Point>> parts;
  std::vector<BBox> boxes;
};

std::vector<Polygon> intersect(const ConvexCover& p, const ConvexCover& q);

struct Segment {
  Point a;
  Point b;
};

/// Joins overlapping or touching collinear segments into maximal ones.
/// Output is sorted deterministically.
std::vector<Segment> merge_collinear(std::vector<Segment> segments);

/// A boundary segment of positive length shared by two polygons.
struct SharedEdge {
  Point a;
  Point b;
  std::size_t left;   ///< polygon traversing a -> b
  std::size_t right;  ///< polygon traversing b -> a
};

/// All shared edges of an interior-disjoint family, with T-junctions
/// resolved (a vertex of one polygon lying on another's edge splits it).
std::vector<SharedEdge> shared_edges(std::span<const Polygon> ps);

}  // namespace plskel
