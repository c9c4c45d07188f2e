#pragma once

/// @file skeleton.hpp
/// @brief Piecewise-linear functions stored as a tessellation of the input
/// domain into polygons, each carrying one affine function.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plskel/geometry.hpp"

namespace plskel {

/// Relative tolerance for function-value comparisons.
inline constexpr double kEpsVal = 1e-6;

/// Pipeline stage that produced a function or a vertex: "g<i>" is the
/// pre-activation of layer i, "f<i>" its ReLU.
struct Stage {
  int layer = 1;
  bool activated = false;

  std::string name() const;
  /// Parses "g3" / "f1". Throws InputError.
  static Stage parse(std::string_view text);
  /// g1 -> 0, f1 -> 1, g2 -> 2, ...
  int ordinal() const { return 2 * (layer - 1) + (activated ? 1 : 0); }
  Stage relu() const { return {layer, true}; }
  Stage next_pre() const { return {layer + 1, false}; }

  friend bool operator==(const Stage&, const Stage&) = default;
};

struct Affine {
  Vec2 gradient;
  double offset = 0.0;

  double operator()(Point p) const { return dot(gradient, p) + offset; }

  friend Affine operator+(const Affine& a, const Affine& b) {
    return {a.gradient + b.gradient, a.offset + b.offset};
  }
  friend Affine operator-(const Affine& a, const Affine& b) {
    return {a.gradient - b.gradient, a.offset - b.offset};
  }
  friend Affine operator*(double s, const Affine& a) {
    return {s * a.gradient, s * a.offset};
  }
};

/// Same affine function up to rounding noise (relative 1e-12 on gradient and
/// offset). Much tighter than kEpsVal so merging never moves values.
bool same_affine(const Affine& a, const Affine& b);

struct Vertex {
  Point point;
  double value = 0.0;
  Stage created;
};

struct LinearRegion {
  Polygon polygon;
  /// Aligned with polygon.vertices(); values are a cache of affine.
  std::vector<Vertex> vertices;
  Affine affine;
};

/// Builds a region whose vertex values are derived from f and whose vertices
/// all carry the given stage tag.
LinearRegion make_region(Polygon polygon, const Affine& f, Stage created);

class Skeleton {
 public:
  Skeleton() = default;
  Skeleton(Hyperrectangle bounds, std::vector<LinearRegion> regions, Stage stage);

  const Hyperrectangle& bounds() const { return bounds_; }
  std::span<const LinearRegion> regions() const { return regions_; }
  std::size_t size() const { return regions_.size(); }
  const LinearRegion& operator[](std::size_t i) const { return regions_[i]; }
  Stage stage() const { return stage_; }
  int dim() const { return static_cast<int>(bounds_.dim()); }

  /// Index of a region containing x (interior or boundary), if any.
  std::optional<std::size_t> locate(Point x) const;
  /// Value at x; throws OutOfDomain outside the bounds. Points that fall in a
  /// dropped numerical sliver are answered by the nearest region.
  double evaluate(Point x) const;
  /// 1-D convenience.
  double evaluate(double x) const { return evaluate(Point{x, 0.0}); }

 private:
  Hyperrectangle bounds_;
  std::vector<LinearRegion> regions_;
  Stage stage_;
};

/// Single-region skeleton of the affine function a.x + c over bounds
/// (first-layer pre-activations).
Skeleton initial_skeleton(Vec2 a, double c, const Hyperrectangle& bounds);

/// Per-region affine combination sum_j weights[j] * ss[j] + bias of
/// skeletons that share one tessellation. Throws StructuralError otherwise.
Skeleton linear_combination(std::span<const Skeleton> ss,
                            std::span<const double> weights, double bias,
                            std::optional<Stage> stage = std::nullopt);

/// True when both tessellations consist of the same polygons in the same
/// order (vertex-wise within kEpsGeom).
bool same_tessellation(const Skeleton& a, const Skeleton& b);

/// Maximal interior segments across which the function's gradient changes.
std::vector<Segment> critical_edges(const Skeleton& s);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::vector<std::size_t> offending;  ///< region indices
  double worst = 0.0;                  ///< largest observed violation
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool ok() const;
  /// Throws std::out_of_range for unknown names.
  const CheckResult& check(std::string_view name) const;
};

/// Checks the skeleton invariants: "geometry" (valid polygons inside the
/// bounds), "affine" (vertex values match the region's function),
/// "tessellation" (area conservation and disjoint interiors) and
/// "continuity" (neighbouring functions agree on shared boundaries).
ValidationReport validate(const Skeleton& s);

}  // namespace plskel
