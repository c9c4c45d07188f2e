#pragma once

// Internal spatial helpers shared by the geometry kernel and the skeleton
// bookkeeping. Not part of the public headers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "plskel/geometry.hpp"

namespace plskel::detail {

/// Uniform bucket grid over a fixed box.
class PointGrid {
 public:
  PointGrid(BBox box, std::size_t expected) : box_(box) {
    auto side = static_cast<std::size_t>(std::ceil(std::sqrt(
        static_cast<double>(std::max<std::size_t>(expected, 1)))));
    nx_ = ny_ = std::clamp<std::size_t>(side, 1, 512);
    cell_w_ = std::max((box_.max_x - box_.min_x) / nx_, 1e-300);
    cell_h_ = std::max((box_.max_y - box_.min_y) / ny_, 1e-300);
    cells_.resize(nx_ * ny_);
  }

  void insert(int id, Point p) { cells_[cell_of(p)].push_back(id); }

  template <class F>
  void query(const BBox& region, F&& visit) const {
    auto [x0, y0] = coords(region.min_x, region.min_y);
    auto [x1, y1] = coords(region.max_x, region.max_y);
    for (std::size_t j = y0; j <= y1; ++j) {
      for (std::size_t i = x0; i <= x1; ++i) {
        for (int id : cells_[j * nx_ + i]) visit(id);
      }
    }
  }

 private:
  std::pair<std::size_t, std::size_t> coords(double x, double y) const {
    auto clampi = [](double v, std::size_t n) {
      if (!(v > 0)) return std::size_t{0};
      auto i = static_cast<std::size_t>(v);
      return std::min(i, n - 1);
    };
    return {clampi((x - box_.min_x) / cell_w_, nx_),
            clampi((y - box_.min_y) / cell_h_, ny_)};
  }
  std::size_t cell_of(Point p) const {
    auto [i, j] = coords(p.x, p.y);
    return j * nx_ + i;
  }

  BBox box_;
  std::size_t nx_ = 1;
  std::size_t ny_ = 1;
  double cell_w_ = 1.0;
  double cell_h_ = 1.0;
  std::vector<std::vector<int>> cells_;
};

/// Deduplicates points within a snapping radius.
class VertexPool {
 public:
  VertexPool(BBox box, std::size_t expected, double eps)
      : grid_(padded(box, eps), expected), eps_(eps) {}

  int intern(Point p) {
    int found = find(p);
    if (found >= 0) return found;
    int id = static_cast<int>(points_.size());
    points_.push_back(p);
    grid_.insert(id, p);
    return id;
  }

  int find(Point p) const {
    int found = -1;
    double best = eps_;
    grid_.query(BBox{p.x - eps_, p.y - eps_, p.x + eps_, p.y + eps_},
                [&](int id) {
                  double d = distance(points_[id], p);
                  if (d <= best) {
                    best = d;
                    found = id;
                  }
                });
    return found;
  }

  const std::vector<Point>& points() const { return points_; }
  const PointGrid& grid() const { return grid_; }

 private:
  static BBox padded(BBox b, double eps) {
    double pad = 4 * eps + 1e-12;
    return {b.min_x - pad, b.min_y - pad, b.max_x + pad, b.max_y + pad};
  }

  PointGrid grid_;
  double eps_;
  std::vector<Point> points_;
};

/// Polygon family re-expressed over a shared vertex pool with T-junctions
/// split, so shared boundary pieces appear as opposite directed edges.
struct PlanarIndex {
  std::vector<Point> pool;
  std::vector<std::vector<int>> loops;
};

PlanarIndex build_planar_index(std::span<const Polygon> ps,
                               double eps = kEpsGeom);

inline std::uint64_t edge_key(int u, int v) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

}  // namespace plskel::detail
