#include "plskel/analysis.hpp"

#include <numeric>
#include <set>
#include <unordered_set>

#include "plskel/errors.hpp"
#include "spatial.hpp"

namespace plskel {

std::size_t count_activation_regions(const Network& net, const Hyperrectangle& bounds,
                                     std::size_t grid_n) {
  if (grid_n < 2) throw InputError("grid size must be at least 2");
  if (net.input_dim() != bounds.dim() || bounds.dim() > 2) {
    throw InputError("network input dimension does not match the bounds");
  }
  std::set<std::vector<bool>> patterns;
  auto coord = [&](std::size_t axis, std::size_t i) {
    const auto& r = bounds[axis];
    return r.lo + static_cast<double>(i) * (r.hi - r.lo) / static_cast<double>(grid_n);
  };
  std::size_t ny = bounds.dim() == 2 ? grid_n : 1;
  for (std::size_t j = 0; j < ny; ++j) {
    double y = bounds.dim() == 2 ? coord(1, j) : 0.0;
    for (std::size_t i = 0; i < grid_n; ++i) {
      patterns.insert(net.activation_pattern({coord(0, i), y}));
    }
  }
  return patterns.size();
}

std::size_t count_linear_regions(const Skeleton& s) {
  const auto regions = s.regions();
  std::vector<Polygon> polys;
  polys.reserve(regions.size());
  for (const auto& r : regions) polys.push_back(r.polygon);
  std::vector<std::size_t> parent(regions.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = regions.size();
  for (const auto& e : shared_edges(polys)) {
    if (!same_affine(regions[e.left].affine, regions[e.right].affine)) continue;
    auto a = find(e.left);
    auto b = find(e.right);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

StageStats skeleton_stats(const Skeleton& s, std::size_t neuron) {
  StageStats st;
  st.stage = s.stage().name();
  st.neuron = neuron;
  st.regions = s.size();
  std::vector<Polygon> polys;
  for (const auto& r : s.regions()) polys.push_back(r.polygon);
  auto index = detail::build_planar_index(polys);
  st.vertices = index.pool.size();
  std::unordered_set<std::uint64_t> edges;
  for (const auto& loop : index.loops) {
    for (std::size_t k = 0; k < loop.size(); ++k) {
      int u = loop[k];
      int v = loop[(k + 1) % loop.size()];
      edges.insert(detail::edge_key(std::min(u, v), std::max(u, v)));
    }
  }
  st.edges = edges.size();
  return st;
}

RegionStats count_analytic(std::span<const Skeleton> fs, bool merged,
                           const ExtractionTrace* trace) {
  RegionStats stats;
  stats.merged = merged;
  std::size_t most = 0;
  for (const auto& f : fs) {
    stats.tiles.push_back(f.size());
    stats.linear_regions.push_back(count_linear_regions(f));
    most = std::max(most, f.size());
  }
  if (!merged) stats.activation_regions = most;
  if (trace) {
    for (const auto& e : trace->entries) stats.stages.push_back(skeleton_stats(e.skeleton, e.neuron));
  }
  return stats;
}

void add_decision_stats(RegionStats& stats, const DecisionMap& dm) {
  stats.class_polygons.assign(static_cast<std::size_t>(dm.num_classes), 0);
  for (const auto& mp : dm.polygons) ++stats.class_polygons[static_cast<std::size_t>(mp.class_index)];
  stats.boundary_edges = dm.boundary.size();
}

}  // namespace plskel
