#pragma once

/// @file analysis.hpp
/// @brief Region accounting: numeric activation-pattern counts on a grid and
/// exact counts read off extracted skeletons.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plskel/decision.hpp"
#include "plskel/extract.hpp"
#include "plskel/network.hpp"

namespace plskel {

/// Distinct hidden-unit on/off patterns over the grid
/// lo + i * (hi - lo) / grid_n, i in [0, grid_n), per axis. A lower bound on
/// the number of activation regions; doubling grid_n never lowers it.
std::size_t count_activation_regions(const Network& net, const Hyperrectangle& bounds,
                                     std::size_t grid_n);

/// Maximal edge-connected groups of regions sharing one affine function.
std::size_t count_linear_regions(const Skeleton& s);

struct StageStats {
  std::string stage;
  std::size_t neuron = 0;
  std::size_t regions = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
};

/// Vertex/edge/region counts of one skeleton (shared vertices counted once).
StageStats skeleton_stats(const Skeleton& s, std::size_t neuron = 0);

struct RegionStats {
  bool merged = true;
  std::vector<std::size_t> tiles;           ///< regions per output skeleton
  std::vector<std::size_t> linear_regions;  ///< per output skeleton
  /// Tiles of the final tessellation when the skeletons come from an
  /// extraction without same-affine merging.
  std::optional<std::size_t> activation_regions;
  std::vector<StageStats> stages;
  std::vector<std::size_t> class_polygons;
  std::size_t boundary_edges = 0;
};

/// Exact counts for output skeletons; `merged` states whether they were
/// extracted with same-affine merging. Per-stage counts come from trace.
RegionStats count_analytic(std::span<const Skeleton> fs, bool merged,
                           const ExtractionTrace* trace = nullptr);

/// Fills the membership-polygon and boundary counts.
void add_decision_stats(RegionStats& stats, const DecisionMap& dm);

}  // namespace plskel
