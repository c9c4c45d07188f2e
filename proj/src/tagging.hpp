#pragma once

// Vertex provenance: new regions inherit the creation stage of any input
// vertex they reuse; everything else is tagged with the current stage.

#include <optional>
#include <span>
#include <vector>

#include "plskel/skeleton.hpp"
#include "spatial.hpp"

namespace plskel::detail {

class TagIndex {
 public:
  TagIndex(const Hyperrectangle& bounds, std::span<const Skeleton> sources);

  std::optional<Stage> find(Point p) const;
  LinearRegion region(Polygon polygon, const Affine& f, Stage fresh) const;

 private:
  VertexPool pool_;
  std::vector<Stage> tags_;
};

}  // namespace plskel::detail
